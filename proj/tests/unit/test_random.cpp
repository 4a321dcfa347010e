#include "cosinor/random.hpp"
#include "cosinor/rhythm.hpp"

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace cosinor;

namespace {

constexpr int kDraws = 100000;

struct Moments {
    double mean = 0, variance = 0, skewness = 0;
};

Moments moments(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= n;
    double m2 = 0, m3 = 0;
    for (double x : v) {
        const double d = x - m.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m.variance = m2;
    m.skewness = m3 / std::pow(m2, 1.5);
    return m;
}

}  // namespace

TEST(NormalQuantile, AgainstBoost) {
    const boost::math::normal_distribution<double> dist;
    for (double p : {1e-300, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575, 0.999, 1 - 1e-12}) {
        const double ref = boost::math::quantile(dist, p);
        EXPECT_NEAR(normal_quantile(p), ref, 1e-9 * std::abs(ref) + 1e-15) << p;
    }
    EXPECT_EQ(normal_quantile(0.0), -INFINITY);
    EXPECT_EQ(normal_quantile(1.0), INFINITY);
    EXPECT_THROW((void)normal_quantile(1.5), std::invalid_argument);
}

TEST(NormalCdf, AgainstBoost) {
    const boost::math::normal_distribution<double> dist;
    for (double z : {-30.0, -8.0, -2.0, -0.3, 0.0, 0.5, 1.96, 6.0}) {
        const double ref = boost::math::cdf(dist, z);
        EXPECT_NEAR(normal_cdf(z), ref, 1e-14 * ref + 1e-300);
    }
}

TEST(Rng, UniformsAreOpenInterval) {
    Rng rng(1);
    for (int i = 0; i < kDraws; ++i) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, SubstreamsAreReproducibleAndDistinct) {
    Rng a = Rng::substream(42, 3), b = Rng::substream(42, 3), c = Rng::substream(42, 4);
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
}

TEST(Rng, NormalMoments) {
    Rng rng(2);
    std::vector<double> v(kDraws);
    for (double& x : v) x = rng.normal(1.5, 2.0);
    const auto m = moments(v);
    EXPECT_NEAR(m.mean, 1.5, 0.02);
    EXPECT_NEAR(m.variance, 4.0, 0.2);
}

TEST(TruncatedNormal, Support) {
    Rng rng(3);
    for (int i = 0; i < kDraws; ++i) {
        const double x = sample_truncated_normal(6, 1, 4, 8, rng);
        ASSERT_GE(x, 4.0);
        ASSERT_LE(x, 8.0);
    }
}

TEST(TruncatedNormal, NearlyUntruncatedMean) {
    Rng rng(4);
    double s = 0;
    for (int i = 0; i < kDraws; ++i) s += sample_truncated_normal(0, 1, -10, 10, rng);
    EXPECT_NEAR(s / kDraws, 0.0, 0.02);
}

TEST(TruncatedNormal, NarrowBand) {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) EXPECT_NEAR(sample_truncated_normal(0, 1, 2.0, 2.0 + 1e-9, rng), 2.0, 2e-9);
}

TEST(TruncatedNormal, FarTail) {
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
        const double x = sample_truncated_normal(0, 1, 12.0, 13.0, rng);
        ASSERT_GE(x, 12.0);
        ASSERT_LE(x, 13.0);
    }
}

TEST(TruncatedNormal, MomentsMatchTruncatedLaw) {
    // TN(1, 0.2, 0.7, 1.3): symmetric about the parent mean
    Rng rng(7);
    std::vector<double> v(kDraws);
    for (double& x : v) x = sample_truncated_normal(1.0, 0.2, 0.7, 1.3, rng);
    const boost::math::normal_distribution<double> dist;
    const double s = std::sqrt(0.2), a = -0.3 / s, b = 0.3 / s;
    const double z = boost::math::cdf(dist, b) - boost::math::cdf(dist, a);
    const double var = 0.2 * (1 + (a * boost::math::pdf(dist, a) - b * boost::math::pdf(dist, b)) / z);
    const auto m = moments(v);
    EXPECT_NEAR(m.mean, 1.0, 0.05 * 1.0);
    EXPECT_NEAR(m.variance, var, 0.05 * var);
}

TEST(TruncatedNormal, InvalidArguments) {
    Rng rng(8);
    EXPECT_THROW((void)sample_truncated_normal(0, 1, 1, 1, rng), std::invalid_argument);
    EXPECT_THROW((void)sample_truncated_normal(0, 0, 0, 1, rng), std::invalid_argument);
}

TEST(WrappedLaplace, SymmetryAndCharacteristicFunction) {
    Rng rng(9);
    const double b = std::sqrt(0.3);
    double sc = 0, ss = 0;
    for (int i = 0; i < kDraws; ++i) {
        const double x = sample_wrapped_laplace(0.0, b, rng);
        ASSERT_GE(x, -kPi);
        ASSERT_LT(x, kPi);
        sc += std::cos(x);
        ss += std::sin(x);
    }
    EXPECT_NEAR(std::atan2(ss, sc), 0.0, 0.02);
    EXPECT_NEAR(sc / kDraws, 1.0 / 1.3, 0.01);
}

TEST(WrappedLaplace, SmallScaleConcentrates) {
    Rng rng(10);
    for (int i = 0; i < 1000; ++i) EXPECT_NEAR(sample_wrapped_laplace(0.25, 1e-12, rng), 0.25, 1e-9);
}

TEST(WrappedLaplace, MomentsBeforeWrapping) {
    // scale 0.2: wrapping essentially never happens; Laplace variance 2 b^2
    Rng rng(11);
    std::vector<double> v(kDraws);
    for (double& x : v) x = sample_wrapped_laplace(0.0, 0.2, rng);
    const auto m = moments(v);
    EXPECT_NEAR(m.mean, 0.0, 0.01);
    EXPECT_NEAR(m.variance, 0.08, 0.05 * 0.08);
}

TEST(SkewNormal, MomentMatching) {
    const auto p = skew_normal_from_moments(0.5, 0.5, -0.7);
    EXPECT_LT(p.shape, 0.0);
    Rng rng(12);
    std::vector<double> v(kDraws);
    for (double& x : v) x = sample_skew_normal(p, rng);
    const auto m = moments(v);
    EXPECT_NEAR(m.mean, 0.5, 0.05 * 0.5);
    EXPECT_NEAR(m.variance, 0.5, 0.05 * 0.5);
    EXPECT_NEAR(m.skewness, -0.7, 0.05 * 0.7);
}

TEST(SkewNormal, ZeroSkewIsNormal) {
    const auto p = skew_normal_from_moments(0.3, 0.5, 0.0);
    EXPECT_EQ(p.shape, 0.0);
    EXPECT_EQ(p.location, 0.3);
    EXPECT_NEAR(p.scale, std::sqrt(0.5), 1e-15);
}

TEST(SkewNormal, SignFlipMirrors) {
    const auto p = skew_normal_from_moments(0.0, 0.5, 0.7);
    const auto q = skew_normal_from_moments(0.0, 0.5, -0.7);
    EXPECT_NEAR(p.location, -q.location, 1e-15);
    EXPECT_NEAR(p.shape, -q.shape, 1e-12);
    EXPECT_NEAR(p.scale, q.scale, 1e-15);
    Rng a(13), b(14);
    std::vector<double> va(kDraws), vb(kDraws);
    for (double& x : va) x = sample_skew_normal(p, a);
    for (double& x : vb) x = -sample_skew_normal(q, b);
    const auto ma = moments(va), mb = moments(vb);
    EXPECT_NEAR(ma.mean, mb.mean, 0.01);
    EXPECT_NEAR(ma.variance, mb.variance, 0.02);
    EXPECT_NEAR(ma.skewness, mb.skewness, 0.05);
}

TEST(SkewNormal, RangeChecked) {
    EXPECT_THROW((void)skew_normal_from_moments(0, 1, 0.996), std::invalid_argument);
    EXPECT_THROW((void)skew_normal_from_moments(0, 0, 0.1), std::invalid_argument);
    EXPECT_NO_THROW((void)skew_normal_from_moments(0, 1, 0.99));
}

TEST(WrappedSkewNormal, SupportAndMoments) {
    Rng rng(14);
    std::vector<double> v(kDraws);
    for (double& x : v) {
        x = sample_wrapped_skew_normal(-0.5, 0.5, 0.7, rng);
        ASSERT_GE(x, -kPi);
        ASSERT_LT(x, kPi);
    }
    // little mass wraps at this spread, so the moments survive wrapping closely
    const auto m = moments(v);
    EXPECT_NEAR(m.mean, -0.5, 0.05 * 0.5);
    EXPECT_NEAR(m.variance, 0.5, 0.05 * 0.5);
}

TEST(WrappedNormal, CharacteristicFunction) {
    Rng rng(15);
    double sc = 0;
    for (int i = 0; i < kDraws; ++i) {
        const double x = sample_wrapped_normal(kPi, 2.5, rng);
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, kTwoPi);
        sc += std::cos(x - kPi);
    }
    EXPECT_NEAR(sc / kDraws, std::exp(-1.25), 0.01);
}

TEST(WrappedNormal, DegenerateVariance) {
    Rng rng(16);
    for (int i = 0; i < 100; ++i) EXPECT_NEAR(sample_wrapped_normal(1.0, 1e-20, rng), 1.0, 1e-8);
    EXPECT_THROW((void)sample_wrapped_normal(1.0, 0.0, rng), std::invalid_argument);
}
