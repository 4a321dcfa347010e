#include "cosinor/errors.hpp"
#include "cosinor/inference.hpp"
#include "cosinor/special.hpp"
#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace cosinor;

namespace {

std::vector<double> equispaced(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    return x;
}

}  // namespace

TEST(NullParams, MeanOnly) {
    const auto p = null_params(std::vector<double>{1, 2, 3});
    EXPECT_DOUBLE_EQ(p.theta0, 2.0);
    EXPECT_EQ(p.theta1, 0.0);
    EXPECT_EQ(p.theta2, 0.0);
    EXPECT_DOUBLE_EQ(null_params(std::vector<double>{4.5}).theta0, 4.5);
    EXPECT_THROW((void)null_params(std::vector<double>{}), std::invalid_argument);
}

TEST(ChiSquared, TwoDegreesOfFreedom) {
    EXPECT_EQ(chisq2_sf(0.0), 1.0);
    EXPECT_NEAR(chisq2_sf(5.991), 0.05, 1e-4);
    EXPECT_EQ(chisq2_sf(INFINITY), 0.0);
    EXPECT_THROW((void)chisq2_sf(-1.0), std::invalid_argument);
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
        EXPECT_NEAR(chisq2_sf(x), chisq_sf(x, 2), 1e-12);
        EXPECT_NEAR(chisq2_sf(x), std::exp(-x / 2), 1e-15);
    }
}

TEST(ChiSquared, GeneralDofAgainstBoost) {
    for (int dof : {1, 2, 3, 5, 10, 31}) {
        boost::math::chi_squared_distribution<double> dist(dof);
        for (double x : {0.01, 0.5, 1.0, 3.0, 7.5, 15.0, 40.0, 90.0}) {
            const double ref = boost::math::cdf(boost::math::complement(dist, x));
            EXPECT_NEAR(chisq_sf(x, dof), ref, 1e-13 + 1e-10 * ref) << dof << " " << x;
        }
    }
}

TEST(IncompleteGamma, AgainstBoost) {
    for (double a : {0.5, 1.0, 2.5, 7.0, 30.0}) {
        for (double x : {0.0, 0.2, 1.0, 4.0, 12.0, 50.0}) {
            EXPECT_NEAR(regularized_gamma_p(a, x), boost::math::gamma_p(a, x), 1e-13);
            EXPECT_NEAR(regularized_gamma_q(a, x), boost::math::gamma_q(a, x), 1e-13);
        }
    }
}

TEST(Wald, ConstantFitIsZero) {
    const auto x = equispaced(12);
    std::vector<double> y;
    for (std::size_t j = 0; j < x.size(); ++j) y.push_back(j % 2 == 0 ? 1.0 : 3.0);
    // alternating +-1 on 12 equispaced points is orthogonal to sin and cos
    const auto fit = fit_naive(x, y);
    const auto r = wald_test(x, y, fit);
    EXPECT_NEAR(r.statistic, 0.0, 1e-20);
    EXPECT_NEAR(r.p_value, 1.0, 1e-15);
    EXPECT_EQ(r.kind, TestKind::wald);
}

TEST(Wald, ZeroResidualVariance) {
    const auto x = equispaced(8);
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 + std::cos(v));
    try {
        (void)wald_test(x, y, fit_naive(x, y));
        FAIL();
    } catch (const NumericalError& e) {
        EXPECT_STREQ(e.what(), "zero residual variance");
    }
}

TEST(Wald, StrongSignalIsDetected) {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> e(0.0, 0.5);
    const auto x = equispaced(100);
    std::vector<double> y;
    for (double v : x) y.push_back(std::cos(v) + e(gen));
    const auto r = wald_test(x, y, fit_naive(x, y));
    EXPECT_LT(r.p_value, 1e-6);
}

TEST(Wald, NullRejectionRate) {
    std::mt19937_64 gen(77);
    std::normal_distribution<double> e(0.0, 1.0);
    const auto x = equispaced(100);
    int rejections = 0;
    std::vector<double> y(100);
    for (int rep = 0; rep < 2000; ++rep) {
        for (double& v : y) v = e(gen);
        if (wald_test(x, y, fit_naive(x, y)).p_value < 0.05) ++rejections;
    }
    EXPECT_NEAR(rejections / 2000.0, 0.05, 0.02);
}

TEST(Score, ConstantResponseIsZero) {
    const auto x = equispaced(10);
    const std::vector<double> y(10, 4.0);
    const auto r = score_test_naive(x, y);
    EXPECT_NEAR(r.statistic, 0.0, 1e-20);
    EXPECT_EQ(r.kind, TestKind::score_naive);
}

TEST(Score, ZeroWhenNullSolvesNormalEquations) {
    const auto x = equispaced(12);
    std::vector<double> y;
    for (std::size_t j = 0; j < x.size(); ++j) y.push_back(j % 2 == 0 ? -1.0 : 5.0);
    EXPECT_NEAR(score_test_naive(x, y).statistic, 0.0, 1e-10);
}

TEST(Score, ShiftInvariance) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::normal_distribution<double> e(0.0, 1.0);
    std::vector<double> x(50), y(50), z(50);
    for (std::size_t j = 0; j < 50; ++j) {
        x[j] = u(gen);
        y[j] = 0.3 * std::cos(x[j]) + e(gen);
        z[j] = y[j] + 123.0;
    }
    EXPECT_NEAR(score_test_naive(x, y).statistic, score_test_naive(x, z).statistic, 1e-9);
}

TEST(Score, CollapseWithZeroKappa) {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::normal_distribution<double> e(0.0, 1.0);
    std::vector<double> x(40), y(40);
    for (int rep = 0; rep < 20; ++rep) {
        for (std::size_t j = 0; j < 40; ++j) {
            x[j] = u(gen);
            y[j] = 2 + 0.5 * std::sin(x[j]) + e(gen);
        }
        const auto a = score_test_naive(x, y);
        const auto b = score_test(x, y, zero_kappa(3), 3);
        EXPECT_NEAR(a.statistic, b.statistic, 1e-12);
        EXPECT_EQ(b.kind, TestKind::score_corrected);
        EXPECT_EQ(score_test(x, y, zero_kappa(3), 0).kind, TestKind::score_naive);
    }
}

TEST(Score, NaiveNullCalibrationKolmogorovSmirnov) {
    std::mt19937_64 gen(2718);
    std::normal_distribution<double> e(0.0, 1.0);
    const auto x = equispaced(100);
    std::vector<double> y(100), stats;
    for (int rep = 0; rep < 2000; ++rep) {
        for (double& v : y) v = e(gen);
        stats.push_back(score_test_naive(x, y).statistic);
    }
    const double d = oracle::ks_statistic(stats, [](double s) { return 1.0 - std::exp(-s / 2); });
    EXPECT_GT(oracle::ks_p_value(d, stats.size()), 0.01);
}

TEST(Score, NonPositiveDefiniteJacobianIsFlagged) {
    // Design {pi/2, 3pi/2}, y = 1 + sin x, k2 = 1.5: the corrected matrix is
    // diag(1, -0.5, 1.5) and d = (0, 0.25, 0), so tau = 4 * 0.0625 / -0.5.
    const std::vector<double> x{kPi / 2, 3 * kPi / 2, kPi / 2, 3 * kPi / 2};
    const std::vector<double> y{2.0, 0.0, 2.0, 0.0};
    KappaCoefficients k;
    k.values = {1.0, 0.0, 1.5};
    const auto r = score_test(x, y, k, 2);
    EXPECT_FALSE(r.jacobian_positive_definite);
    EXPECT_NEAR(r.statistic, -0.5, 1e-12);
    EXPECT_EQ(r.p_value, 1.0);
}
