#include "cosinor/assess.hpp"
#include "cosinor/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace cosinor;

TEST(OriginRegression, Identity) {
    const std::vector<double> x{1, 2, 3, -4};
    const auto f = origin_regression(x, x);
    EXPECT_DOUBLE_EQ(f.beta, 1.0);
    EXPECT_DOUBLE_EQ(f.r_squared, 1.0);
}

TEST(OriginRegression, Doubling) {
    const std::vector<double> x{1, 2, 3}, y{2, 4, 6};
    const auto f = origin_regression(x, y);
    EXPECT_DOUBLE_EQ(f.beta, 2.0);
    EXPECT_DOUBLE_EQ(f.r_squared, 1.0);
}

TEST(OriginRegression, HandArithmetic) {
    const std::vector<double> x{1, 2}, y{1, 0};
    const auto f = origin_regression(x, y);
    EXPECT_NEAR(f.beta, 0.2, 1e-15);
    EXPECT_NEAR(f.r_squared, 0.2, 1e-15);
}

TEST(OriginRegression, Errors) {
    EXPECT_THROW((void)origin_regression(std::vector<double>{0, 0}, std::vector<double>{1, 2}), std::invalid_argument);
    EXPECT_THROW((void)origin_regression(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW((void)origin_regression(std::vector<double>{1}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(OriginRegression, ScaleInvariance) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> n(0, 1);
    std::vector<double> x(30), y(30), xs(30), ys(30);
    for (std::size_t i = 0; i < 30; ++i) {
        x[i] = n(gen);
        y[i] = 1.3 * x[i] + 0.2 * n(gen);
        xs[i] = 7.0 * x[i];
        ys[i] = 7.0 * y[i];
    }
    const auto a = origin_regression(x, y), b = origin_regression(xs, ys);
    EXPECT_NEAR(a.beta, b.beta, 1e-12);
    EXPECT_NEAR(a.r_squared, b.r_squared, 1e-12);
    EXPECT_LE(a.r_squared, 1.0);
}

TEST(UnwrapPhase, Rule) {
    const std::vector<double> hat{-3.0, 3.0, 0.5}, star{3.0, -3.0, 0.4};
    const auto out = unwrap_phase_pairs(hat, star);
    EXPECT_NEAR(out[0], -3.0 + kTwoPi, 1e-15);
    EXPECT_NEAR(out[1], 3.0 - kTwoPi, 1e-15);
    EXPECT_EQ(out[2], 0.5);
}

TEST(UnwrapPhase, ChangedPairsEndUpCloserThanPi) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    std::vector<double> hat(5000), star(5000);
    for (std::size_t i = 0; i < hat.size(); ++i) {
        hat[i] = u(gen);
        star[i] = u(gen);
    }
    const auto out = unwrap_phase_pairs(hat, star);
    for (std::size_t i = 0; i < hat.size(); ++i) {
        if (std::abs(hat[i] - star[i]) <= kPi) {
            EXPECT_EQ(out[i], hat[i]);
        } else {
            EXPECT_LT(std::abs(out[i] - star[i]), kPi);
        }
    }
}

namespace {

std::vector<GeneFit> panel(std::size_t genes, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> t0(6, 12), amp(0.5, 2), ph(-kPi, kPi);
    std::vector<GeneFit> fits;
    for (std::size_t g = 0; g < genes; ++g) {
        GeneFit f;
        f.gene_id = "G" + std::to_string(g);
        f.ok = true;
        f.params = from_amplitude_phase({t0(gen), amp(gen), ph(gen)});
        f.score_over_n = amp(gen);
        fits.push_back(f);
    }
    return fits;
}

}  // namespace

TEST(AssessDataset, SelfAssessmentIsExact) {
    const auto fits = panel(50, 3);
    const auto reports = assess_dataset(fits, fits, Framework::corrected);
    ASSERT_EQ(reports.size(), 4u);
    for (const auto& r : reports) {
        EXPECT_NEAR(r.beta, 1.0, 1e-14) << to_string(r.quantity);
        EXPECT_NEAR(r.r_squared, 1.0, 1e-14);
        EXPECT_EQ(r.n_genes, 50u);
        EXPECT_EQ(r.framework, Framework::corrected);
    }
}

TEST(AssessDataset, AttenuatedAmplitudesGiveBetaAboveOne) {
    auto ict = panel(40, 4);
    auto zt = ict;
    for (auto& f : zt) {
        f.params.theta1 *= 0.75;
        f.params.theta2 *= 0.75;
    }
    const auto reports = assess_dataset(zt, ict, Framework::naive);
    EXPECT_NEAR(reports[1].beta, 1.0 / 0.75, 1e-12);
    EXPECT_EQ(reports[1].quantity, Quantity::amplitude);
    EXPECT_NEAR(reports[2].beta, 1.0, 1e-12);
}

TEST(AssessDataset, FailedGenesExcluded) {
    auto ict = panel(10, 5);
    auto zt = ict;
    zt[3].ok = false;
    ict[7].ok = false;
    const auto reports = assess_dataset(zt, ict, Framework::naive);
    EXPECT_EQ(reports[0].n_genes, 8u);
    EXPECT_EQ(reports[0].n_excluded, 2u);
}

TEST(AssessDataset, MisalignmentRejected) {
    auto ict = panel(10, 6);
    auto zt = ict;
    std::swap(zt[0], zt[1]);
    EXPECT_THROW((void)assess_dataset(zt, ict, Framework::naive), DataError);
    zt.pop_back();
    EXPECT_THROW((void)assess_dataset(zt, ict, Framework::naive), DataError);
}

TEST(AssessDataset, PhaseWrapIsUnwrapped) {
    auto ict = panel(5, 7);
    auto zt = ict;
    ict[0].params = from_amplitude_phase({6, 1, 3.1});
    zt[0].params = from_amplitude_phase({6, 1, -3.1});
    const auto reports = assess_dataset(zt, ict, Framework::naive);
    // after unwrapping -3.1 -> 2pi - 3.1, close to 3.1, so R^2 stays high
    EXPECT_GT(reports[2].r_squared, 0.99);
}
