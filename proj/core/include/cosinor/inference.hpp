#pragma once

// Wald and score tests of H0: no rhythm (theta1 = theta2 = 0), both referred
// to a chi-squared distribution with 2 degrees of freedom.

#include "cosinor/estimation.hpp"
#include "cosinor/kappa.hpp"
#include "cosinor/rhythm.hpp"

#include <span>
#include <string_view>

namespace cosinor {

enum class TestKind { wald, score_naive, score_corrected };

[[nodiscard]] std::string_view to_string(TestKind kind) noexcept;

struct TestResult {
    double statistic = 0.0;
    double statistic_over_n = 0.0;
    int dof = 2;
    double p_value = 1.0;
    TestKind kind = TestKind::wald;
    // False when the score Jacobian is not positive definite; the statistic
    // may then be negative and is reported unclipped.
    bool jacobian_positive_definite = true;
};

// (mean(y), 0, 0). Throws std::invalid_argument on empty input.
[[nodiscard]] CosinorParams null_params(std::span<const double> responses);

// tau = n / sigma2 (theta - theta_null)^T [(1/n) sum f f^T] (theta - theta_null)
// Throws NumericalError("zero residual variance") when fit.sigma2_hat == 0.
[[nodiscard]] TestResult wald_test(std::span<const double> angles, std::span<const double> responses,
                                   const FitResult& fit);

// Score statistic at the null parameters:
//
//   d   = b~ - A~ theta_null     (mean corrected estimating function)
//   tau = n d^T A~^-1 d
//
// with A~, b~ from derivative_tables(). truncation_order == 0 gives the naive
// statistic regardless of kappa.
[[nodiscard]] TestResult score_test(std::span<const double> angles, std::span<const double> responses,
                                    const KappaCoefficients& kappa, int truncation_order);

[[nodiscard]] TestResult score_test_naive(std::span<const double> angles, std::span<const double> responses);

// Survival function of chi-squared with 2 dof: exp(-x/2).
// Throws std::invalid_argument for x < 0.
[[nodiscard]] double chisq2_sf(double x);

// General chi-squared survival function via the regularized upper incomplete
// gamma function, Q(dof/2, x/2).
[[nodiscard]] double chisq_sf(double x, int dof);

}  // namespace cosinor
