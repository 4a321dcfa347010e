#pragma once

// Naive and corrected cosinor estimators.
//
// Both solve a 3x3 linear system A theta = b. For the corrected estimator
//
//   A = sum_{m=0}^{T} kappa_m/m! * mean_j d^m/dx^m [f(x_j) f(x_j)^T]
//   b = sum_{m=0}^{T} kappa_m/m! * mean_j d^m/dx^m [f(x_j)] y_j
//
// and the naive estimator is the T = 0 case. Every entry of f f^T is a
// combination of 1, sin x, cos x, sin 2x, cos 2x, so the derivative sums only
// need those five design averages plus mean(y), mean(y sin x), mean(y cos x).

#include "cosinor/kappa.hpp"
#include "cosinor/linalg.hpp"
#include "cosinor/rhythm.hpp"

#include <cstddef>
#include <span>
#include <string_view>

namespace cosinor {

inline constexpr int kDefaultTruncationOrder = 2;

// corrected: corrected score; naive: least squares on the
// observed covariate.
enum class Framework { corrected, naive };

[[nodiscard]] std::string_view to_string(Framework f) noexcept;

struct DerivativeTables {
    Vec3 b_vec{};
    Mat3 a_mat{};
    int truncation_order = 0;
};

struct FitResult {
    CosinorParams params;
    double sigma2_hat = 0.0;  // (1/n) sum of squared residuals
    std::size_t n = 0;
    int truncation_order = 0;  // 0 for naive
    double condition_estimate = 0.0;  // 1-norm condition of the solved system
};

// Design and response averages that every derivative order is built from.
struct DesignMoments {
    double sin1 = 0.0, cos1 = 0.0;  // mean sin x, mean cos x
    double sin2 = 0.0, cos2 = 0.0;  // mean sin 2x, mean cos 2x
    double y = 0.0, y_sin1 = 0.0, y_cos1 = 0.0;
    std::size_t n = 0;
};

[[nodiscard]] DesignMoments design_moments(std::span<const double> angles, std::span<const double> responses);

// Throws std::invalid_argument when truncation_order exceeds kappa.max_order().
[[nodiscard]] DerivativeTables derivative_tables(const DesignMoments& moments, const KappaCoefficients& kappa,
                                                 int truncation_order);
[[nodiscard]] DerivativeTables derivative_tables(std::span<const double> angles,
                                                 std::span<const double> responses,
                                                 const KappaCoefficients& kappa, int truncation_order);

// The naive normal-equation matrix (1/n) sum f f^T.
[[nodiscard]] Mat3 design_matrix(std::span<const double> angles);

[[nodiscard]] FitResult fit_naive(std::span<const double> angles, std::span<const double> responses);

[[nodiscard]] FitResult fit_corrected(std::span<const double> angles, std::span<const double> responses,
                                      const KappaCoefficients& kappa,
                                      int truncation_order = kDefaultTruncationOrder);

// (1/n) sum (y - theta^T f(x))^2
[[nodiscard]] double residual_variance(std::span<const double> angles, std::span<const double> responses,
                                       const CosinorParams& params);

}  // namespace cosinor
