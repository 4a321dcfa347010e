#pragma once

// Series weights for the corrected score.
//
// kappa(t) = 1 / E[exp(t xi)] is the reciprocal moment-generating function of
// the covariate error. Differentiating kappa(t) M(t) = 1 m times at t = 0
// gives, with mu_0 = 1,
//
//   sum_{j=0}^{m} C(m, j) kappa^(j)(0) mu_{m-j} = 0,   m >= 1,
//
// so the derivatives follow from the raw moments by forward recursion.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cosinor {

inline constexpr int kDefaultKappaOrder = 8;
// Binomials are exact in 64-bit integers well past this; orders above it are
// rejected rather than silently losing precision.
inline constexpr int kMaxKappaOrder = 20;

struct KappaCoefficients {
    // values[m] = kappa^(m)(0), m = 0..max_order; values[0] == 1.
    std::vector<double> values{1.0};
    std::string source_label;
    // Number of error samples behind the estimate; 0 for tabulated values.
    std::size_t sample_size = 0;

    [[nodiscard]] int max_order() const noexcept { return static_cast<int>(values.size()) - 1; }
    [[nodiscard]] double operator[](int m) const { return values.at(static_cast<std::size_t>(m)); }
};

// C(n, k) for 0 <= k <= n <= kMaxKappaOrder.
[[nodiscard]] std::uint64_t binomial(int n, int k);

// mu_k = (1/N) sum xi_i^k for k = 1..max_order (index 0 holds mu_1).
// Compensated summation. Throws std::invalid_argument("empty error sample").
[[nodiscard]] std::vector<double> raw_moments(std::span<const double> xi, int max_order);

// mu[k-1] = mu_k; requires mu.size() >= max_order.
[[nodiscard]] KappaCoefficients kappa_from_moments(std::span<const double> mu, int max_order,
                                                   std::string label = {});

[[nodiscard]] KappaCoefficients kappa_from_sample(std::span<const double> xi, int max_order,
                                                  std::string label = {});

// xi = hours * pi/12 - 2pi, negated when `negate` is set (Berkson use).
[[nodiscard]] std::vector<double> dlmo_hours_to_errors(std::span<const double> hours, bool negate);

[[nodiscard]] KappaCoefficients kappa_from_dlmo_hours(std::span<const double> hours, int max_order,
                                                      bool negate, std::string label = {});

// Per order m >= 1, the value of least magnitude across `sets` (first
// occurrence wins ties). The label lists the donor of each order.
[[nodiscard]] KappaCoefficients conservative_minimum(std::span<const KappaCoefficients> sets);

// kappa^(m)(0) = 0 for m >= 1: the corrected score collapses to the naive one.
[[nodiscard]] KappaCoefficients zero_kappa(int max_order);

}  // namespace cosinor
