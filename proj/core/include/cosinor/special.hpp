#pragma once

namespace cosinor {

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x) for a > 0, x >= 0.
// Series expansion below x = a + 1, Lentz continued fraction above.
[[nodiscard]] double regularized_gamma_p(double a, double x);
[[nodiscard]] double regularized_gamma_q(double a, double x);

}  // namespace cosinor
