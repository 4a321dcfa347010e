#include "cosinor/special.hpp"

#include "cosinor/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cosinor {

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

void check_args(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma: a must be > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma: x must be >= 0");
}

// log of x^a e^-x / Gamma(a)
double log_prefactor(double a, double x) {
    return a * std::log(x) - x - std::lgamma(a);
}

double p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(log_prefactor(a, x));
        }
    }
    throw NumericalError("incomplete gamma series did not converge");
}

double q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return std::exp(log_prefactor(a, x)) * h;
        }
    }
    throw NumericalError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return p_series(a, x);
    return 1.0 - q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - p_series(a, x);
    return q_continued_fraction(a, x);
}

}  // namespace cosinor
