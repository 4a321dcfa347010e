#include "cosinor/random.hpp"

#include "cosinor/rhythm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cosinor {

double Rng::normal() noexcept {
    return normal_quantile(uniform());
}

double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("normal_quantile: p outside [0, 1]");
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r + 6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) * r + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r + 3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) * r + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
                     1.27045825245236838258e+0) * r + 3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                  4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
                     1.48103976427480074590e-1) * r + 6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                  2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
                     2.65321895265761230930e-2) * r + 2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                  5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
                     7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

double sample_truncated_normal(double mean, double variance, double lower, double upper, Rng& rng) {
    if (!(lower < upper)) throw std::invalid_argument("truncated normal: need lower < upper");
    if (!(variance > 0.0)) throw std::invalid_argument("truncated normal: variance must be > 0");
    const double sd = std::sqrt(variance);
    double alpha = (lower - mean) / sd;
    double beta = (upper - mean) / sd;

    // Work in the lower tail, where the CDF keeps full relative precision.
    const bool mirrored = alpha > 0.0;
    if (mirrored) {
        const double tmp = alpha;
        alpha = -beta;
        beta = -tmp;
    }
    const double lo = normal_cdf(alpha);
    const double hi = normal_cdf(beta);
    const double u = rng.uniform();
    double z = normal_quantile(lo + u * (hi - lo));
    if (mirrored) z = -z;
    return std::clamp(mean + sd * z, lower, upper);
}

double sample_wrapped_laplace(double location, double scale, Rng& rng) {
    if (!(scale > 0.0)) throw std::invalid_argument("wrapped Laplace: scale must be > 0");
    const double u = rng.uniform() - 0.5;
    const double x = location - scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
    return wrap_to_pi(x);
}

SkewNormalParams skew_normal_from_moments(double mean, double variance, double skewness) {
    if (!(variance > 0.0)) throw std::invalid_argument("skew normal: variance must be > 0");
    if (!(std::abs(skewness) < kMaxSkewNormalSkewness)) {
        throw std::invalid_argument("skew normal: |skewness| must be below 0.99527");
    }
    const double pi = std::numbers::pi;
    const double g23 = std::cbrt(skewness * skewness);  // |gamma|^(2/3)
    const double k = std::cbrt(((4.0 - pi) / 2.0) * ((4.0 - pi) / 2.0));
    const double delta = std::copysign(std::sqrt((pi / 2.0) * g23 / (g23 + k)), skewness == 0.0 ? 1.0 : skewness);

    SkewNormalParams p;
    p.delta = skewness == 0.0 ? 0.0 : delta;
    p.shape = p.delta / std::sqrt(1.0 - p.delta * p.delta);
    p.scale = std::sqrt(variance / (1.0 - 2.0 * p.delta * p.delta / pi));
    p.location = mean - p.scale * p.delta * std::sqrt(2.0 / pi);
    return p;
}

double sample_skew_normal(const SkewNormalParams& p, Rng& rng) noexcept {
    // Z = delta |U0| + sqrt(1 - delta^2) U1 is standard skew-normal(shape).
    const double u0 = rng.normal();
    const double u1 = rng.normal();
    const double z = p.delta * std::abs(u0) + std::sqrt(1.0 - p.delta * p.delta) * u1;
    return p.location + p.scale * z;
}

double sample_wrapped_skew_normal(double mean, double variance, double skewness, Rng& rng) {
    return wrap_to_pi(sample_skew_normal(skew_normal_from_moments(mean, variance, skewness), rng));
}

double sample_wrapped_normal(double mean, double variance, Rng& rng) {
    if (!(variance > 0.0)) throw std::invalid_argument("wrapped normal: variance must be > 0");
    return wrap_to_two_pi(rng.normal(mean, std::sqrt(variance)));
}

}  // namespace cosinor
