#pragma once

// Seedable generators and the samplers used by the simulation engine.
//
// Every variate is produced by inverse-CDF transforms of open-interval
// uniforms, so a given seed yields the same stream on every platform
// (std:: distribution objects are implementation-defined).

#include <cstdint>
#include <random>

namespace cosinor {

// SplitMix64 finalizer; used to decorrelate nearby seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Independent substream for trial `index`: seed xor index, then mixed.
    [[nodiscard]] static Rng substream(std::uint64_t seed, std::uint64_t index) { return Rng(seed ^ index); }

    // Uniform on the open interval (0, 1), 53-bit resolution.
    [[nodiscard]] double uniform() noexcept {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    [[nodiscard]] double normal() noexcept;
    [[nodiscard]] double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

private:
    std::mt19937_64 engine_;
};

// Standard normal CDF and quantile. The quantile is Wichura's AS241
// (PPND16), relative accuracy about 1e-16.
[[nodiscard]] double normal_cdf(double z) noexcept;
[[nodiscard]] double normal_quantile(double p);

// Normal(mean, variance) restricted to [lower, upper]; mean and variance are
// those of the parent distribution. Inverse CDF on the truncated interval.
// Throws std::invalid_argument when lower >= upper or variance <= 0.
[[nodiscard]] double sample_truncated_normal(double mean, double variance, double lower, double upper, Rng& rng);

// Laplace(location, scale) reduced into [-pi, pi).
[[nodiscard]] double sample_wrapped_laplace(double location, double scale, Rng& rng);

// Skew-normal parameters (location, scale, shape) matching a target mean,
// variance and skewness.
struct SkewNormalParams {
    double location = 0.0;
    double scale = 1.0;
    double shape = 0.0;
    double delta = 0.0;  // shape / sqrt(1 + shape^2)
};

// Largest attainable |skewness| of a skew-normal law.
inline constexpr double kMaxSkewNormalSkewness = 0.9952717464311565;

// Throws std::invalid_argument for |skewness| >= kMaxSkewNormalSkewness or
// variance <= 0.
[[nodiscard]] SkewNormalParams skew_normal_from_moments(double mean, double variance, double skewness);

// Unwrapped skew-normal draw.
[[nodiscard]] double sample_skew_normal(const SkewNormalParams& p, Rng& rng) noexcept;

// Skew-normal with the given mean/variance/skewness reduced into [-pi, pi).
[[nodiscard]] double sample_wrapped_skew_normal(double mean, double variance, double skewness, Rng& rng);

// Normal(mean, variance) reduced into [0, 2pi).
[[nodiscard]] double sample_wrapped_normal(double mean, double variance, Rng& rng);

}  // namespace cosinor
