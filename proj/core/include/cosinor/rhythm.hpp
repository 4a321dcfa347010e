#pragma once

// Cosinor model types and the two parameterizations
//
//   y = theta0 + theta1 sin(x) + theta2 cos(x)
//     = theta0 + A cos(x + eta)
//
// with theta1 = -A sin(eta), theta2 = A cos(eta). Angles are radians
// everywhere in the library; hour values are converted at the I/O boundary.

#include <array>
#include <numbers>
#include <optional>

namespace cosinor {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kRadiansPerHour = std::numbers::pi / 12.0;

struct CosinorParams {
    double theta0{};
    double theta1{};
    double theta2{};

    [[nodiscard]] bool is_finite() const noexcept;
};

struct AmplitudePhase {
    double theta0{};
    double amplitude{};  // >= 0
    double phase{};      // [-pi, pi)
};

// One observation: observed (ZT) angle, optional true (ICT) angle, response.
struct PairedSample {
    double zt_angle{};
    std::optional<double> ict_angle;
    double response{};
};

// Reduce an angle into [-pi, pi).
[[nodiscard]] double wrap_to_pi(double angle) noexcept;
// Reduce an angle into [0, 2pi).
[[nodiscard]] double wrap_to_two_pi(double angle) noexcept;

[[nodiscard]] constexpr double hours_to_radians(double hours) noexcept {
    return hours * kRadiansPerHour;
}
[[nodiscard]] constexpr double radians_to_hours(double radians) noexcept {
    return radians / kRadiansPerHour;
}

// Amplitude 0 maps to phase 0; phase is undefined there.
[[nodiscard]] AmplitudePhase to_amplitude_phase(const CosinorParams& p) noexcept;
[[nodiscard]] CosinorParams from_amplitude_phase(const AmplitudePhase& ap) noexcept;

// Regression function vector f(x) = (1, sin x, cos x).
[[nodiscard]] std::array<double, 3> regressors(double x) noexcept;

[[nodiscard]] double predict(const CosinorParams& p, double x) noexcept;

}  // namespace cosinor
