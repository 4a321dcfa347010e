#include "cosinor/rhythm.hpp"

#include <cmath>

namespace cosinor {

bool CosinorParams::is_finite() const noexcept {
    return std::isfinite(theta0) && std::isfinite(theta1) && std::isfinite(theta2);
}

double wrap_to_pi(double angle) noexcept {
    double r = std::fmod(angle + kPi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    double wrapped = r - kPi;
    // fmod + shift can land exactly on +pi after rounding
    if (wrapped >= kPi) wrapped -= kTwoPi;
    if (wrapped < -kPi) wrapped = -kPi;
    return wrapped;
}

double wrap_to_two_pi(double angle) noexcept {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

AmplitudePhase to_amplitude_phase(const CosinorParams& p) noexcept {
    AmplitudePhase ap;
    ap.theta0 = p.theta0;
    if (p.theta1 == 0.0 && p.theta2 == 0.0) {
        ap.amplitude = 0.0;
        ap.phase = 0.0;
        return ap;
    }
    ap.amplitude = std::hypot(p.theta1, p.theta2);
    ap.phase = wrap_to_pi(std::atan2(-p.theta1, p.theta2));
    return ap;
}

CosinorParams from_amplitude_phase(const AmplitudePhase& ap) noexcept {
    return {ap.theta0, -ap.amplitude * std::sin(ap.phase), ap.amplitude * std::cos(ap.phase)};
}

std::array<double, 3> regressors(double x) noexcept {
    return {1.0, std::sin(x), std::cos(x)};
}

double predict(const CosinorParams& p, double x) noexcept {
    return p.theta0 + p.theta1 * std::sin(x) + p.theta2 * std::cos(x);
}

}  // namespace cosinor
