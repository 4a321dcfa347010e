#include "cosinor/assess.hpp"

#include "cosinor/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace cosinor {

OriginFit origin_regression(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("origin_regression: length mismatch");
    if (x.empty()) throw std::invalid_argument("origin_regression: empty input");
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("origin_regression: covariate is identically zero");

    OriginFit fit;
    fit.beta = sxy / sxx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.beta * x[i];
        sse += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

std::vector<double> unwrap_phase_pairs(std::span<const double> eta_hat, std::span<const double> eta_star) {
    if (eta_hat.size() != eta_star.size()) throw std::invalid_argument("unwrap_phase_pairs: length mismatch");
    std::vector<double> out(eta_hat.begin(), eta_hat.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::abs(eta_hat[i] - eta_star[i]) > kPi) {
            if (eta_star[i] > 0.0) {
                out[i] += kTwoPi;
            } else if (eta_star[i] < 0.0) {
                out[i] -= kTwoPi;
            }
        }
    }
    return out;
}

std::string_view to_string(Quantity q) noexcept {
    switch (q) {
        case Quantity::theta0: return "theta0";
        case Quantity::amplitude: return "amplitude";
        case Quantity::phase: return "phase";
        case Quantity::score_over_n: return "score_over_n";
    }
    return "unknown";
}

std::vector<AssessmentReport> assess_dataset(std::span<const GeneFit> zt_fits, std::span<const GeneFit> ict_fits,
                                             Framework framework) {
    if (zt_fits.size() != ict_fits.size()) {
        throw DataError("gene misalignment: " + std::to_string(zt_fits.size()) + " ZT fits vs " +
                        std::to_string(ict_fits.size()) + " ICT fits");
    }
    std::vector<double> zt_theta0, ict_theta0, zt_amp, ict_amp, zt_phase, ict_phase, zt_score, ict_score;
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < zt_fits.size(); ++i) {
        if (zt_fits[i].gene_id != ict_fits[i].gene_id) {
            throw DataError("gene misalignment at row " + std::to_string(i + 1) + ": '" + zt_fits[i].gene_id +
                            "' vs '" + ict_fits[i].gene_id + "'");
        }
        if (!zt_fits[i].ok || !ict_fits[i].ok) {
            ++excluded;
            continue;
        }
        const auto zt = to_amplitude_phase(zt_fits[i].params);
        const auto ict = to_amplitude_phase(ict_fits[i].params);
        zt_theta0.push_back(zt.theta0);
        ict_theta0.push_back(ict.theta0);
        zt_amp.push_back(zt.amplitude);
        ict_amp.push_back(ict.amplitude);
        zt_phase.push_back(zt.phase);
        ict_phase.push_back(ict.phase);
        zt_score.push_back(zt_fits[i].score_over_n);
        ict_score.push_back(ict_fits[i].score_over_n);
    }
    if (zt_theta0.empty()) throw DataError("no gene has successful ZT and ICT fits");

    const auto unwrapped = unwrap_phase_pairs(zt_phase, ict_phase);
    std::vector<AssessmentReport> reports;
    auto add = [&](Quantity q, std::span<const double> x, std::span<const double> y) {
        const auto fit = origin_regression(x, y);
        reports.push_back({q, fit.beta, fit.r_squared, x.size(), excluded, framework});
    };
    add(Quantity::theta0, zt_theta0, ict_theta0);
    add(Quantity::amplitude, zt_amp, ict_amp);
    add(Quantity::phase, unwrapped, ict_phase);
    add(Quantity::score_over_n, zt_score, ict_score);
    return reports;
}

}  // namespace cosinor
