#pragma once

// Gene-panel assessment: regress a quantity estimated from true-time (ICT)
// data on the same quantity estimated from observed-time (ZT) data, without
// an intercept, across genes. beta > 1 means the ZT-based quantities are
// attenuated relative to the ICT-based ones.

#include "cosinor/estimation.hpp"
#include "cosinor/rhythm.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosinor {

struct OriginFit {
    double beta = 0.0;
    double r_squared = 0.0;  // 1 - SSE / sum y^2 (uncentered)
};

// beta = sum x y / sum x^2. Throws std::invalid_argument on length mismatch,
// empty input, or sum x^2 == 0.
[[nodiscard]] OriginFit origin_regression(std::span<const double> x, std::span<const double> y);

// When |eta_hat - eta_star| > pi, eta_hat moves by +2pi if eta_star > 0 and
// by -2pi if eta_star < 0. Other pairs are unchanged.
[[nodiscard]] std::vector<double> unwrap_phase_pairs(std::span<const double> eta_hat,
                                                     std::span<const double> eta_star);

enum class Quantity { theta0, amplitude, phase, score_over_n };

[[nodiscard]] std::string_view to_string(Quantity q) noexcept;

// Per-gene fit outcome as consumed by the assessment.
struct GeneFit {
    std::string gene_id;
    bool ok = false;
    CosinorParams params;
    double score_over_n = 0.0;
};

struct AssessmentReport {
    Quantity quantity = Quantity::theta0;
    double beta = 0.0;
    double r_squared = 0.0;
    std::size_t n_genes = 0;     // genes used
    std::size_t n_excluded = 0;  // genes whose ZT or ICT fit failed
    Framework framework = Framework::naive;
};

// One report per quantity, ICT-based values as response and ZT-based values
// as covariate. Throws DataError when the gene lists differ.
[[nodiscard]] std::vector<AssessmentReport> assess_dataset(std::span<const GeneFit> zt_fits,
                                                           std::span<const GeneFit> ict_fits, Framework framework);

}  // namespace cosinor
