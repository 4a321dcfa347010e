#include "cosinor/kappa.hpp"

#include "cosinor/errors.hpp"
#include "cosinor/rhythm.hpp"

#include <cmath>
#include <stdexcept>

namespace cosinor {

namespace {

void check_order(int max_order) {
    if (max_order < 0 || max_order > kMaxKappaOrder) {
        throw std::invalid_argument("kappa order must lie in [0, " + std::to_string(kMaxKappaOrder) +
                                    "], got " + std::to_string(max_order));
    }
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial: need 0 <= k <= n");
    if (n > kMaxKappaOrder) throw std::invalid_argument("binomial: n exceeds supported kappa order");
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        // c * (n - k + i) is divisible by i at every step
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return c;
}

std::vector<double> raw_moments(std::span<const double> xi, int max_order) {
    if (xi.empty()) throw std::invalid_argument("empty error sample");
    if (max_order < 1) throw std::invalid_argument("raw_moments: max_order must be >= 1");
    check_order(max_order);

    std::vector<CompensatedSum> sums(static_cast<std::size_t>(max_order));
    for (double v : xi) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in error sample");
        double power = 1.0;
        for (auto& s : sums) {
            power *= v;
            s.add(power);
        }
    }
    std::vector<double> mu;
    mu.reserve(sums.size());
    const double n = static_cast<double>(xi.size());
    for (const auto& s : sums) mu.push_back(s.value() / n);
    return mu;
}

KappaCoefficients kappa_from_moments(std::span<const double> mu, int max_order, std::string label) {
    check_order(max_order);
    if (mu.size() < static_cast<std::size_t>(max_order)) {
        throw std::invalid_argument("kappa_from_moments: need at least max_order moments");
    }
    KappaCoefficients k;
    k.source_label = std::move(label);
    k.values.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    k.values[0] = 1.0;
    for (int m = 1; m <= max_order; ++m) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
            acc += static_cast<double>(binomial(m, j)) * k.values[static_cast<std::size_t>(j)] *
                   mu[static_cast<std::size_t>(m - j - 1)];
        }
        k.values[static_cast<std::size_t>(m)] = -acc;
    }
    return k;
}

KappaCoefficients kappa_from_sample(std::span<const double> xi, int max_order, std::string label) {
    check_order(max_order);
    if (xi.empty()) throw std::invalid_argument("empty error sample");
    KappaCoefficients k;
    if (max_order == 0) {
        k.source_label = std::move(label);
    } else {
        const auto mu = raw_moments(xi, max_order);
        k = kappa_from_moments(mu, max_order, std::move(label));
    }
    k.sample_size = xi.size();
    return k;
}

std::vector<double> dlmo_hours_to_errors(std::span<const double> hours, bool negate) {
    std::vector<double> xi;
    xi.reserve(hours.size());
    for (double h : hours) {
        if (!std::isfinite(h)) throw std::invalid_argument("non-finite DLMO hour value");
        const double v = hours_to_radians(h) - kTwoPi;
        xi.push_back(negate ? -v : v);
    }
    return xi;
}

KappaCoefficients kappa_from_dlmo_hours(std::span<const double> hours, int max_order, bool negate,
                                        std::string label) {
    if (hours.empty()) throw std::invalid_argument("empty error sample");
    const auto xi = dlmo_hours_to_errors(hours, negate);
    return kappa_from_sample(xi, max_order, std::move(label));
}

KappaCoefficients conservative_minimum(std::span<const KappaCoefficients> sets) {
    if (sets.empty()) throw std::invalid_argument("conservative_minimum: no kappa sets given");
    const int order = sets.front().max_order();
    for (const auto& s : sets) {
        if (s.max_order() != order) {
            throw DataError("conservative_minimum: kappa sets have mismatched orders (" +
                            std::to_string(order) + " vs " + std::to_string(s.max_order()) + ")");
        }
    }
    KappaCoefficients out = zero_kappa(order);
    std::string donors;
    for (int m = 1; m <= order; ++m) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < sets.size(); ++i) {
            if (std::abs(sets[i][m]) < std::abs(sets[best][m])) best = i;
        }
        out.values[static_cast<std::size_t>(m)] = sets[best][m];
        if (m > 1) donors += '|';
        donors += sets[best].source_label.empty() ? "#" + std::to_string(best) : sets[best].source_label;
    }
    out.source_label = "conservative_min(" + donors + ")";
    return out;
}

KappaCoefficients zero_kappa(int max_order) {
    check_order(max_order);
    KappaCoefficients k;
    k.values.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    k.values[0] = 1.0;
    k.source_label = "zero";
    return k;
}

}  // namespace cosinor
