#include "cosinor/estimation.hpp"

#include "cosinor/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cosinor {

std::string_view to_string(Framework f) noexcept {
    return f == Framework::corrected ? "corrected" : "naive";
}

namespace {

void check_data(std::span<const double> angles, std::span<const double> responses, std::size_t min_n) {
    if (angles.size() != responses.size()) {
        throw std::invalid_argument("angles and responses differ in length");
    }
    if (angles.size() < min_n) {
        throw std::invalid_argument("need at least 3 observations, got " + std::to_string(angles.size()));
    }
}

// m-th derivative of sin(k x) / k^m, averaged, given the averages of
// sin(kx) and cos(kx): sin -> cos -> -sin -> -cos.
double sin_cycle(int m, double s, double c) noexcept {
    switch (m % 4) {
        case 0: return s;
        case 1: return c;
        case 2: return -s;
        default: return -c;
    }
}

// cos -> -sin -> -cos -> sin
double cos_cycle(int m, double s, double c) noexcept {
    switch (m % 4) {
        case 0: return c;
        case 1: return -s;
        case 2: return -c;
        default: return s;
    }
}

Mat3 symmetric(double a00, double a01, double a02, double a11, double a12, double a22) noexcept {
    Mat3 m;
    m(0, 0) = a00;
    m(0, 1) = m(1, 0) = a01;
    m(0, 2) = m(2, 0) = a02;
    m(1, 1) = a11;
    m(1, 2) = m(2, 1) = a12;
    m(2, 2) = a22;
    return m;
}

FitResult solve_tables(const DerivativeTables& tables, std::span<const double> angles,
                       std::span<const double> responses, const char* singular_message) {
    FitResult fit;
    Vec3 theta;
    try {
        theta = solve(tables.a_mat, tables.b_vec);
    } catch (const NumericalError&) {
        throw NumericalError(singular_message);
    }
    fit.params = {theta[0], theta[1], theta[2]};
    fit.n = angles.size();
    fit.truncation_order = tables.truncation_order;
    fit.condition_estimate = condition_1norm(tables.a_mat);
    fit.sigma2_hat = residual_variance(angles, responses, fit.params);
    return fit;
}

}  // namespace

DesignMoments design_moments(std::span<const double> angles, std::span<const double> responses) {
    check_data(angles, responses, 1);
    DesignMoments dm;
    dm.n = angles.size();
    for (std::size_t j = 0; j < angles.size(); ++j) {
        const double x = angles[j];
        const double y = responses[j];
        const double s = std::sin(x);
        const double c = std::cos(x);
        dm.sin1 += s;
        dm.cos1 += c;
        dm.sin2 += std::sin(2.0 * x);
        dm.cos2 += std::cos(2.0 * x);
        dm.y += y;
        dm.y_sin1 += y * s;
        dm.y_cos1 += y * c;
    }
    const double inv_n = 1.0 / static_cast<double>(dm.n);
    dm.sin1 *= inv_n;
    dm.cos1 *= inv_n;
    dm.sin2 *= inv_n;
    dm.cos2 *= inv_n;
    dm.y *= inv_n;
    dm.y_sin1 *= inv_n;
    dm.y_cos1 *= inv_n;
    return dm;
}

DerivativeTables derivative_tables(const DesignMoments& dm, const KappaCoefficients& kappa,
                                   int truncation_order) {
    if (truncation_order < 0) throw std::invalid_argument("truncation order must be >= 0");
    if (truncation_order > kappa.max_order()) {
        throw std::invalid_argument("truncation order " + std::to_string(truncation_order) +
                                    " exceeds kappa max order " + std::to_string(kappa.max_order()));
    }

    DerivativeTables t;
    t.truncation_order = truncation_order;

    // m = 0: f f^T with sin^2 = (1 - cos 2x)/2, cos^2 = (1 + cos 2x)/2,
    // sin cos = sin(2x)/2.
    t.a_mat = symmetric(1.0, dm.sin1, dm.cos1, 0.5 * (1.0 - dm.cos2), 0.5 * dm.sin2, 0.5 * (1.0 + dm.cos2));
    t.b_vec = {dm.y, dm.y_sin1, dm.y_cos1};

    double factorial = 1.0;
    double pow2 = 1.0;
    for (int m = 1; m <= truncation_order; ++m) {
        factorial *= m;
        pow2 *= 2.0;
        const double w = kappa[m] / factorial;
        if (w == 0.0) continue;

        const double ds = sin_cycle(m, dm.sin1, dm.cos1);
        const double dc = cos_cycle(m, dm.sin1, dm.cos1);
        const double half_pow = 0.5 * pow2;
        const double d_cos2 = half_pow * cos_cycle(m, dm.sin2, dm.cos2);
        const double d_sin2 = half_pow * sin_cycle(m, dm.sin2, dm.cos2);

        // d^m[1] = 0, d^m[sin^2] = -d^m[cos 2x]/2, d^m[cos^2] = +d^m[cos 2x]/2
        const Mat3 d = symmetric(0.0, ds, dc, -d_cos2, d_sin2, d_cos2);
        for (std::size_t i = 0; i < 9; ++i) t.a_mat.data[i] += w * d.data[i];

        t.b_vec[1] += w * sin_cycle(m, dm.y_sin1, dm.y_cos1);
        t.b_vec[2] += w * cos_cycle(m, dm.y_sin1, dm.y_cos1);
    }
    return t;
}

DerivativeTables derivative_tables(std::span<const double> angles, std::span<const double> responses,
                                   const KappaCoefficients& kappa, int truncation_order) {
    return derivative_tables(design_moments(angles, responses), kappa, truncation_order);
}

Mat3 design_matrix(std::span<const double> angles) {
    if (angles.empty()) throw std::invalid_argument("design_matrix: no angles");
    double s1 = 0.0, c1 = 0.0, s2 = 0.0, c2 = 0.0;
    for (double x : angles) {
        s1 += std::sin(x);
        c1 += std::cos(x);
        s2 += std::sin(2.0 * x);
        c2 += std::cos(2.0 * x);
    }
    const double inv_n = 1.0 / static_cast<double>(angles.size());
    s1 *= inv_n;
    c1 *= inv_n;
    s2 *= inv_n;
    c2 *= inv_n;
    return symmetric(1.0, s1, c1, 0.5 * (1.0 - c2), 0.5 * s2, 0.5 * (1.0 + c2));
}

FitResult fit_naive(std::span<const double> angles, std::span<const double> responses) {
    check_data(angles, responses, 3);
    const auto tables = derivative_tables(angles, responses, zero_kappa(0), 0);
    return solve_tables(tables, angles, responses, "degenerate design");
}

FitResult fit_corrected(std::span<const double> angles, std::span<const double> responses,
                        const KappaCoefficients& kappa, int truncation_order) {
    check_data(angles, responses, 3);
    const auto tables = derivative_tables(angles, responses, kappa, truncation_order);
    return solve_tables(tables, angles, responses,
                        "corrected system singular (kappa too aggressive or degenerate design)");
}

double residual_variance(std::span<const double> angles, std::span<const double> responses,
                         const CosinorParams& params) {
    check_data(angles, responses, 1);
    double ss = 0.0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
        const double r = responses[j] - predict(params, angles[j]);
        ss += r * r;
    }
    return ss / static_cast<double>(angles.size());
}

}  // namespace cosinor
