#include "cosinor/inference.hpp"

#include "cosinor/errors.hpp"
#include "cosinor/linalg.hpp"
#include "cosinor/special.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cosinor {

std::string_view to_string(TestKind kind) noexcept {
    switch (kind) {
        case TestKind::wald: return "wald";
        case TestKind::score_naive: return "score_naive";
        case TestKind::score_corrected: return "score_corrected";
    }
    return "unknown";
}

namespace {

double p_value_for(double statistic) {
    // CDF of a chi-squared variable is 0 below the origin
    return statistic <= 0.0 ? 1.0 : chisq2_sf(statistic);
}

}  // namespace

CosinorParams null_params(std::span<const double> responses) {
    if (responses.empty()) throw std::invalid_argument("null_params: empty responses");
    const double mean = std::accumulate(responses.begin(), responses.end(), 0.0) /
                        static_cast<double>(responses.size());
    return {mean, 0.0, 0.0};
}

TestResult wald_test(std::span<const double> angles, std::span<const double> responses,
                     const FitResult& fit) {
    if (angles.size() != responses.size() || angles.empty()) {
        throw std::invalid_argument("wald_test: data size mismatch");
    }
    if (!(fit.sigma2_hat > 0.0)) throw NumericalError("zero residual variance");

    const CosinorParams null = null_params(responses);
    const Vec3 diff{fit.params.theta0 - null.theta0, fit.params.theta1 - null.theta1,
                    fit.params.theta2 - null.theta2};
    const Mat3 m = design_matrix(angles);
    const double n = static_cast<double>(angles.size());

    TestResult r;
    r.kind = TestKind::wald;
    r.statistic = n / fit.sigma2_hat * dot(diff, multiply(m, diff));
    r.statistic_over_n = r.statistic / n;
    r.p_value = p_value_for(r.statistic);
    return r;
}

TestResult score_test(std::span<const double> angles, std::span<const double> responses,
                      const KappaCoefficients& kappa, int truncation_order) {
    if (angles.size() < 3) {
        throw std::invalid_argument("need at least 3 observations, got " + std::to_string(angles.size()));
    }
    const auto tables = derivative_tables(angles, responses, kappa, truncation_order);
    const CosinorParams null = null_params(responses);
    const Vec3 theta{null.theta0, null.theta1, null.theta2};

    const Vec3 a_theta = multiply(tables.a_mat, theta);
    const Vec3 d{tables.b_vec[0] - a_theta[0], tables.b_vec[1] - a_theta[1], tables.b_vec[2] - a_theta[2]};

    Vec3 solved;
    try {
        solved = solve(tables.a_mat, d);
    } catch (const NumericalError&) {
        throw NumericalError("score test Jacobian is singular");
    }

    const double n = static_cast<double>(angles.size());
    TestResult r;
    r.kind = truncation_order == 0 ? TestKind::score_naive : TestKind::score_corrected;
    r.statistic = n * dot(d, solved);
    r.statistic_over_n = r.statistic / n;
    r.p_value = p_value_for(r.statistic);
    r.jacobian_positive_definite = is_positive_definite(tables.a_mat);
    return r;
}

TestResult score_test_naive(std::span<const double> angles, std::span<const double> responses) {
    return score_test(angles, responses, zero_kappa(0), 0);
}

double chisq2_sf(double x) {
    if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("chisq2_sf: x must be >= 0");
    return std::exp(-0.5 * x);
}

double chisq_sf(double x, int dof) {
    if (dof < 1) throw std::invalid_argument("chisq_sf: dof must be >= 1");
    if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("chisq_sf: x must be >= 0");
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace cosinor
