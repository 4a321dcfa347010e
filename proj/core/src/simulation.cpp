#include "cosinor/simulation.hpp"

#include "cosinor/inference.hpp"
#include "cosinor/kappa.hpp"
#include "cosinor/parallel.hpp"
#include "cosinor/random.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cosinor {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double draw_param(const ParamSpec& spec, Rng& rng) {
    return std::visit(overloaded{[](double v) { return v; },
                                 [&rng](const TruncatedNormalSpec& tn) {
                                     return sample_truncated_normal(tn.mean, tn.variance, tn.lower, tn.upper, rng);
                                 }},
                      spec);
}

double draw_error(const ErrorSpec& spec, Rng& rng) {
    return std::visit(overloaded{[](const NoErrorSpec&) { return 0.0; },
                                 [&rng](const WrappedLaplaceSpec& s) {
                                     return sample_wrapped_laplace(s.location, s.scale, rng);
                                 },
                                 [&rng](const WrappedSkewNormalSpec& s) {
                                     return sample_wrapped_skew_normal(s.mean, s.variance, s.skewness, rng);
                                 }},
                      spec);
}

void fill_metrics(FrameworkMetrics& out, const FitResult& fit, double score_over_n, double true_score_over_n,
                  const ScenarioConfig& cfg) {
    const auto ap = to_amplitude_phase(fit.params);
    const double a_star = nominal_value(cfg.amplitude);
    out.ok = true;
    out.theta0_error = ap.theta0 - nominal_value(cfg.theta0);
    out.amp_rel_error = (ap.amplitude - a_star) / a_star;
    out.phase_error = wrap_to_pi(ap.phase - cfg.phase);
    out.score_diff_over_n = score_over_n - true_score_over_n;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return kNaN;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void mean_sd(const std::vector<double>& v, double& mean, double& sd) {
    if (v.empty()) {
        mean = sd = kNaN;
        return;
    }
    mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() < 2) {
        sd = 0.0;
        return;
    }
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// ---------------------------------------------------------------------------
// config file parsing

using boost::property_tree::ptree;

ParamSpec read_param(const ptree& tree, const std::string& section, const ParamSpec& fallback) {
    const auto child = tree.get_child_optional(section);
    if (!child) return fallback;
    if (auto v = child->get_optional<double>("value")) return *v;
    if (child->get_optional<double>("mean")) {
        TruncatedNormalSpec tn;
        tn.mean = child->get<double>("mean");
        tn.variance = child->get<double>("variance");
        tn.lower = child->get<double>("lower");
        tn.upper = child->get<double>("upper");
        return tn;
    }
    throw std::invalid_argument("section [" + section + "] needs `value` or mean/variance/lower/upper");
}

ErrorSpec read_error(const ptree& tree, const ErrorSpec& fallback) {
    const auto child = tree.get_child_optional("error");
    if (!child) return fallback;
    const auto kind = child->get<std::string>("kind");
    if (kind == "none") return NoErrorSpec{};
    if (kind == "wrapped_laplace") {
        return WrappedLaplaceSpec{child->get<double>("location", 0.0), child->get<double>("scale")};
    }
    if (kind == "wrapped_skew_normal") {
        return WrappedSkewNormalSpec{child->get<double>("mean"), child->get<double>("variance"),
                                     child->get<double>("skewness")};
    }
    throw std::invalid_argument("unknown error kind '" + kind + "'");
}

}  // namespace

double nominal_value(const ParamSpec& spec) noexcept {
    return std::visit(overloaded{[](double v) { return v; }, [](const TruncatedNormalSpec& tn) { return tn.mean; }},
                      spec);
}

ScenarioConfig scenario_preset(int scenario_id, std::size_t n, std::size_t trials, std::uint64_t seed) {
    if (scenario_id < 1 || scenario_id > 8) {
        throw std::invalid_argument("scenario id must be 1..8, got " + std::to_string(scenario_id));
    }
    ScenarioConfig cfg;
    cfg.scenario_id = scenario_id;
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.error_kind = scenario_id <= 4 ? ErrorKind::classical : ErrorKind::berkson;

    const TruncatedNormalSpec intercept_tn{6.0, 1.0, 4.0, 8.0};
    switch ((scenario_id - 1) % 4 + 1) {
        case 1:
            cfg.theta0 = 6.0;
            cfg.amplitude = 1.0;
            cfg.phase = 0.0;
            cfg.error = WrappedLaplaceSpec{0.0, std::sqrt(0.3)};
            cfg.design = DesignKind::equispaced;
            cfg.noise_sd = 0.5;
            break;
        case 2:
            cfg.theta0 = intercept_tn;
            cfg.amplitude = 0.5;
            cfg.phase = kPi / 4.0;
            cfg.error = WrappedSkewNormalSpec{0.5, 0.5, -0.7};
            cfg.design = DesignKind::equispaced;
            cfg.noise_sd = 1.0;
            break;
        case 3:
            cfg.theta0 = 6.0;
            cfg.amplitude = TruncatedNormalSpec{0.5, 0.2, 0.2, 0.8};
            cfg.phase = kPi / 2.0;
            cfg.error = WrappedLaplaceSpec{0.0, std::sqrt(0.3)};
            cfg.design = DesignKind::wrapped_normal;
            cfg.noise_sd = 0.5;
            break;
        default:
            cfg.theta0 = intercept_tn;
            cfg.amplitude = TruncatedNormalSpec{1.0, 0.2, 0.7, 1.3};
            cfg.phase = 5.0 * kPi / 4.0;
            cfg.error = WrappedSkewNormalSpec{-0.5, 0.5, 0.7};
            cfg.design = DesignKind::wrapped_normal;
            cfg.noise_sd = 1.0;
            break;
    }
    cfg.design_mean = kPi;
    cfg.design_variance = 2.5;
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.n < 3) throw std::invalid_argument("scenario n must be >= 3");
    if (cfg.trials == 0) throw std::invalid_argument("scenario trials must be >= 1");
    if (!(cfg.noise_sd >= 0.0)) throw std::invalid_argument("noise_sd must be >= 0");
    if (cfg.truncation_order < 0 || cfg.truncation_order > kMaxKappaOrder) {
        throw std::invalid_argument("truncation_order out of range");
    }
    if (cfg.design == DesignKind::wrapped_normal && !(cfg.design_variance > 0.0)) {
        throw std::invalid_argument("design variance must be > 0");
    }
    auto check_param = [](const ParamSpec& p, const char* name) {
        if (const auto* tn = std::get_if<TruncatedNormalSpec>(&p)) {
            if (!(tn->lower < tn->upper) || !(tn->variance > 0.0)) {
                throw std::invalid_argument(std::string(name) + ": invalid truncated normal");
            }
        }
    };
    check_param(cfg.theta0, "theta0");
    check_param(cfg.amplitude, "amplitude");
    if (!(nominal_value(cfg.amplitude) > 0.0)) throw std::invalid_argument("nominal amplitude must be > 0");
    if (const auto* l = std::get_if<WrappedLaplaceSpec>(&cfg.error); l && !(l->scale > 0.0)) {
        throw std::invalid_argument("wrapped Laplace scale must be > 0");
    }
    if (const auto* s = std::get_if<WrappedSkewNormalSpec>(&cfg.error)) {
        (void)skew_normal_from_moments(s->mean, s->variance, s->skewness);
    }
}

ScenarioConfig parse_scenario_config(std::istream& in) {
    ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw std::invalid_argument(std::string("scenario config: ") + e.what());
    }

    try {
        const auto& sc = tree.get_child("scenario");
        const auto n = sc.get<std::size_t>("n", 100);
        const auto trials = sc.get<std::size_t>("trials", 2000);
        const auto seed = sc.get<std::uint64_t>("seed", 1);

        ScenarioConfig cfg;
        if (auto preset = sc.get_optional<int>("preset")) {
            cfg = scenario_preset(*preset, n, trials, seed);
        } else {
            cfg.n = n;
            cfg.trials = trials;
            cfg.seed = seed;
        }
        cfg.scenario_id = sc.get<int>("id", cfg.scenario_id);
        cfg.noise_sd = sc.get<double>("noise_sd", cfg.noise_sd);
        cfg.phase = sc.get<double>("phase", cfg.phase);
        cfg.truncation_order = sc.get<int>("truncation_order", cfg.truncation_order);
        if (auto kind = sc.get_optional<std::string>("error_kind")) {
            if (*kind == "classical") {
                cfg.error_kind = ErrorKind::classical;
            } else if (*kind == "berkson") {
                cfg.error_kind = ErrorKind::berkson;
            } else {
                throw std::invalid_argument("unknown error_kind '" + *kind + "'");
            }
        }
        if (auto design = tree.get_child_optional("design")) {
            const auto kind = design->get<std::string>("kind", "equispaced");
            if (kind == "equispaced") {
                cfg.design = DesignKind::equispaced;
            } else if (kind == "wrapped_normal") {
                cfg.design = DesignKind::wrapped_normal;
            } else {
                throw std::invalid_argument("unknown design kind '" + kind + "'");
            }
            cfg.design_mean = design->get<double>("mean", cfg.design_mean);
            cfg.design_variance = design->get<double>("variance", cfg.design_variance);
        }
        cfg.theta0 = read_param(tree, "theta0", cfg.theta0);
        cfg.amplitude = read_param(tree, "amplitude", cfg.amplitude);
        cfg.error = read_error(tree, cfg.error);
        validate(cfg);
        return cfg;
    } catch (const boost::property_tree::ptree_error& e) {
        throw std::invalid_argument(std::string("scenario config: ") + e.what());
    }
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario config " + path.string());
    return parse_scenario_config(in);
}

SimulatedData simulate_trial_data(const ScenarioConfig& cfg, std::size_t trial) {
    Rng rng = Rng::substream(cfg.seed, trial);
    const std::size_t n = cfg.n;
    SimulatedData d;

    std::vector<double> design(n);
    for (std::size_t j = 0; j < n; ++j) {
        design[j] = cfg.design == DesignKind::equispaced
                        ? kTwoPi * static_cast<double>(j) / static_cast<double>(n)
                        : sample_wrapped_normal(cfg.design_mean, cfg.design_variance, rng);
    }
    d.errors.resize(n);
    for (auto& xi : d.errors) xi = draw_error(cfg.error, rng);

    std::vector<double> intercepts(n), amplitudes(n);
    for (auto& v : intercepts) v = draw_param(cfg.theta0, rng);
    for (auto& v : amplitudes) v = draw_param(cfg.amplitude, rng);

    d.observed.resize(n);
    d.truth.resize(n);
    d.responses.resize(n);
    d.kappa_sample.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (cfg.error_kind == ErrorKind::classical) {
            d.truth[j] = design[j];
            d.observed[j] = wrap_to_two_pi(design[j] + d.errors[j]);
            d.kappa_sample[j] = d.errors[j];
        } else {
            d.observed[j] = design[j];
            d.truth[j] = wrap_to_two_pi(design[j] + d.errors[j]);
            d.kappa_sample[j] = -d.errors[j];
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double eps = rng.normal() * cfg.noise_sd;
        d.responses[j] = intercepts[j] + amplitudes[j] * std::cos(d.truth[j] + cfg.phase) + eps;
    }
    return d;
}

TrialReport run_trial(const ScenarioConfig& cfg, std::size_t trial) {
    const auto data = simulate_trial_data(cfg, trial);
    TrialReport report;
    report.trial = trial;

    double true_score = kNaN;
    try {
        true_score = score_test_naive(data.truth, data.responses).statistic_over_n;
    } catch (const std::exception& e) {
        report.naive.failure = report.corrected.failure = std::string("true-covariate score: ") + e.what();
        return report;
    }

    try {
        const auto fit = fit_naive(data.observed, data.responses);
        const auto score = score_test_naive(data.observed, data.responses);
        fill_metrics(report.naive, fit, score.statistic_over_n, true_score, cfg);
    } catch (const std::exception& e) {
        report.naive.failure = e.what();
    }

    try {
        const auto kappa = kappa_from_sample(data.kappa_sample, cfg.truncation_order);
        const auto fit = fit_corrected(data.observed, data.responses, kappa, cfg.truncation_order);
        const auto score = score_test(data.observed, data.responses, kappa, cfg.truncation_order);
        fill_metrics(report.corrected, fit, score.statistic_over_n, true_score, cfg);
    } catch (const std::exception& e) {
        report.corrected.failure = e.what();
    }
    return report;
}

std::vector<TrialReport> run_scenario(const ScenarioConfig& cfg, unsigned threads) {
    validate(cfg);
    std::vector<TrialReport> reports(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t t) { reports[t] = run_trial(cfg, t); });
    return reports;
}

SweepResult truncation_sweep(const ScenarioConfig& cfg, std::span<const int> orders, unsigned threads) {
    validate(cfg);
    if (orders.empty()) throw std::invalid_argument("truncation_sweep: no orders given");
    const int max_order = *std::max_element(orders.begin(), orders.end());
    if (*std::min_element(orders.begin(), orders.end()) < 0 || max_order > kMaxKappaOrder) {
        throw std::invalid_argument("truncation_sweep: orders must lie in [0, " + std::to_string(kMaxKappaOrder) + "]");
    }

    SweepResult result;
    result.orders.assign(orders.begin(), orders.end());
    result.amp_rel_error.assign(orders.size(), std::vector<double>(cfg.trials, kNaN));
    result.phase_error.assign(orders.size(), std::vector<double>(cfg.trials, kNaN));
    result.failed.assign(orders.size(), std::vector<bool>(cfg.trials, false));

    const double a_star = nominal_value(cfg.amplitude);
    std::vector<std::vector<std::pair<double, double>>> per_trial(cfg.trials);
    std::vector<std::vector<bool>> per_trial_failed(cfg.trials);

    parallel_for(cfg.trials, threads, [&](std::size_t t) {
        const auto data = simulate_trial_data(cfg, t);
        const auto kappa = kappa_from_sample(data.kappa_sample, max_order);
        auto& row = per_trial[t];
        auto& failed = per_trial_failed[t];
        row.assign(orders.size(), {kNaN, kNaN});
        failed.assign(orders.size(), false);
        for (std::size_t k = 0; k < orders.size(); ++k) {
            try {
                const auto fit = fit_corrected(data.observed, data.responses, kappa, orders[k]);
                const auto ap = to_amplitude_phase(fit.params);
                row[k] = {(ap.amplitude - a_star) / a_star, wrap_to_pi(ap.phase - cfg.phase)};
            } catch (const std::exception&) {
                failed[k] = true;
            }
        }
    });

    for (std::size_t t = 0; t < cfg.trials; ++t) {
        for (std::size_t k = 0; k < orders.size(); ++k) {
            result.amp_rel_error[k][t] = per_trial[t][k].first;
            result.phase_error[k][t] = per_trial[t][k].second;
            result.failed[k][t] = per_trial_failed[t][k];
        }
    }
    return result;
}

MetricSummary summarize(std::span<const double> values) {
    std::vector<double> v, a;
    v.reserve(values.size());
    for (double x : values) {
        if (!std::isnan(x)) v.push_back(x);
    }
    a.reserve(v.size());
    for (double x : v) a.push_back(std::abs(x));

    MetricSummary s;
    s.count = v.size();
    mean_sd(v, s.mean, s.sd);
    mean_sd(a, s.abs_mean, s.abs_sd);
    std::sort(v.begin(), v.end());
    std::sort(a.begin(), a.end());
    s.median = quantile_sorted(v, 0.5);
    s.q25 = quantile_sorted(v, 0.25);
    s.q75 = quantile_sorted(v, 0.75);
    s.abs_median = quantile_sorted(a, 0.5);
    return s;
}

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::theta0_error: return "theta0_error";
        case Metric::amp_rel_error: return "amp_rel_error";
        case Metric::phase_error: return "phase_error";
        case Metric::score_diff_over_n: return "score_diff_over_n";
    }
    return "unknown";
}

std::vector<double> collect(std::span<const TrialReport> reports, Framework f, Metric m) {
    std::vector<double> out;
    out.reserve(reports.size());
    for (const auto& r : reports) {
        const auto& fm = f == Framework::corrected ? r.corrected : r.naive;
        if (!fm.ok) continue;
        switch (m) {
            case Metric::theta0_error: out.push_back(fm.theta0_error); break;
            case Metric::amp_rel_error: out.push_back(fm.amp_rel_error); break;
            case Metric::phase_error: out.push_back(fm.phase_error); break;
            case Metric::score_diff_over_n: out.push_back(fm.score_diff_over_n); break;
        }
    }
    return out;
}

}  // namespace cosinor
