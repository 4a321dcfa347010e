#pragma once

// Scenario engine for the measurement-error simulation study.
//
// Each trial draws a design, covariate errors xi, per-observation intercept
// and amplitude (when those are random), and N(0, noise_sd^2) noise, then
// compares two estimators on the mismeasured covariate:
//
//   corrected: corrected score with kappa estimated from the
//       trial's own xi (or -xi under Berkson error), truncated at order T
//   naive:     ordinary least squares on the observed angle
//
// Trial t always uses Rng::substream(seed, t), so runs are reproducible and
// independent of thread count.

#include "cosinor/estimation.hpp"
#include "cosinor/rhythm.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cosinor {

enum class ErrorKind { classical, berkson };
enum class DesignKind { equispaced, wrapped_normal };

struct TruncatedNormalSpec {
    double mean = 0.0;  // parent normal
    double variance = 1.0;
    double lower = 0.0;
    double upper = 1.0;
};

// Fixed value, or drawn per observation from a truncated normal.
using ParamSpec = std::variant<double, TruncatedNormalSpec>;

// Value that serves as the true parameter: the fixed value, or the parent mean.
[[nodiscard]] double nominal_value(const ParamSpec& spec) noexcept;

struct NoErrorSpec {};
struct WrappedLaplaceSpec {
    double location = 0.0;
    double scale = 1.0;
};
struct WrappedSkewNormalSpec {
    double mean = 0.0;
    double variance = 1.0;
    double skewness = 0.0;
};
using ErrorSpec = std::variant<NoErrorSpec, WrappedLaplaceSpec, WrappedSkewNormalSpec>;

struct ScenarioConfig {
    int scenario_id = 0;  // 0 = free-form
    std::size_t n = 100;
    ErrorKind error_kind = ErrorKind::classical;
    DesignKind design = DesignKind::equispaced;
    double design_mean = kPi;  // wrapped-normal design only
    double design_variance = 2.5;
    ParamSpec theta0 = 6.0;
    ParamSpec amplitude = 1.0;
    double phase = 0.0;
    ErrorSpec error = NoErrorSpec{};
    double noise_sd = 0.5;
    int truncation_order = kDefaultTruncationOrder;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
};

// Scenarios 1-8 of the study. Throws std::invalid_argument for other ids.
[[nodiscard]] ScenarioConfig scenario_preset(int scenario_id, std::size_t n, std::size_t trials,
                                             std::uint64_t seed);

// INI-style file with sections [scenario], [theta0], [amplitude], [error],
// [design]. A `preset` key in [scenario] starts from scenario_preset() and the
// remaining keys override it. See README for the full key list.
[[nodiscard]] ScenarioConfig load_scenario_config(const std::filesystem::path& path);
[[nodiscard]] ScenarioConfig parse_scenario_config(std::istream& in);

// Throws std::invalid_argument describing the first invalid field.
void validate(const ScenarioConfig& cfg);

struct SimulatedData {
    std::vector<double> observed;   // X-dagger, what the analyst sees
    std::vector<double> truth;      // X*, the true covariate
    std::vector<double> responses;
    std::vector<double> errors;     // xi as generated (wrapped into [-pi, pi))
    std::vector<double> kappa_sample;  // xi (classical) or -xi (Berkson)
};

[[nodiscard]] SimulatedData simulate_trial_data(const ScenarioConfig& cfg, std::size_t trial);

struct FrameworkMetrics {
    bool ok = false;
    std::string failure;
    double theta0_error = 0.0;
    double amp_rel_error = 0.0;
    double phase_error = 0.0;  // wrapped into [-pi, pi)
    double score_diff_over_n = 0.0;
};

struct TrialReport {
    std::size_t trial = 0;
    FrameworkMetrics corrected;
    FrameworkMetrics naive;
};

[[nodiscard]] TrialReport run_trial(const ScenarioConfig& cfg, std::size_t trial);

// threads == 0 uses hardware concurrency; results are ordered by trial.
[[nodiscard]] std::vector<TrialReport> run_scenario(const ScenarioConfig& cfg, unsigned threads = 0);

struct SweepResult {
    std::vector<int> orders;
    // [order index][trial]; NaN where the fit failed
    std::vector<std::vector<double>> amp_rel_error;
    std::vector<std::vector<double>> phase_error;
    std::vector<std::vector<bool>> failed;
};

// Fits every trial once per truncation order on the same simulated data.
[[nodiscard]] SweepResult truncation_sweep(const ScenarioConfig& cfg, std::span<const int> orders,
                                           unsigned threads = 0);

struct MetricSummary {
    std::size_t count = 0;
    double mean = 0.0, median = 0.0, sd = 0.0;
    double abs_mean = 0.0, abs_median = 0.0, abs_sd = 0.0;
    double q25 = 0.0, q75 = 0.0;
};

// NaN entries are skipped. Quantiles use linear interpolation (type 7).
[[nodiscard]] MetricSummary summarize(std::span<const double> values);

enum class Metric { theta0_error, amp_rel_error, phase_error, score_diff_over_n };

[[nodiscard]] std::string_view to_string(Metric m) noexcept;

// Collects one metric for one framework across trials (failed trials skipped).
[[nodiscard]] std::vector<double> collect(std::span<const TrialReport> reports, Framework f, Metric m);

}  // namespace cosinor
