#include "commands.hpp"

#include "output.hpp"

#include "cosinor/assess.hpp"
#include "cosinor/errors.hpp"
#include "cosinor/estimation.hpp"
#include "cosinor/inference.hpp"
#include "cosinor/io.hpp"
#include "cosinor/kappa.hpp"
#include "cosinor/parallel.hpp"
#include "cosinor/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace cosinor::cli {

namespace fs = std::filesystem;
using io::format_double;

namespace {

constexpr std::string_view kCombinedLabel = "Combined";

int parse_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    return v;
}

// ---------------------------------------------------------------------------
// kappa sources

std::vector<KappaCoefficients> dlmo_rows(const std::vector<io::LabelledSample>& samples, int max_order, bool negate,
                                         bool combined) {
    std::vector<KappaCoefficients> rows;
    std::vector<double> pooled;
    for (const auto& s : samples) {
        rows.push_back(kappa_from_dlmo_hours(s.hours, max_order, negate, s.label));
        pooled.insert(pooled.end(), s.hours.begin(), s.hours.end());
    }
    if (combined && samples.size() > 1) {
        rows.push_back(kappa_from_dlmo_hours(pooled, max_order, negate, std::string(kCombinedLabel)));
    }
    return rows;
}

KappaCoefficients conservative_over_studies(const std::vector<KappaCoefficients>& rows) {
    std::vector<KappaCoefficients> studies;
    for (const auto& r : rows) {
        if (r.source_label != kCombinedLabel) studies.push_back(r);
    }
    if (studies.empty()) throw DataError("no study rows to take the conservative minimum over");
    return conservative_minimum(studies);
}

// A kappa table (optionally picking one row) or a DLMO file / directory.
KappaCoefficients load_kappa_source(const std::string& source, const std::string& row, bool negate, int order) {
    const fs::path path(source);
    const int max_order = std::max(order, kDefaultKappaOrder);
    if (fs::is_directory(path)) {
        const auto rows = dlmo_rows(io::load_dlmo_directory(path), max_order, negate, false);
        if (row.empty() || row == "min") return conservative_over_studies(rows);
        for (const auto& r : rows) {
            if (r.source_label == row) return r;
        }
        throw DataError("no DLMO file named '" + row + "' in " + source);
    }
    if (!fs::exists(path)) throw DataError("kappa source not found: " + source);
    if (!io::looks_like_kappa_table(path)) {
        return kappa_from_dlmo_hours(io::load_dlmo_csv(path), max_order, negate, path.stem().string());
    }
    const auto rows = io::load_kappa_table(path);
    if (row == "min") return conservative_over_studies(rows);
    if (row.empty()) {
        if (rows.size() == 1) return rows.front();
        throw std::invalid_argument(source + " has " + std::to_string(rows.size()) +
                                    " rows; choose one with --kappa-row (or 'min')");
    }
    for (const auto& r : rows) {
        if (r.source_label == row) return r;
    }
    throw DataError("kappa table " + source + " has no row '" + row + "'");
}

// ---------------------------------------------------------------------------
// per-gene panels

struct GenePanel {
    std::string id;
    std::vector<double> angles;
    std::vector<double> responses;
};

std::vector<GenePanel> load_panels(const GeneOptions& opt) {
    io::ExpressionLoadOptions load;
    load.require_ict = opt.time == TimeAxis::ict;
    load.drop_genes_with_missing = opt.drop_missing_genes;
    const auto ds = io::load_expression_csv(opt.expression, load);

    std::optional<std::set<std::string>> keep;
    if (!opt.genes.empty()) {
        const auto list = io::load_gene_list(opt.genes);
        keep.emplace(list.begin(), list.end());
    }

    std::vector<GenePanel> panels;
    for (std::size_t g = 0; g < ds.gene_count(); ++g) {
        if (keep && !keep->contains(ds.gene_ids[g])) continue;
        GenePanel p;
        p.id = ds.gene_ids[g];
        const auto row = ds.row(g);
        for (std::size_t s = 0; s < ds.sample_count(); ++s) {
            if (ds.is_missing(g, s)) continue;
            const double hours = opt.time == TimeAxis::zt ? ds.samples[s].zt_hours : *ds.samples[s].ict_hours;
            p.angles.push_back(hours_to_radians(hours));
            p.responses.push_back(row[s]);
        }
        panels.push_back(std::move(p));
    }
    return panels;
}

struct GeneModel {
    std::optional<KappaCoefficients> kappa;  // empty: naive
    int order = 0;
};

GeneModel gene_model(const GeneOptions& opt) {
    GeneModel m;
    if (opt.kappa.empty()) return m;
    if (opt.order < 0) throw std::invalid_argument("--order must be >= 0");
    m.kappa = load_kappa_source(opt.kappa, opt.kappa_row, opt.negate, opt.order);
    if (opt.order > m.kappa->max_order()) {
        throw std::invalid_argument("--order " + std::to_string(opt.order) + " exceeds the kappa table's order " +
                                    std::to_string(m.kappa->max_order()));
    }
    m.order = opt.order;
    return m;
}

std::string time_label(TimeAxis t) { return t == TimeAxis::zt ? "zt" : "ict"; }

// ---------------------------------------------------------------------------
// simulation output

void write_trials(std::ostream& out, const ScenarioConfig& cfg, const std::vector<TrialReport>& reports) {
    out << "scenario,n,trial,framework,truncation_order,status,theta0_error,amp_rel_error,phase_error,"
           "score_diff_over_n,message\n";
    for (const auto& r : reports) {
        for (const auto f : {Framework::corrected, Framework::naive}) {
            const auto& m = f == Framework::corrected ? r.corrected : r.naive;
            out << cfg.scenario_id << ',' << cfg.n << ',' << r.trial << ',' << to_string(f) << ','
                << (f == Framework::corrected ? cfg.truncation_order : 0) << ',' << (m.ok ? "ok" : "failed") << ',';
            if (m.ok) {
                out << format_double(m.theta0_error) << ',' << format_double(m.amp_rel_error) << ','
                    << format_double(m.phase_error) << ',' << format_double(m.score_diff_over_n) << ',';
            } else {
                out << ",,,,";
            }
            std::string msg = m.failure;
            std::replace(msg.begin(), msg.end(), ',', ';');
            out << msg << '\n';
        }
    }
}

constexpr Metric kMetrics[] = {Metric::theta0_error, Metric::amp_rel_error, Metric::phase_error,
                               Metric::score_diff_over_n};

void write_summary_header(std::ostream& out) {
    out << "scenario,n,trials,framework,metric,count,failed,mean,median,sd,abs_mean,abs_median,abs_sd,q25,q75\n";
}

void write_summary_rows(std::ostream& out, const ScenarioConfig& cfg, const std::vector<TrialReport>& reports) {
    for (const auto f : {Framework::corrected, Framework::naive}) {
        for (const auto metric : kMetrics) {
            const auto values = collect(reports, f, metric);
            const auto s = summarize(values);
            out << cfg.scenario_id << ',' << cfg.n << ',' << cfg.trials << ',' << to_string(f) << ','
                << to_string(metric) << ',' << s.count << ',' << (reports.size() - s.count) << ','
                << format_double(s.mean) << ',' << format_double(s.median) << ',' << format_double(s.sd) << ','
                << format_double(s.abs_mean) << ',' << format_double(s.abs_median) << ','
                << format_double(s.abs_sd) << ',' << format_double(s.q25) << ',' << format_double(s.q75) << '\n';
        }
    }
}

void print_summary(const ScenarioConfig& cfg, const std::vector<TrialReport>& reports) {
    std::cout << "scenario " << cfg.scenario_id << ", n = " << cfg.n << ", " << cfg.trials
              << " trials: median (sd) [mean |error|]\n";
    std::cout << pad("framework", 10);
    for (const auto metric : kMetrics) std::cout << pad(to_string(metric), 30);
    std::cout << '\n';
    for (const auto f : {Framework::corrected, Framework::naive}) {
        std::cout << pad(to_string(f), 10);
        for (const auto metric : kMetrics) {
            const auto s = summarize(collect(reports, f, metric));
            std::cout << pad(fixed3(s.median) + " (" + fixed3(s.sd) + ") [" + fixed3(s.abs_mean) + "]", 30);
        }
        std::cout << '\n';
    }
}

std::string scenario_stem(const SimulateOptions& opt, const ScenarioConfig& cfg) {
    if (!opt.prefix.empty()) return opt.prefix;
    return "simulate_s" + std::to_string(cfg.scenario_id) + "_n" + std::to_string(cfg.n);
}

}  // namespace

std::vector<int> parse_order_list(const std::string& text) {
    std::vector<int> orders;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            orders.push_back(parse_int(item));
            continue;
        }
        const int lo = parse_int(std::string_view(item).substr(0, dots));
        const int hi = parse_int(std::string_view(item).substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("empty order range '" + item + "'");
        for (int k = lo; k <= hi; ++k) orders.push_back(k);
    }
    if (orders.empty()) throw std::invalid_argument("no truncation orders given");
    for (int k : orders) {
        if (k < 0 || k > kMaxKappaOrder) {
            throw std::invalid_argument("truncation orders must lie in 0.." + std::to_string(kMaxKappaOrder));
        }
    }
    return orders;
}

int run_kappa(const KappaOptions& opt, const CommonOptions& common) {
    if (opt.max_order < 1 || opt.max_order > kMaxKappaOrder) {
        throw std::invalid_argument("--max-order must lie in 1.." + std::to_string(kMaxKappaOrder));
    }
    std::vector<KappaCoefficients> rows;
    std::vector<io::LabelledSample> dlmo;
    for (const auto& input : opt.inputs) {
        const fs::path path(input);
        if (fs::is_directory(path)) {
            auto more = io::load_dlmo_directory(path);
            dlmo.insert(dlmo.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
        } else if (!fs::exists(path)) {
            throw DataError("input not found: " + input);
        } else if (io::looks_like_kappa_table(path)) {
            for (auto& r : io::load_kappa_table(path)) {
                if (r.max_order() > opt.max_order) r.values.resize(static_cast<std::size_t>(opt.max_order) + 1);
                rows.push_back(std::move(r));
            }
        } else {
            dlmo.push_back({path.stem().string(), io::load_dlmo_csv(path)});
        }
    }
    auto computed = dlmo_rows(dlmo, opt.max_order, opt.negate, opt.combined);
    rows.insert(rows.end(), computed.begin(), computed.end());
    if (opt.conservative_min) rows.push_back(conservative_over_studies(rows));

    const auto path = output_path(common.out_dir, opt.output, "kappa.csv");
    auto out = open_output(path);
    io::write_kappa_table(out, rows);

    if (!common.quiet) {
        std::size_t width = 5;
        for (const auto& r : rows) width = std::max(width, r.source_label.size());
        std::cout << pad_right("study", width) << pad("n", 6);
        for (int m = 1; m <= rows.front().max_order(); ++m) std::cout << pad("kappa_" + std::to_string(m), 12);
        std::cout << '\n';
        for (const auto& r : rows) {
            std::cout << pad_right(r.source_label, width) << pad(std::to_string(r.sample_size), 6);
            for (int m = 1; m <= r.max_order(); ++m) std::cout << pad(sci4(r[m]), 12);
            std::cout << '\n';
        }
        std::cout << "wrote " << path.string() << '\n';
    }
    return 0;
}

int run_fit(const GeneOptions& opt, const CommonOptions& common) {
    const auto model = gene_model(opt);
    const auto panels = load_panels(opt);
    const Framework framework = model.kappa ? Framework::corrected : Framework::naive;

    std::vector<io::FitRecord> records(panels.size());
    parallel_for(panels.size(), common.threads, [&](std::size_t g) {
        const auto& p = panels[g];
        auto& r = records[g];
        r.gene_id = p.id;
        r.framework = framework;
        r.n = p.angles.size();
        r.truncation_order = model.order;
        try {
            const auto fit = model.kappa ? fit_corrected(p.angles, p.responses, *model.kappa, model.order)
                                         : fit_naive(p.angles, p.responses);
            const auto score = model.kappa ? score_test(p.angles, p.responses, *model.kappa, model.order)
                                           : score_test_naive(p.angles, p.responses);
            r.ok = true;
            r.params = fit.params;
            r.sigma2 = fit.sigma2_hat;
            r.condition = fit.condition_estimate;
            r.score_over_n = score.statistic_over_n;
        } catch (const std::exception& e) {
            r.ok = false;
            r.message = e.what();
        }
    });

    const auto path = output_path(common.out_dir, opt.output,
                                  "fit_" + time_label(opt.time) + "_" + std::string(to_string(framework)) + ".csv");
    auto out = open_output(path);
    io::write_fit_table(out, records);

    if (!common.quiet) {
        const auto failed = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok; });
        std::cout << "fit " << records.size() << " genes (" << to_string(framework) << ", " << time_label(opt.time)
                  << " time";
        if (model.kappa) std::cout << ", order " << model.order << ", kappa " << model.kappa->source_label;
        std::cout << "): " << failed << " failed\nwrote " << path.string() << '\n';
    }
    return 0;
}

int run_test(const GeneOptions& opt, const CommonOptions& common) {
    const auto model = gene_model(opt);
    const auto panels = load_panels(opt);

    struct Row {
        bool ok = false;
        std::size_t n = 0;
        TestResult wald, score;
        std::string message;
    };
    std::vector<Row> rows(panels.size());
    parallel_for(panels.size(), common.threads, [&](std::size_t g) {
        const auto& p = panels[g];
        auto& r = rows[g];
        r.n = p.angles.size();
        try {
            const auto fit = model.kappa ? fit_corrected(p.angles, p.responses, *model.kappa, model.order)
                                         : fit_naive(p.angles, p.responses);
            r.wald = wald_test(p.angles, p.responses, fit);
            r.score = model.kappa ? score_test(p.angles, p.responses, *model.kappa, model.order)
                                  : score_test_naive(p.angles, p.responses);
            r.ok = true;
        } catch (const std::exception& e) {
            r.message = e.what();
        }
    });

    const std::string framework(to_string(model.kappa ? Framework::corrected : Framework::naive));
    const auto path = output_path(common.out_dir, opt.output, "test_" + time_label(opt.time) + "_" + framework + ".csv");
    auto out = open_output(path);
    out << "gene_id,status,framework,n,truncation_order,wald_statistic,wald_p_value,score_kind,score_statistic,"
           "score_over_n,score_p_value,jacobian_positive_definite,message\n";
    std::size_t significant = 0;
    for (std::size_t g = 0; g < rows.size(); ++g) {
        const auto& r = rows[g];
        std::string msg = r.message;
        std::replace(msg.begin(), msg.end(), ',', ';');
        out << panels[g].id << ',' << (r.ok ? "ok" : "failed") << ',' << framework << ',' << r.n << ','
            << model.order << ',';
        if (r.ok) {
            out << format_double(r.wald.statistic) << ',' << format_double(r.wald.p_value) << ','
                << to_string(r.score.kind) << ',' << format_double(r.score.statistic) << ','
                << format_double(r.score.statistic_over_n) << ',' << format_double(r.score.p_value) << ','
                << (r.score.jacobian_positive_definite ? 1 : 0) << ',';
            if (r.score.p_value < 0.05) ++significant;
        } else {
            out << ",,,,,,,";
        }
        out << msg << '\n';
    }
    if (!common.quiet) {
        std::cout << "tested " << rows.size() << " genes (" << framework << "): " << significant
                  << " with score p < 0.05 (unadjusted)\nwrote " << path.string() << '\n';
    }
    return 0;
}

int run_simulate(const SimulateOptions& opt, const CommonOptions& common) {
    if (opt.study) {
        // full grid: every scenario at every sample size, one summary file
        const auto path = output_path(common.out_dir, opt.prefix.empty() ? "" : opt.prefix + "_summary.csv",
                                      "simulate_study_summary.csv");
        auto out = open_output(path);
        write_summary_header(out);
        for (const std::size_t n : opt.study_sizes) {
            for (int id = 1; id <= 8; ++id) {
                auto cfg = scenario_preset(id, n, opt.trials, opt.seed);
                if (opt.order) cfg.truncation_order = *opt.order;
                const auto reports = run_scenario(cfg, common.threads);
                write_summary_rows(out, cfg, reports);
                if (!common.quiet) print_summary(cfg, reports);
            }
        }
        if (!common.quiet) std::cout << "wrote " << path.string() << '\n';
        return 0;
    }

    ScenarioConfig cfg = opt.scenario_config.empty() ? scenario_preset(opt.scenario, opt.n, opt.trials, opt.seed)
                                                     : load_scenario_config(opt.scenario_config);
    if (opt.order) cfg.truncation_order = *opt.order;
    validate(cfg);
    const std::string stem = scenario_stem(opt, cfg);

    if (!opt.sweep.empty()) {
        const auto orders = parse_order_list(opt.sweep);
        const auto sweep = truncation_sweep(cfg, orders, common.threads);
        const auto path = common.out_dir / (stem + "_sweep.csv");
        auto out = open_output(path);
        out << "scenario,n,order,trial,status,amp_rel_error,phase_error\n";
        for (std::size_t k = 0; k < orders.size(); ++k) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                out << cfg.scenario_id << ',' << cfg.n << ',' << orders[k] << ',' << t << ',';
                if (sweep.failed[k][t]) {
                    out << "failed,,\n";
                } else {
                    out << "ok," << format_double(sweep.amp_rel_error[k][t]) << ','
                        << format_double(sweep.phase_error[k][t]) << '\n';
                }
            }
        }
        const auto summary_path = common.out_dir / (stem + "_sweep_summary.csv");
        auto summary = open_output(summary_path);
        summary << "scenario,n,order,metric,count,median,q25,q75,iqr,mean,sd\n";
        if (!common.quiet) {
            std::cout << "truncation sweep, scenario " << cfg.scenario_id << ", n = " << cfg.n << ", " << cfg.trials
                      << " trials\n"
                      << pad("order", 6) << pad("amp median", 12) << pad("amp IQR", 10) << pad("phase median", 14)
                      << pad("phase IQR", 10) << pad("failed", 8) << '\n';
        }
        for (std::size_t k = 0; k < orders.size(); ++k) {
            const auto a = summarize(sweep.amp_rel_error[k]);
            const auto p = summarize(sweep.phase_error[k]);
            for (const auto& [name, s] : {std::pair{"amp_rel_error", a}, std::pair{"phase_error", p}}) {
                summary << cfg.scenario_id << ',' << cfg.n << ',' << orders[k] << ',' << name << ',' << s.count
                        << ',' << format_double(s.median) << ',' << format_double(s.q25) << ','
                        << format_double(s.q75) << ',' << format_double(s.q75 - s.q25) << ','
                        << format_double(s.mean) << ',' << format_double(s.sd) << '\n';
            }
            if (!common.quiet) {
                std::cout << pad(std::to_string(orders[k]), 6) << pad(fixed3(a.median), 12)
                          << pad(fixed3(a.q75 - a.q25), 10) << pad(fixed3(p.median), 14)
                          << pad(fixed3(p.q75 - p.q25), 10) << pad(std::to_string(cfg.trials - a.count), 8) << '\n';
            }
        }
        if (!common.quiet) std::cout << "wrote " << path.string() << " and " << summary_path.string() << '\n';
        return 0;
    }

    const auto reports = run_scenario(cfg, common.threads);
    const auto trials_path = common.out_dir / (stem + "_trials.csv");
    const auto summary_path = common.out_dir / (stem + "_summary.csv");
    {
        auto out = open_output(trials_path);
        write_trials(out, cfg, reports);
    }
    {
        auto out = open_output(summary_path);
        write_summary_header(out);
        write_summary_rows(out, cfg, reports);
    }
    if (!common.quiet) {
        print_summary(cfg, reports);
        std::cout << "wrote " << trials_path.string() << " and " << summary_path.string() << '\n';
    }
    return 0;
}

int run_assess(const AssessOptions& opt, const CommonOptions& common) {
    if (opt.fit_files.size() < 2) throw std::invalid_argument("assess needs at least one ZT fit table and an ICT fit table");

    std::optional<std::set<std::string>> keep;
    if (!opt.genes.empty()) {
        const auto list = io::load_gene_list(opt.genes);
        keep.emplace(list.begin(), list.end());
    }
    auto load = [&](const std::string& path) {
        std::vector<GeneFit> fits;
        std::optional<Framework> framework;
        for (const auto& r : io::load_fit_table(path)) {
            if (framework && *framework != r.framework) throw DataError(path + ": mixes frameworks");
            framework = r.framework;
            if (keep && !keep->contains(r.gene_id)) continue;
            fits.push_back(io::to_gene_fit(r));
        }
        if (!framework) throw DataError(path + ": fit table has no rows");
        return std::pair{fits, *framework};
    };

    const auto [ict, ict_framework] = load(opt.fit_files.back());
    (void)ict_framework;
    std::vector<AssessmentReport> reports;
    for (std::size_t i = 0; i + 1 < opt.fit_files.size(); ++i) {
        const auto [zt, framework] = load(opt.fit_files[i]);
        auto more = assess_dataset(zt, ict, framework);
        reports.insert(reports.end(), more.begin(), more.end());
    }

    const auto path = output_path(common.out_dir, opt.output, "assess.csv");
    auto out = open_output(path);
    out << "framework,quantity,beta,r_squared,n_genes,n_excluded\n";
    for (const auto& r : reports) {
        out << to_string(r.framework) << ',' << to_string(r.quantity) << ',' << format_double(r.beta) << ','
            << format_double(r.r_squared) << ',' << r.n_genes << ',' << r.n_excluded << '\n';
    }
    if (!common.quiet) {
        std::cout << pad("framework", 10) << pad("quantity", 14) << pad("beta", 9) << pad("R^2", 9) << pad("genes", 7)
                  << '\n';
        for (const auto& r : reports) {
            std::cout << pad(to_string(r.framework), 10) << pad(to_string(r.quantity), 14) << pad(fixed3(r.beta), 9)
                      << pad(fixed3(r.r_squared), 9) << pad(std::to_string(r.n_genes), 7) << '\n';
        }
        std::cout << "wrote " << path.string() << '\n';
    }
    return 0;
}

}  // namespace cosinor::cli
