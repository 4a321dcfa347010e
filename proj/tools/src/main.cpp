#include "commands.hpp"

#include "cosinor/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace cosinor::cli;

namespace {

// 0 success, 1 usage, 2 data, 3 numerical
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kNumericalError = 3;

void add_gene_options(CLI::App* cmd, GeneOptions& opt) {
    cmd->add_option("expression", opt.expression, "Expression matrix CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--time", opt.time, "Covariate: zt (observed clock time) or ict (internal time)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, TimeAxis>{{"zt", TimeAxis::zt}, {"ict", TimeAxis::ict}},
                                            CLI::ignore_case));
    cmd->add_option("--kappa", opt.kappa,
                    "Kappa table, DLMO file or DLMO directory; enables the corrected estimator");
    cmd->add_option("--kappa-row", opt.kappa_row, "Row label to use from a multi-row kappa source, or 'min'");
    cmd->add_flag("--negate", opt.negate, "Negate DLMO errors (Berkson use)");
    cmd->add_option("--order", opt.order, "Truncation order of the corrected series")->capture_default_str();
    cmd->add_option("--genes", opt.genes, "Only genes listed in this file")->check(CLI::ExistingFile);
    cmd->add_flag("--drop-missing-genes", opt.drop_missing_genes, "Drop genes with any missing value");
    cmd->add_option("-o,--output", opt.output, "Output CSV (relative paths resolve in --out-dir)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cosinor regression with a mismeasured time covariate"};
    app.set_config("--config", "", "INI/TOML file supplying any option ([subcommand] sections)");
    app.require_subcommand(1);

    CommonOptions common;
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory for output files")
        ->envname("COSINOR_OUTPUT_DIR")
        ->capture_default_str();
    app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("-q,--quiet", common.quiet, "Suppress the human-readable summary");

    KappaOptions kappa;
    auto* kappa_cmd = app.add_subcommand("kappa", "Estimate kappa coefficients from DLMO data");
    kappa_cmd->add_option("inputs", kappa.inputs, "DLMO files, directories of them, or kappa tables")
        ->required()
        ->check(CLI::ExistingPath);
    kappa_cmd->add_option("--max-order", kappa.max_order, "Highest derivative order")->capture_default_str();
    kappa_cmd->add_flag("--conservative-min", kappa.conservative_min,
                        "Append the per-order least-magnitude row across studies");
    kappa_cmd->add_flag("--negate", kappa.negate, "Negate errors (Berkson use)");
    kappa_cmd->add_flag("--combined", kappa.combined, "Append a row from the pooled DLMO samples");
    kappa_cmd->add_option("-o,--output", kappa.output, "Output CSV (relative paths resolve in --out-dir)");

    GeneOptions fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit the cosinor model to every gene");
    add_gene_options(fit_cmd, fit);

    GeneOptions test;
    auto* test_cmd = app.add_subcommand("test", "Wald and score tests of no rhythm for every gene");
    add_gene_options(test_cmd, test);

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the measurement-error simulation study");
    sim_cmd->add_option("--scenario", sim.scenario, "Scenario 1-8")->check(CLI::Range(1, 8))->capture_default_str();
    sim_cmd->add_option("--n", sim.n, "Observations per trial")->capture_default_str();
    sim_cmd->add_option("--trials", sim.trials, "Number of trials")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
    sim_cmd->add_option("--order", sim.order, "Truncation order for the corrected estimator");
    sim_cmd->add_option("--scenario-config", sim.scenario_config, "Scenario INI file (overrides --scenario/--n)")
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("--sweep", sim.sweep, "Truncation orders to sweep, e.g. 0..11");
    sim_cmd->add_flag("--study", sim.study, "All scenarios at every --study-n size (long running)");
    sim_cmd->add_option("--study-n", sim.study_sizes, "Sample sizes for --study")->capture_default_str();
    sim_cmd->add_option("--prefix", sim.prefix, "File name stem for outputs");

    AssessOptions assess;
    auto* assess_cmd = app.add_subcommand("assess", "Origin regression of ICT-based on ZT-based estimates");
    assess_cmd->add_option("fits", assess.fit_files, "ZT fit tables (one per framework), then the ICT fit table")
        ->required()
        ->expected(2, -1)
        ->check(CLI::ExistingFile);
    assess_cmd->add_option("--genes", assess.genes, "Only genes listed in this file")->check(CLI::ExistingFile);
    assess_cmd->add_option("-o,--output", assess.output, "Output CSV (relative paths resolve in --out-dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }
    common.out_dir = out_dir;

    try {
        if (*kappa_cmd) return run_kappa(kappa, common);
        if (*fit_cmd) return run_fit(fit, common);
        if (*test_cmd) return run_test(test, common);
        if (*sim_cmd) return run_simulate(sim, common);
        if (*assess_cmd) return run_assess(assess, common);
    } catch (const cosinor::DataError& e) {
        std::cerr << "cosinor: data error: " << e.what() << '\n';
        return kDataError;
    } catch (const cosinor::NumericalError& e) {
        std::cerr << "cosinor: numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "cosinor: invalid argument: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "cosinor: error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}
