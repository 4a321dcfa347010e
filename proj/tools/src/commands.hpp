#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cosinor::cli {

struct CommonOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 0;
    bool quiet = false;
};

struct KappaOptions {
    std::vector<std::string> inputs;
    int max_order = 8;
    bool conservative_min = false;
    bool negate = false;
    bool combined = false;
    std::string output;
};

enum class TimeAxis { zt, ict };

struct GeneOptions {
    std::string expression;
    TimeAxis time = TimeAxis::zt;
    std::string kappa;
    std::string kappa_row;
    bool negate = false;
    int order = 2;
    std::string genes;
    bool drop_missing_genes = false;
    std::string output;
};

struct SimulateOptions {
    int scenario = 1;
    std::size_t n = 100;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    std::optional<int> order;
    std::string scenario_config;
    std::string sweep;
    bool study = false;
    std::vector<std::size_t> study_sizes{100, 400, 1600};
    std::string prefix;
};

struct AssessOptions {
    std::vector<std::string> fit_files;  // ZT fit tables..., then the ICT fit table
    std::string genes;
    std::string output;
};

int run_kappa(const KappaOptions& opt, const CommonOptions& common);
int run_fit(const GeneOptions& opt, const CommonOptions& common);
int run_test(const GeneOptions& opt, const CommonOptions& common);
int run_simulate(const SimulateOptions& opt, const CommonOptions& common);
int run_assess(const AssessOptions& opt, const CommonOptions& common);

// "0..11", "0,2,5" or "0..3,8"
[[nodiscard]] std::vector<int> parse_order_list(const std::string& text);

}  // namespace cosinor::cli
