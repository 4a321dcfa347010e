#pragma once

// Delimited-text formats read and written by the command-line tool.
//
// Expression matrix:
//   gene_id,S1,S2,...        header: sample ids
//   zt_hours,0,4,...         required for every sample
//   ict_hours,0.5,,...       blanks allowed
//   GENE_A,5.1,6.0,...       one row per gene, blank = missing
//
// DLMO file: one header cell, then one clock-hour value per line.
//
// Kappa table: study,n,kappa_1,...,kappa_M (kappa_0 = 1 is implied).
//
// Fit table: see kFitTableHeader.
//
// Parse failures throw DataError with "path:row:col" locations (1-based).

#include "cosinor/assess.hpp"
#include "cosinor/estimation.hpp"
#include "cosinor/kappa.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cosinor::io {

// Splits one CSV record; double-quoted fields may contain commas and "".
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

// Shortest representation that round-trips exactly.
[[nodiscard]] std::string format_double(double v);

struct SampleInfo {
    std::string id;
    double zt_hours = 0.0;
    std::optional<double> ict_hours;
};

struct ExpressionDataset {
    std::vector<std::string> gene_ids;
    std::vector<SampleInfo> samples;
    std::vector<double> values;          // genes x samples, row-major; NaN when missing
    std::vector<std::uint8_t> missing;   // same layout as values
    std::size_t dropped_samples = 0;
    std::size_t dropped_genes = 0;

    [[nodiscard]] std::size_t gene_count() const noexcept { return gene_ids.size(); }
    [[nodiscard]] std::size_t sample_count() const noexcept { return samples.size(); }
    [[nodiscard]] std::span<const double> row(std::size_t gene) const {
        return std::span<const double>(values).subspan(gene * samples.size(), samples.size());
    }
    [[nodiscard]] bool is_missing(std::size_t gene, std::size_t sample) const {
        return missing[gene * samples.size() + sample] != 0;
    }
};

struct ExpressionLoadOptions {
    bool require_ict = false;              // drop samples without ict_hours
    bool drop_genes_with_missing = false;  // drop genes with any blank cell
};

[[nodiscard]] ExpressionDataset parse_expression_csv(std::istream& in, const ExpressionLoadOptions& options,
                                                     const std::string& source = "<input>");
[[nodiscard]] ExpressionDataset load_expression_csv(const std::filesystem::path& path,
                                                    const ExpressionLoadOptions& options = {});

// Hour values; conversion to error angles happens in kappa_from_dlmo_hours.
[[nodiscard]] std::vector<double> parse_dlmo_csv(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] std::vector<double> load_dlmo_csv(const std::filesystem::path& path);

struct LabelledSample {
    std::string label;  // file stem
    std::vector<double> hours;
};

// Every *.csv in `dir`, ordered by file name.
[[nodiscard]] std::vector<LabelledSample> load_dlmo_directory(const std::filesystem::path& dir);

// True when the first header cell is "study".
[[nodiscard]] bool looks_like_kappa_table(const std::filesystem::path& path);

void write_kappa_table(std::ostream& out, std::span<const KappaCoefficients> rows);
[[nodiscard]] std::vector<KappaCoefficients> parse_kappa_table(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] std::vector<KappaCoefficients> load_kappa_table(const std::filesystem::path& path);

inline constexpr std::string_view kFitTableHeader =
    "gene_id,status,framework,n,truncation_order,theta0,theta1,theta2,amplitude,phase,"
    "sigma2,condition,score_over_n,amplitude_zero,message";

struct FitRecord {
    std::string gene_id;
    bool ok = false;
    Framework framework = Framework::naive;
    std::size_t n = 0;
    int truncation_order = 0;
    CosinorParams params;
    double sigma2 = 0.0;
    double condition = 0.0;
    double score_over_n = 0.0;
    std::string message;  // failure reason
};

void write_fit_table(std::ostream& out, std::span<const FitRecord> rows);
[[nodiscard]] std::vector<FitRecord> parse_fit_table(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] std::vector<FitRecord> load_fit_table(const std::filesystem::path& path);

[[nodiscard]] GeneFit to_gene_fit(const FitRecord& record);

// One gene id per line; blank lines and lines starting with '#' ignored.
[[nodiscard]] std::vector<std::string> load_gene_list(const std::filesystem::path& path);

}  // namespace cosinor::io
