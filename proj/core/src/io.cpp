#include "cosinor/io.hpp"

#include "cosinor/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <unordered_set>

namespace cosinor::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string location(const std::string& source, std::size_t row, std::size_t col) {
    return source + ":" + std::to_string(row) + ":" + std::to_string(col);
}

std::optional<double> try_parse_double(std::string_view cell) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
    return v;
}

double parse_double(std::string_view cell, const std::string& source, std::size_t row, std::size_t col) {
    const auto v = try_parse_double(cell);
    if (!v) {
        throw DataError(location(source, row, col) + ": non-numeric cell '" + std::string(trim(cell)) + "'");
    }
    return *v;
}

// Reads the next non-blank line; returns false at EOF. `row` tracks the
// 1-based physical line number.
bool next_record(std::istream& in, std::string& line, std::size_t& row) {
    while (std::getline(in, line)) {
        ++row;
        if (!trim(line).empty()) return true;
    }
    return false;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back(trim(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.emplace_back(trim(cell));
    return cells;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// expression matrix

ExpressionDataset parse_expression_csv(std::istream& in, const ExpressionLoadOptions& options,
                                       const std::string& source) {
    std::string line;
    std::size_t row = 0;
    if (!next_record(in, line, row)) throw DataError(source + ": empty expression file");
    const auto header = split_csv_line(line);
    if (header.size() < 2) throw DataError(location(source, row, 1) + ": header needs at least one sample id");
    const std::size_t n_samples = header.size() - 1;

    auto read_meta = [&](std::string_view name, bool allow_blank) {
        if (!next_record(in, line, row)) throw DataError(source + ": missing '" + std::string(name) + "' row");
        const auto cells = split_csv_line(line);
        if (cells.front() != name) {
            throw DataError(location(source, row, 1) + ": expected '" + std::string(name) + "', found '" +
                            cells.front() + "'");
        }
        if (cells.size() != header.size()) {
            throw DataError(location(source, row, cells.size()) + ": ragged row (" + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(header.size()) + ")");
        }
        std::vector<std::optional<double>> out(n_samples);
        for (std::size_t s = 0; s < n_samples; ++s) {
            if (cells[s + 1].empty()) {
                if (!allow_blank) {
                    throw DataError(location(source, row, s + 2) + ": " + std::string(name) + " is required");
                }
                continue;
            }
            out[s] = parse_double(cells[s + 1], source, row, s + 2);
        }
        return out;
    };
    const auto zt = read_meta("zt_hours", false);
    const auto ict = read_meta("ict_hours", true);

    std::vector<std::size_t> keep;
    std::vector<std::optional<std::size_t>> slot(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        if (!options.require_ict || ict[s].has_value()) {
            slot[s] = keep.size();
            keep.push_back(s);
        }
    }

    ExpressionDataset ds;
    ds.dropped_samples = n_samples - keep.size();
    for (std::size_t s : keep) ds.samples.push_back({header[s + 1], *zt[s], ict[s]});

    std::unordered_set<std::string> seen;
    std::vector<double> row_values(keep.size());
    std::vector<std::uint8_t> row_missing(keep.size());
    while (next_record(in, line, row)) {
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw DataError(location(source, row, cells.size()) + ": ragged row (" + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(header.size()) + ")");
        }
        const std::string& gene = cells.front();
        if (gene.empty()) throw DataError(location(source, row, 1) + ": empty gene id");
        if (!seen.insert(gene).second) throw DataError(location(source, row, 1) + ": duplicate gene id '" + gene + "'");

        bool any_missing = false;
        for (std::size_t s = 0; s < n_samples; ++s) {
            const auto& cell = cells[s + 1];
            const bool blank = cell.empty() || cell == "NA";
            const double v = blank ? kNaN : parse_double(cell, source, row, s + 2);
            if (!slot[s]) continue;
            const std::size_t k = *slot[s];
            row_values[k] = v;
            row_missing[k] = blank ? 1 : 0;
            any_missing = any_missing || blank;
        }
        if (options.drop_genes_with_missing && any_missing) {
            ++ds.dropped_genes;
            continue;
        }
        ds.gene_ids.push_back(gene);
        ds.values.insert(ds.values.end(), row_values.begin(), row_values.end());
        ds.missing.insert(ds.missing.end(), row_missing.begin(), row_missing.end());
    }
    return ds;
}

ExpressionDataset load_expression_csv(const std::filesystem::path& path, const ExpressionLoadOptions& options) {
    auto in = open_input(path);
    return parse_expression_csv(in, options, path.string());
}

// ---------------------------------------------------------------------------
// DLMO samples

std::vector<double> parse_dlmo_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t row = 0;
    if (!next_record(in, line, row)) throw DataError(source + ": empty DLMO file");
    std::vector<double> hours;
    while (next_record(in, line, row)) {
        const auto cells = split_csv_line(line);
        if (cells.size() != 1) {
            throw DataError(location(source, row, 2) + ": DLMO file must have a single column");
        }
        hours.push_back(parse_double(cells.front(), source, row, 1));
    }
    if (hours.empty()) throw DataError(source + ": DLMO file has a header but no values");
    return hours;
}

std::vector<double> load_dlmo_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_dlmo_csv(in, path.string());
}

std::vector<LabelledSample> load_dlmo_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError(dir.string() + " is not a directory");
    std::set<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.insert(entry.path());
    }
    if (files.empty()) throw DataError(dir.string() + ": no .csv files found");
    std::vector<LabelledSample> out;
    for (const auto& f : files) out.push_back({f.stem().string(), load_dlmo_csv(f)});
    return out;
}

// ---------------------------------------------------------------------------
// kappa tables

bool looks_like_kappa_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t row = 0;
    if (!in || !next_record(in, line, row)) return false;
    const auto cells = split_csv_line(line);
    return !cells.empty() && cells.front() == "study";
}

void write_kappa_table(std::ostream& out, std::span<const KappaCoefficients> rows) {
    if (rows.empty()) return;
    const int order = rows.front().max_order();
    out << "study,n";
    for (int m = 1; m <= order; ++m) out << ",kappa_" << m;
    out << '\n';
    for (const auto& k : rows) {
        if (k.max_order() != order) throw DataError("kappa table rows have mismatched orders");
        out << csv_escape(k.source_label) << ',' << k.sample_size;
        for (int m = 1; m <= order; ++m) out << ',' << format_double(k[m]);
        out << '\n';
    }
}

std::vector<KappaCoefficients> parse_kappa_table(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t row = 0;
    if (!next_record(in, line, row)) throw DataError(source + ": empty kappa table");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "study" || header[1] != "n") {
        throw DataError(location(source, row, 1) + ": kappa table header must start with 'study,n'");
    }
    const int order = static_cast<int>(header.size()) - 2;
    if (order > kMaxKappaOrder) throw DataError(location(source, row, header.size()) + ": too many kappa columns");
    for (int m = 1; m <= order; ++m) {
        if (header[static_cast<std::size_t>(m) + 1] != "kappa_" + std::to_string(m)) {
            throw DataError(location(source, row, static_cast<std::size_t>(m) + 2) + ": expected column kappa_" +
                            std::to_string(m));
        }
    }
    std::vector<KappaCoefficients> out;
    while (next_record(in, line, row)) {
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw DataError(location(source, row, cells.size()) + ": ragged row");
        }
        KappaCoefficients k = zero_kappa(order);
        k.source_label = cells[0];
        const double n = parse_double(cells[1], source, row, 2);
        if (n < 0 || n != std::floor(n)) throw DataError(location(source, row, 2) + ": n must be a count");
        k.sample_size = static_cast<std::size_t>(n);
        for (int m = 1; m <= order; ++m) {
            k.values[static_cast<std::size_t>(m)] =
                parse_double(cells[static_cast<std::size_t>(m) + 1], source, row, static_cast<std::size_t>(m) + 2);
        }
        out.push_back(std::move(k));
    }
    if (out.empty()) throw DataError(source + ": kappa table has no rows");
    return out;
}

std::vector<KappaCoefficients> load_kappa_table(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_kappa_table(in, path.string());
}

// ---------------------------------------------------------------------------
// fit tables

void write_fit_table(std::ostream& out, std::span<const FitRecord> rows) {
    out << kFitTableHeader << '\n';
    for (const auto& r : rows) {
        const auto ap = to_amplitude_phase(r.params);
        out << csv_escape(r.gene_id) << ',' << (r.ok ? "ok" : "failed") << ',' << to_string(r.framework) << ','
            << r.n << ',' << r.truncation_order << ',';
        if (r.ok) {
            out << format_double(r.params.theta0) << ',' << format_double(r.params.theta1) << ','
                << format_double(r.params.theta2) << ',' << format_double(ap.amplitude) << ','
                << format_double(ap.phase) << ',' << format_double(r.sigma2) << ',' << format_double(r.condition)
                << ',' << format_double(r.score_over_n) << ',' << (ap.amplitude == 0.0 ? 1 : 0) << ',';
        } else {
            out << ",,,,,,,,,";
        }
        out << csv_escape(r.message) << '\n';
    }
}

std::vector<FitRecord> parse_fit_table(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t row = 0;
    if (!next_record(in, line, row)) throw DataError(source + ": empty fit table");
    if (split_csv_line(line) != split_csv_line(kFitTableHeader)) {
        throw DataError(location(source, row, 1) + ": not a fit table (unexpected header)");
    }
    const std::size_t width = split_csv_line(kFitTableHeader).size();
    std::vector<FitRecord> out;
    while (next_record(in, line, row)) {
        const auto c = split_csv_line(line);
        if (c.size() != width) throw DataError(location(source, row, c.size()) + ": ragged row");
        FitRecord r;
        r.gene_id = c[0];
        if (c[1] != "ok" && c[1] != "failed") throw DataError(location(source, row, 2) + ": status must be ok|failed");
        r.ok = c[1] == "ok";
        if (c[2] == "corrected") {
            r.framework = Framework::corrected;
        } else if (c[2] == "naive") {
            r.framework = Framework::naive;
        } else {
            throw DataError(location(source, row, 3) + ": framework must be corrected|naive");
        }
        r.n = static_cast<std::size_t>(parse_double(c[3], source, row, 4));
        r.truncation_order = static_cast<int>(parse_double(c[4], source, row, 5));
        if (r.ok) {
            r.params = {parse_double(c[5], source, row, 6), parse_double(c[6], source, row, 7),
                        parse_double(c[7], source, row, 8)};
            r.sigma2 = parse_double(c[10], source, row, 11);
            r.condition = parse_double(c[11], source, row, 12);
            r.score_over_n = parse_double(c[12], source, row, 13);
        }
        r.message = c[14];
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<FitRecord> load_fit_table(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_fit_table(in, path.string());
}

GeneFit to_gene_fit(const FitRecord& record) {
    return {record.gene_id, record.ok, record.params, record.score_over_n};
}

std::vector<std::string> load_gene_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<std::string> genes;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        genes.emplace_back(t);
    }
    return genes;
}

}  // namespace cosinor::io
