#include "output.hpp"

#include "cosinor/errors.hpp"

#include <cmath>
#include <cstdio>

namespace cosinor::cli {

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw DataError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

std::filesystem::path output_path(const std::filesystem::path& out_dir, const std::string& explicit_path,
                                  std::string_view default_name) {
    if (!explicit_path.empty()) {
        const std::filesystem::path p(explicit_path);
        return p.is_absolute() ? p : out_dir / p;
    }
    return out_dir / std::string(default_name);
}

std::string fixed3(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    // "-0.000" reads as a sign that is not there
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

std::string sci4(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.insert(0, width - out.size(), ' ');
    return out;
}

std::string pad_right(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
}

}  // namespace cosinor::cli
