#pragma once

#include "cosinor/simulation.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace cosinor::cli {

// Opens `path` for writing, creating parent directories. Throws DataError.
[[nodiscard]] std::ofstream open_output(const std::filesystem::path& path);

// Resolves an explicit --output value against the output directory, falling
// back to `default_name` inside it.
[[nodiscard]] std::filesystem::path output_path(const std::filesystem::path& out_dir, const std::string& explicit_path,
                                                std::string_view default_name);

// Three decimals, as in the human-readable tables.
[[nodiscard]] std::string fixed3(double v);
// Four significant figures in scientific notation.
[[nodiscard]] std::string sci4(double v);

// Right-aligned (pad) and left-aligned (pad_right) fixed-width cells.
[[nodiscard]] std::string pad(std::string_view s, std::size_t width);
[[nodiscard]] std::string pad_right(std::string_view s, std::size_t width);

}  // namespace cosinor::cli
