#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logwalk/graph.hpp"

namespace logwalk {

/// Whole file as text. Throws ParseError when it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

WeightedGraph load_graph_file(const std::filesystem::path& path, const LoadOptions& options = {});

/// One decimal per non-blank line; '#' lines are comments.
std::vector<double> parse_vector(std::string_view text);
std::vector<double> read_vector_file(const std::filesystem::path& path);

/// One value per line with 17 significant digits (round-trips exactly).
std::string format_vector(std::span<const double> values);
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace logwalk
