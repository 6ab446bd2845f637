#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cogrowth {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::runtime_error if absent.
  std::size_t column(std::string_view name) const;
};

/// Comma-separated, no quoting. Lines starting with '#' are skipped.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

/// Six significant digits in scientific notation.
std::string format_sci(double value);
/// Round-trippable decimal.
std::string format_exact(double value);

}  // namespace cogrowth
