#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cogrowth/walker.hpp"

namespace cogrowth {

/// Histogram CSV: n, W_n, x_1..x_M, one row per length up to the longest
/// visited. Byte-identical for identical records.
void write_record_csv(const WalkRecord& record, std::ostream& out);

/// Sidecar: params, presentation, relator acceptance, proposal stats, status.
nlohmann::json record_sidecar(const WalkRecord& record, bool include_runtime = true);

/// Writes <base>.csv and <base>.json.
void save_record(const WalkRecord& record, const std::filesystem::path& base);

/// Reads a histogram CSV and the .json sidecar next to it.
WalkRecord load_record(const std::filesystem::path& csv_path);

nlohmann::json params_to_json(const WalkParams& p);
WalkParams params_from_json(const nlohmann::json& j);

}  // namespace cogrowth
