#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cogrowth::cli {

/// Hex SHA-256 of a file's bytes; throws IoError if unreadable.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_text(const std::string& text);

/// Everything needed to rerun a command and check its outputs.
class RunManifest {
 public:
  RunManifest(std::string subcommand, std::vector<std::string> argv);

  void set_parameters(nlohmann::json params) { params_ = std::move(params); }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  void add_seed(std::uint64_t seed, std::uint64_t stream);
  void set_metric(const std::string& name, double value) { metrics_[name] = value; }

  const std::vector<std::string>& argv() const { return argv_; }

  /// Finalizes wall-clock time and writes the manifest as JSON.
  void write(const std::filesystem::path& path);

 private:
  std::string subcommand_;
  std::vector<std::string> argv_;
  nlohmann::json params_ = nlohmann::json::object();
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json outputs_ = nlohmann::json::array();
  nlohmann::json seeds_ = nlohmann::json::array();
  nlohmann::json metrics_ = nlohmann::json::object();
  std::chrono::steady_clock::time_point start_;
};

/// The argv recorded in a manifest file.
std::vector<std::string> manifest_argv(const std::filesystem::path& path);

}  // namespace cogrowth::cli
