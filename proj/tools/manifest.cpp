#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "commands.hpp"

namespace cogrowth::cli {

using nlohmann::json;

namespace {

std::string hex_digest(const void* data, std::size_t size) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data, size, md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return out.str();
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

std::string sha256_text(const std::string& text) { return hex_digest(text.data(), text.size()); }

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_text(buf.str());
}

RunManifest::RunManifest(std::string subcommand, std::vector<std::string> argv)
    : subcommand_(std::move(subcommand)), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs_.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void RunManifest::add_seed(std::uint64_t seed, std::uint64_t stream) {
  seeds_.push_back({{"seed", seed}, {"stream", stream}});
}

void RunManifest::write(const std::filesystem::path& path) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  metrics_["wall_seconds"] = wall;
  const json j{{"subcommand", subcommand_},
               {"argv", argv_},
               {"parameters", params_},
               {"inputs", inputs_},
               {"outputs", outputs_},
               {"seeds", seeds_},
               {"tool_version", COGROWTH_VERSION},
               {"compiler", __VERSION__},
               {"finished_at", utc_now()},
               {"metrics", metrics_}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::string> manifest_argv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path.string() + ": not a run manifest (" + e.what() + ")");
  }
  if (!j.contains("argv")) throw UsageError(path.string() + ": manifest has no argv");
  return j.at("argv").get<std::vector<std::string>>();
}

}  // namespace cogrowth::cli
