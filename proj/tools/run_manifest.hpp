#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace sphcover::cli {

/// Writes through a sibling temp file and renames over the target, so readers
/// never see a half-written artifact.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

/// What a run needs to be repeated: argv, seeds, input/output digests.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> arguments);

  void seed(const std::string& name, std::uint64_t value) { seeds_[name] = value; }
  void input(const std::filesystem::path& path);
  /// Writes the artifact atomically and records its digest.
  void output(const std::filesystem::path& path, const std::string& content);
  void note(const std::string& key, nlohmann::json value) { notes_[key] = std::move(value); }

  nlohmann::json to_json() const;
  /// Writes `<first output>.manifest.json` unless there were no outputs.
  void finish(int exit_code);

 private:
  std::string command_;
  std::vector<std::string> arguments_;
  std::map<std::string, std::uint64_t> seeds_;
  nlohmann::json inputs_ = nlohmann::json::object();
  nlohmann::json outputs_ = nlohmann::json::object();
  nlohmann::json notes_ = nlohmann::json::object();
  std::vector<std::filesystem::path> written_;
  std::chrono::steady_clock::time_point start_;
  int exit_code_ = 0;
};

}  // namespace sphcover::cli
