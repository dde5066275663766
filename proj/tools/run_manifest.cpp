#include "run_manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sphcover::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

RunManifest::RunManifest(std::string command, std::vector<std::string> arguments)
    : command_(std::move(command)), arguments_(std::move(arguments)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::input(const fs::path& path) { inputs_[path.string()] = sha256_hex(read_file(path)); }

void RunManifest::output(const fs::path& path, const std::string& content) {
  write_atomic(path, content);
  outputs_[path.string()] = sha256_hex(content);
  written_.push_back(path);
}

nlohmann::json RunManifest::to_json() const {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return {{"command", command_},
          {"arguments", arguments_},
          {"seeds", seeds_},
          {"inputs", inputs_},
          {"artifacts", outputs_},
          {"notes", notes_},
          {"tool_version", SPHCOVER_VERSION},
          {"exit_code", exit_code_},
          {"wall_time_s", wall}};
}

void RunManifest::finish(int exit_code) {
  exit_code_ = exit_code;
  if (written_.empty()) return;
  fs::path m = written_.front();
  m += ".manifest.json";
  write_atomic(m, to_json().dump(2) + "\n");
}

}  // namespace sphcover::cli
