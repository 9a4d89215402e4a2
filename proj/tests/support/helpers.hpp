#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

namespace support {

inline std::string data_path(const std::string& name) {
  return std::string(NETPLAN_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// Self-deleting file seeded with fixed content, for loader/CLI tests.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".csv") {
    static std::atomic<int> counter{0};
    const auto name = "netplan_test_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter.fetch_add(1)) + suffix;
    path_ = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Scratch path that cleans up after itself (for CLI output files).
class TempPath {
 public:
  explicit TempPath(const std::string& suffix) {
    static std::atomic<int> counter{0};
    const auto name = "netplan_out_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter.fetch_add(1)) + suffix;
    path_ = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempPath() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempPath(const TempPath&) = delete;
  TempPath& operator=(const TempPath&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs the built CLI with the given argument string, capturing both streams.
inline CliResult run_cli(const std::string& args) {
  const TempPath out_path(".out");
  const TempPath err_path(".err");
  const std::string command = std::string(NETPLAN_CLI_PATH) + " " + args + " > " +
                              out_path.path() + " 2> " + err_path.path();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path.path());
  result.err = read_file(err_path.path());
  return result;
}

}  // namespace support
