#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldint::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericFailure = 1;
inline constexpr int kUsage = 2;

/// Files produced by one run; removed again if the run fails.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Registers and returns dir/name.
  std::filesystem::path claim(const std::string& name);
  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::filesystem::path>& files() const { return files_; }
  void discard();

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
};

/// Thrown for bad parameter combinations found after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run(int argc, char** argv);

}  // namespace ldint::cli
