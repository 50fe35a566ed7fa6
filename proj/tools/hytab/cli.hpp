#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hytab::cli {

enum class Format { Text, Json };

// Exit codes of run().
inline constexpr int kProvable = 0;
inline constexpr int kNotProvable = 1;
inline constexpr int kBudget = 2;
inline constexpr int kUsage = 3;
inline constexpr int kInternal = 4;

struct RunConfig {
  std::string calculus = "k";
  // Rule toggles such as "+Trs,-D"; only with experimental.
  std::string rules;
  bool experimental = false;

  std::optional<std::string> formula;
  std::optional<std::string> file;
  std::optional<std::string> batch;
  std::vector<std::string> nominals;

  bool proof = false;
  bool countermodel = false;
  bool dump_loopcheck = false;
  std::optional<std::string> certificate_path;
  std::optional<std::string> dot_path;
  std::optional<std::size_t> truncate;
  Format format = Format::Text;
  bool unicode = false;

  std::uint64_t budget = 50'000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> oracle;
  unsigned jobs = 1;
};

// Returns the exit code: 0 provable, 1 not provable (countermodel certified),
// 2 budget exceeded, 3 usage or parse error, 4 failed self-check.
// Batch mode returns 0 unless some line failed to parse (3) or a self-check failed (4).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hytab::cli
