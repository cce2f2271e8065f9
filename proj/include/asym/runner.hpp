#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asym {

inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;  // --assert and the verdict contradicts the expectation
inline constexpr int exit_input = 2;     // unreadable or invalid config, unsupported geometry
inline constexpr int exit_internal = 3;  // an internal consistency check failed

struct RunOptions {
  std::string command;  // porosity | epsilon | equiv | spectrum | lab | classify-line | pseudo
  std::string config_path;
  std::string out_dir = ".";
  bool assert_verdict = false;
  std::optional<long> horizon;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  int exit_code = exit_ok;
  std::string message;              // one-line summary or error text
  std::vector<std::string> files;   // written, in order
};

const std::vector<std::string>& commands();

/// Runs one experiment. Never throws: failures become exit codes.
RunResult run(const RunOptions& options);

}  // namespace asym
