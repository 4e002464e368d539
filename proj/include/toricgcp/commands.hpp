#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "toricgcp/io.hpp"

namespace toricgcp {

struct RunOptions {
  std::optional<std::uint64_t> seed;   // overrides the problem's seed
  std::optional<std::string> field;    // "Q" or "gfp:P", overrides the problem's field
  int max_retries = 16;
  std::size_t cap = 2000;
  bool emit_H = false;
  // "simplex", "cube", "auto" or a JSON point list; empty means the
  // problem's "A", else the simplex.
  io::json A;
  // "auto" or a JSON support tuple; empty means the problem's "fill", else auto.
  io::json fill;
  // Candidate D for the fill subcommand.
  io::json candidate;
};

struct RunResult {
  int exit_code = 0;       // 0 ok, 1 schema, 2 precondition, 3 retries exhausted, 4 internal
  io::json output;         // the machine-readable result, or {"error", "message"}
  std::string summary;     // one human-readable line
};

// Subcommands: mixedvol, fill, resultant, gcp, chow, solve. Never throws.
RunResult run_command(const std::string& name, const io::json& problem, const RunOptions& opts);

// The deterministic stdout rendering of a result.
std::string render(const io::json& output);

}  // namespace toricgcp
