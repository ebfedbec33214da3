#pragma once

// Subcommand implementations shared by the command-line tool, the
// acceptance binary and the Python module.

#include <cstdint>
#include <string>
#include <vector>

#include "affsing/config.hpp"
#include "affsing/dioph.hpp"
#include "affsing/height.hpp"
#include "affsing/lattice.hpp"
#include "output.hpp"

namespace affsing::tools {

/// Resolved settings of one run. Flags and environment overrides are
/// folded into `cfg` before this is built, so the config hash covers them.
struct RunContext {
  config::Config cfg;
  Dims dims;
  std::uint64_t seed = 1;
  std::uint64_t budget = 50'000'000;
  unsigned precision = 256;
  std::string out = "out";
  height::HeightParams params;

  lattice::EnumOptions enumeration() const;
  dioph::OmegaOptions omega_options() const;
  /// The configured A, or fractional parts of square roots of primes.
  dioph::AffineParam A() const;
};

RunContext make_context(const config::Config& cfg);

const std::vector<std::string>& commands();

struct RunResult {
  Json summary;
  /// False when a verification inside the run failed (verify, selftest).
  bool passed = true;
};

/// Runs one subcommand, writes its artifacts under ctx.out and returns the
/// JSON summary (also written as <command>.json).
RunResult run_command(const std::string& command, const RunContext& ctx);

/// Example tables of every module; one row per check.
RunResult run_selftest(const RunContext& ctx, ArtifactWriter& writer);

}  // namespace affsing::tools
