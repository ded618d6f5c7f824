#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/error.hpp"
#include "bbgroup/recog.hpp"

namespace bbg {

enum ExitCode : int { kExitOk = 0, kExitLasVegas = 1, kExitInvalid = 2, kExitMismatch = 3 };

/// Exit code a library error maps to.
int exit_code_for(ErrorKind kind);

/// construct_sym4 for PGL2/PSL2, the quaternion normalizer for SL2.
ConstructionResult construct_small_subgroup(BlackBox& bb, std::uint32_t p, unsigned k,
                                            const RecogConfig& config);

struct MedianCounters {
  double mul = 0, inv = 0, eq = 0, rand = 0;
};

struct BenchRow {
  unsigned k = 0;
  unsigned trials = 0;
  unsigned failures = 0;
  MedianCounters total;
  std::map<std::string, MedianCounters> stages;
};

/// `trials` independent constructions over GF(p^k), trial n seeded with
/// seed + n, run in parallel (one black box per trial).
BenchRow bench_row(Flavor flavor, std::uint32_t p, unsigned k, unsigned trials,
                   std::uint64_t seed, const RecogConfig& config);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bbg
