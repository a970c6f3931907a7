#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "erasure_chi/report.hpp"

namespace erasure_chi::cli {

enum class Command { kEntropy, kChi, kErase, kVerify, kCapacity };

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failure or invariant violation
inline constexpr int kExitInput = 2;    // unreadable, malformed or invalid input

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kSeedEnvVar = "ERASURE_CHI_SEED";
inline constexpr int kCapacityMaxIterations = 100000;

struct RunConfig {
  Command command = Command::kEntropy;
  std::optional<std::string> input;
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> dims{2, 3, 4};
  int letters = 4;
  int trials = 1000;
  double tol = 1e-9;
  Units units = Units::kNats;
  Format format = Format::kTable;
  bool epsilonMix = false;
};

/// Parses argv (including the program name) into a RunConfig. Throws
/// DomainError with a usage message on bad arguments. `--seed` overrides the
/// ERASURE_CHI_SEED environment variable, which overrides kDefaultSeed.
RunConfig parseArguments(int argc, const char* const* argv);

/// Outcome of a command: its report and the exit status it implies.
struct CommandResult {
  Report report;
  int status = kExitOk;
  /// Diagnostic for standard error (empty when nothing to say).
  std::string message;
};

CommandResult cmdEntropy(const RunConfig& config);
CommandResult cmdChi(const RunConfig& config);
CommandResult cmdErase(const RunConfig& config);
CommandResult cmdVerify(const RunConfig& config);
CommandResult cmdCapacity(const RunConfig& config);

/// Full front end: parse, dispatch, print, map errors to exit statuses.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erasure_chi::cli
