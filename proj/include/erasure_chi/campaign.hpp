#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erasure_chi/states.hpp"

namespace erasure_chi {

/// Randomised verification campaign. Trial t of suite s draws all of its
/// randomness from RngStream(seed).split(s).split(t), so the serial and the
/// OpenMP runners produce identical reports.
struct CampaignConfig {
  std::uint64_t seed = 42;
  /// Trial t uses dims[t % dims.size()].
  std::vector<Eigen::Index> dims{2, 3, 4};
  /// Upper bound on letters per ensemble; each trial draws from [1, letters].
  std::size_t letters = 4;
  std::size_t trials = 1000;
};

enum class SuiteId : int {
  kLandauerNonnegativity = 0,
  kLandauerRelativeEntropy,
  kOptimalErasure,
  kLedgerAdditivity,
  kProtocolConsistency,
  kBobDualRoute,
  kHolevoBound,
  kHolevoSaturation,
  kChiIdentity,
  kGradient,
};
inline constexpr int kSuiteCount = 10;

const char* suiteName(SuiteId id);
/// Largest metric a check may produce and still pass.
double suiteThreshold(SuiteId id);

struct SuiteSummary {
  std::string name;
  double threshold = 0.0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Largest metric seen (0 when no checks ran).
  double worst = 0.0;
  std::optional<std::size_t> firstFailureTrial;
  std::string firstFailureMessage;

  bool passed() const noexcept { return failures == 0; }
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<SuiteSummary> suites;

  bool passed() const;
  const SuiteSummary& suite(SuiteId id) const { return suites.at(static_cast<std::size_t>(id)); }
};

/// Throws DomainError for an empty dims list, a dimension below 2, zero
/// letters or zero trials.
void validateCampaignConfig(const CampaignConfig& config);

/// Reference implementation: trials in index order on the calling thread.
CampaignReport runCampaignSerial(const CampaignConfig& config);

/// Trials distributed over OpenMP threads; same report as the serial run.
CampaignReport runCampaignParallel(const CampaignConfig& config);

/// Checks a user-supplied ensemble: protocol consistency, both Bob routes,
/// chi identity, ledger additivity, and I <= chi for the computational basis
/// plus `randomMeasurements` random projective measurements.
std::vector<SuiteSummary> verifyEnsemble(const Ensemble& e, std::uint64_t seed, std::size_t randomMeasurements,
                                         bool epsilonMix);

}  // namespace erasure_chi
