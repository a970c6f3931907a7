#include "erasure_chi/campaign.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "erasure_chi/capacity.hpp"
#include "erasure_chi/parallel.hpp"
#include "erasure_chi/protocols.hpp"

namespace erasure_chi {

namespace {

constexpr double kGradientStep = 1e-5;

struct SuiteSample {
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string message;

  void record(double metric, double threshold, const std::string& what) {
    ++checks;
    if (std::isfinite(metric)) worst = std::max(worst, metric);
    if (!(metric <= threshold)) {
      ++failures;
      if (message.empty()) {
        std::ostringstream os;
        os << what << ": metric " << metric << " exceeds " << threshold;
        message = os.str();
      }
    }
  }

  void fail(const std::string& what) {
    ++checks;
    ++failures;
    if (message.empty()) message = what;
  }
};

using TrialRecord = std::array<SuiteSample, kSuiteCount>;

SuiteSample& slot(TrialRecord& r, SuiteId id) { return r[static_cast<std::size_t>(id)]; }

RngStream suiteStream(const CampaignConfig& c, SuiteId id, std::size_t trial) {
  return RngStream(c.seed).split(static_cast<std::uint64_t>(id)).split(trial);
}

std::size_t drawLetters(RngStream rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> dist(lo, std::max(lo, hi));
  return dist(rng);
}

// Runs `body`; any exception becomes a failed check of `id`.
template <class Body>
void guarded(TrialRecord& r, SuiteId id, Body&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    slot(r, id).fail(e.what());
  }
}

void recordLedgers(TrialRecord& r, const std::vector<ErasureLedger>& ledgers) {
  for (const auto& l : ledgers)
    slot(r, SuiteId::kLedgerAdditivity)
        .record(l.additivityResidual(), suiteThreshold(SuiteId::kLedgerAdditivity), "ledger additivity");
}

void landauerSuites(const CampaignConfig& c, std::size_t t, Eigen::Index dim, TrialRecord& r) {
  guarded(r, SuiteId::kLandauerNonnegativity, [&] {
    const RngStream rng = suiteStream(c, SuiteId::kLandauerNonnegativity, t);
    const Ensemble e = randomPureEnsemble(dim, drawLetters(rng.split(0), 1, c.letters), rng.split(1));
    const double beta = 0.25 + 3.75 * rng.split(3).uniform();
    const Bath bath = bathFromState(randomDensityMatrix(dim, dim, rng.split(2)), beta);
    const LandauerReport rep = landauerCheck(e, bath);
    recordLedgers(r, {rep.ledger});
    slot(r, SuiteId::kLandauerNonnegativity)
        .record(std::max(0.0, -rep.slack), suiteThreshold(SuiteId::kLandauerNonnegativity), "Landauer slack");
    const double rel = relativeEntropy(averageState(e), bath.omega()).value();
    slot(r, SuiteId::kLandauerRelativeEntropy)
        .record(std::abs(rep.slack - rel), suiteThreshold(SuiteId::kLandauerRelativeEntropy),
                "slack vs relative entropy");
  });

  guarded(r, SuiteId::kOptimalErasure, [&] {
    const RngStream rng = suiteStream(c, SuiteId::kOptimalErasure, t);
    const Ensemble e = randomPureEnsemble(dim, drawLetters(rng.split(0), 1, c.letters), rng.split(1));
    const DensityMatrix avg = averageState(e);
    const Bath bath = bathForTarget(avg, 1.0, true);
    const ErasureLedger ledger = erasureLedger(e, bath);
    recordLedgers(r, {ledger});
    slot(r, SuiteId::kOptimalErasure)
        .record(std::abs(ledger.dSTotal - vonNeumannEntropy(avg).nats), suiteThreshold(SuiteId::kOptimalErasure),
                "optimal erasure");
  });
}

void protocolSuites(const CampaignConfig& c, std::size_t t, Eigen::Index dim, TrialRecord& r) {
  guarded(r, SuiteId::kProtocolConsistency, [&] {
    const RngStream rng = suiteStream(c, SuiteId::kProtocolConsistency, t);
    const Ensemble e = randomEnsemble(dim, drawLetters(rng.split(0), 1, c.letters), dim, rng.split(1));
    const BobErasureRun bob = runBobErasure(EncodedMessage::canonical(e), {.epsilonMix = true});
    recordLedgers(r, bob.ledgers);
    const double chi = holevoChi(e).nats;
    // Direct minus first step must match the independently computed ledger of step 2.
    const double ledgerGap = std::abs(bob.directEntropy - bob.firstStepEntropy - bob.ledgerRoute);
    slot(r, SuiteId::kProtocolConsistency)
        .record(std::max(ledgerGap, std::abs(bob.value() - chi)), suiteThreshold(SuiteId::kProtocolConsistency),
                "protocol consistency");
    slot(r, SuiteId::kBobDualRoute)
        .record(bob.routeDisagreement(), suiteThreshold(SuiteId::kBobDualRoute), "Bob dual route");
  });

  guarded(r, SuiteId::kChiIdentity, [&] {
    const RngStream rng = suiteStream(c, SuiteId::kChiIdentity, t);
    const Ensemble e = randomEnsemble(dim, drawLetters(rng.split(0), 1, c.letters), dim, rng.split(1));
    slot(r, SuiteId::kChiIdentity)
        .record(std::abs(holevoChi(e).nats - chiViaRelativeEntropy(e).nats), suiteThreshold(SuiteId::kChiIdentity),
                "chi identity");
  });
}

void measurementSuites(const CampaignConfig& c, std::size_t t, Eigen::Index dim, TrialRecord& r) {
  guarded(r, SuiteId::kHolevoBound, [&] {
    const RngStream rng = suiteStream(c, SuiteId::kHolevoBound, t);
    const Ensemble e = randomEnsemble(dim, drawLetters(rng.split(0), 1, c.letters), dim, rng.split(1));
    const POVM m = randomProjectivePOVM(dim, rng.split(2));
    const double excess = measurementMutualInfo(e, m) - holevoChi(e).nats;
    slot(r, SuiteId::kHolevoBound).record(std::max(0.0, excess), suiteThreshold(SuiteId::kHolevoBound), "I <= chi");
  });

  guarded(r, SuiteId::kHolevoSaturation, [&] {
    // Orthogonal pure letters drawn from a random basis, read out in that basis.
    const RngStream rng = suiteStream(c, SuiteId::kHolevoSaturation, t);
    const POVM basis = randomProjectivePOVM(dim, rng.split(2));
    const std::size_t n = drawLetters(rng.split(0), 1, std::min<std::size_t>(c.letters, static_cast<std::size_t>(dim)));
    const auto p = randomSimplexPoint(n, rng.split(1));
    std::vector<EnsembleMember> members;
    for (std::size_t i = 0; i < n; ++i) members.push_back({p[i], DensityMatrix(basis.elements()[i])});
    const Ensemble e(std::move(members));
    slot(r, SuiteId::kHolevoSaturation)
        .record(std::abs(measurementMutualInfo(e, basis) - holevoChi(e).nats),
                suiteThreshold(SuiteId::kHolevoSaturation), "bound saturation");
  });
}

void gradientSuite(const CampaignConfig& c, std::size_t t, Eigen::Index dim, TrialRecord& r) {
  guarded(r, SuiteId::kGradient, [&] {
    const RngStream rng = suiteStream(c, SuiteId::kGradient, t);
    const std::size_t n = drawLetters(rng.split(0), 2, c.letters);
    const std::vector<DensityMatrix> states = randomEnsemble(dim, n, dim, rng.split(1)).states();
    // Keep every p_i well inside the simplex so p +- h d stays feasible.
    std::vector<double> p = randomSimplexPoint(n, rng.split(2));
    for (auto& x : p) x = 0.8 * x + 0.2 / static_cast<double>(n);

    const std::vector<double> g = chiGradient(states, p);
    double mean = 0.0;
    for (double x : g) mean += x / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> up = p, down = p;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = (k == i ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
        up[k] += kGradientStep * d;
        down[k] -= kGradientStep * d;
      }
      const double fd = (chiOfDistribution(states, up) - chiOfDistribution(states, down)) / (2.0 * kGradientStep);
      const double analytic = g[i] - mean;
      slot(r, SuiteId::kGradient)
          .record(std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)), suiteThreshold(SuiteId::kGradient),
                  "gradient vs finite difference");
    }
  });
}

TrialRecord runTrial(const CampaignConfig& c, std::size_t t) {
  TrialRecord r;
  const Eigen::Index dim = c.dims[t % c.dims.size()];
  landauerSuites(c, t, dim, r);
  protocolSuites(c, t, dim, r);
  measurementSuites(c, t, dim, r);
  gradientSuite(c, t, dim, r);
  return r;
}

CampaignReport reduce(const CampaignConfig& c, const std::vector<TrialRecord>& trials) {
  CampaignReport report{c, {}};
  for (int s = 0; s < kSuiteCount; ++s) {
    const auto id = static_cast<SuiteId>(s);
    SuiteSummary sum;
    sum.name = suiteName(id);
    sum.threshold = suiteThreshold(id);
    for (std::size_t t = 0; t < trials.size(); ++t) {
      const SuiteSample& x = trials[t][static_cast<std::size_t>(s)];
      sum.checks += x.checks;
      sum.failures += x.failures;
      sum.worst = std::max(sum.worst, x.worst);
      if (x.failures && !sum.firstFailureTrial) {
        sum.firstFailureTrial = t;
        sum.firstFailureMessage = x.message;
      }
    }
    report.suites.push_back(std::move(sum));
  }
  return report;
}

}  // namespace

const char* suiteName(SuiteId id) {
  switch (id) {
    case SuiteId::kLandauerNonnegativity: return "landauer_slack";
    case SuiteId::kLandauerRelativeEntropy: return "landauer_relative_entropy";
    case SuiteId::kOptimalErasure: return "optimal_erasure";
    case SuiteId::kLedgerAdditivity: return "ledger_additivity";
    case SuiteId::kProtocolConsistency: return "protocol_consistency";
    case SuiteId::kBobDualRoute: return "bob_dual_route";
    case SuiteId::kHolevoBound: return "holevo_bound";
    case SuiteId::kHolevoSaturation: return "holevo_saturation";
    case SuiteId::kChiIdentity: return "chi_identity";
    case SuiteId::kGradient: return "gradient";
  }
  return "unknown";
}

double suiteThreshold(SuiteId id) {
  switch (id) {
    case SuiteId::kLandauerNonnegativity: return 1e-10;
    case SuiteId::kLedgerAdditivity: return 1e-10;
    case SuiteId::kGradient: return 1e-5;
    default: return 1e-9;
  }
}

bool CampaignReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteSummary& s) { return s.passed(); });
}

void validateCampaignConfig(const CampaignConfig& config) {
  if (config.dims.empty()) throw DomainError("at least one dimension is required");
  for (auto d : config.dims)
    if (d < 2) throw DomainError("every dimension must be at least 2");
  if (config.letters < 1) throw DomainError("letters must be at least 1");
  if (config.trials < 1) throw DomainError("trials must be at least 1");
}

CampaignReport runCampaignSerial(const CampaignConfig& config) {
  validateCampaignConfig(config);
  std::vector<TrialRecord> trials;
  trials.reserve(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) trials.push_back(runTrial(config, t));
  return reduce(config, trials);
}

CampaignReport runCampaignParallel(const CampaignConfig& config) {
  validateCampaignConfig(config);
  std::vector<TrialRecord> trials(config.trials);
  forEachIndex(config.trials, true, [&](std::size_t t) { trials[t] = runTrial(config, t); });
  return reduce(config, trials);
}

std::vector<SuiteSummary> verifyEnsemble(const Ensemble& e, std::uint64_t seed, std::size_t randomMeasurements,
                                         bool epsilonMix) {
  TrialRecord r;
  guarded(r, SuiteId::kProtocolConsistency, [&] {
    const BobErasureRun bob = runBobErasure(EncodedMessage::canonical(e), {.epsilonMix = epsilonMix});
    recordLedgers(r, bob.ledgers);
    const double chi = holevoChi(e).nats;
    slot(r, SuiteId::kProtocolConsistency)
        .record(std::max(std::abs(bob.directEntropy - bob.firstStepEntropy - bob.ledgerRoute), std::abs(bob.value() - chi)),
                suiteThreshold(SuiteId::kProtocolConsistency), "protocol consistency");
    slot(r, SuiteId::kBobDualRoute)
        .record(bob.routeDisagreement(), suiteThreshold(SuiteId::kBobDualRoute), "Bob dual route");
  });
  guarded(r, SuiteId::kChiIdentity, [&] {
    slot(r, SuiteId::kChiIdentity)
        .record(std::abs(holevoChi(e).nats - chiViaRelativeEntropy(e).nats), suiteThreshold(SuiteId::kChiIdentity),
                "chi identity");
  });
  guarded(r, SuiteId::kHolevoBound, [&] {
    const double chi = holevoChi(e).nats;
    const RngStream rng = RngStream(seed).split(static_cast<std::uint64_t>(SuiteId::kHolevoBound));
    for (std::size_t k = 0; k <= randomMeasurements; ++k) {
      const POVM m = k == 0 ? POVM::computationalBasis(e.dim()) : randomProjectivePOVM(e.dim(), rng.split(k));
      slot(r, SuiteId::kHolevoBound)
          .record(std::max(0.0, measurementMutualInfo(e, m) - chi), suiteThreshold(SuiteId::kHolevoBound), "I <= chi");
    }
  });

  std::vector<SuiteSummary> out;
  for (SuiteId id : {SuiteId::kLedgerAdditivity, SuiteId::kProtocolConsistency, SuiteId::kBobDualRoute,
                     SuiteId::kChiIdentity, SuiteId::kHolevoBound}) {
    const SuiteSample& x = slot(r, id);
    SuiteSummary s;
    s.name = std::string("input_") + suiteName(id);
    s.threshold = suiteThreshold(id);
    s.checks = x.checks;
    s.failures = x.failures;
    s.worst = x.worst;
    if (x.failures) {
      s.firstFailureTrial = 0;
      s.firstFailureMessage = x.message;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace erasure_chi
