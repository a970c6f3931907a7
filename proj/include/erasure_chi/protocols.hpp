#pragma once

#include <optional>
#include <vector>

#include "erasure_chi/ensemble_io.hpp"
#include "erasure_chi/erasure.hpp"

namespace erasure_chi {

/// Agreement demanded between the two routes to Bob's erasure entropy.
inline constexpr double kBobRouteTolerance = 1e-8;
/// Slack allowed in I <= chi before a measurement counts as a violation.
inline constexpr double kHolevoBoundTolerance = 1e-9;
inline constexpr double kPovmCompletenessTolerance = 1e-8;

struct ErasureOptions {
  /// Mix rank-deficient bath targets with kEpsilonMix * I/dim instead of
  /// throwing RankDeficientBath.
  bool epsilonMix = false;
};

/// Alice's code: letter i with probability p_i, sent as |phi_alpha^i> with
/// probability r_alpha^i.
class EncodedMessage {
 public:
  /// Throws ValidationError if the decomposition does not match the ensemble.
  EncodedMessage(Ensemble ensemble, PureDecomposition decomposition);

  /// Uses the eigendecomposition of every letter.
  static EncodedMessage canonical(const Ensemble& ensemble);
  /// Uses the file's decompositions where present, canonical ones elsewhere.
  static EncodedMessage fromFile(const EnsembleFile& file);

  const Ensemble& ensemble() const noexcept { return ensemble_; }
  const PureDecomposition& decomposition() const noexcept { return decomposition_; }

  /// {(p_i r_alpha^i, |phi_alpha^i>)} over all letters and components.
  Ensemble flattened() const;
  /// {(r_alpha^i, |phi_alpha^i>)} for letter i.
  Ensemble letterComponents(std::size_t i) const;

 private:
  Ensemble ensemble_;
  PureDecomposition decomposition_;
};

/// An erasure entropy together with every ledger that produced it.
struct ErasureRun {
  double entropy = 0.0;
  std::vector<ErasureLedger> ledgers;
};

/// Direct erasure: all encoded pure states equilibrated with a bath in rho_bar.
ErasureRun runDirectErasure(const EncodedMessage& m, const ErasureOptions& opts = {});
double directErasure(const EncodedMessage& m, const ErasureOptions& opts = {});

/// First step of the two-step erasure: letter i's pure states equilibrated with a
/// bath in rho_i; entropies weighted by p_i.
ErasureRun runTwoStepFirst(const EncodedMessage& m, const ErasureOptions& opts = {});
double twoStepFirst(const EncodedMessage& m, const ErasureOptions& opts = {});

struct BobErasureRun {
  /// Direct erasure minus the first step of the two-step procedure.
  double difference = 0.0;
  /// Mixed-initial ledger of {(p_i, rho_i)} against a bath in rho_bar.
  double ledgerRoute = 0.0;
  double directEntropy = 0.0;
  double firstStepEntropy = 0.0;
  std::vector<ErasureLedger> ledgers;

  double value() const noexcept { return difference; }
  double routeDisagreement() const;
};

/// Bob's erasure entropy computed both ways. Throws InternalInconsistency if
/// the routes differ by more than kBobRouteTolerance.
BobErasureRun runBobErasure(const EncodedMessage& m, const ErasureOptions& opts = {});
double bobErasure(const Ensemble& e, const ErasureOptions& opts = {});

/// Positive operators summing to the identity.
class POVM {
 public:
  /// Throws InvalidPOVM on a negative element or incomplete sum.
  explicit POVM(std::vector<HermitianOperator> elements);

  static POVM computationalBasis(Eigen::Index dim);
  /// Rank-one projectors onto the columns of a unitary.
  static POVM projective(const ComplexMatrix& basis);

  const std::vector<HermitianOperator>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  Eigen::Index dim() const noexcept { return elements_.front().dim(); }

 private:
  std::vector<HermitianOperator> elements_;
};

/// Joint p(i, j) = p_i tr{rho_i E_j}, rows renormalised after clipping.
Eigen::MatrixXd measurementJoint(const Ensemble& e, const POVM& m);
double measurementMutualInfo(const Ensemble& e, const POVM& m);

/// Projectors onto the eigenbasis of a random Hermitian matrix.
POVM randomProjectivePOVM(Eigen::Index dim, RngStream rng);

struct BoundReport {
  double chi = 0.0;
  double erasureBob = 0.0;
  std::optional<double> measuredInfo;
  /// chi - measuredInfo (chi when nothing was measured).
  double slackHolevo = 0.0;

  bool violated() const noexcept { return slackHolevo < -kHolevoBoundTolerance; }
};

/// Compares chi, Bob's erasure entropy and the best information among the
/// supplied measurements. Violations are reported, not thrown.
BoundReport holevoBoundCheck(const Ensemble& e, const std::vector<POVM>& measurements,
                             const ErasureOptions& opts = {});

}  // namespace erasure_chi
