#include "erasure_chi/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace erasure_chi {

EncodedMessage::EncodedMessage(Ensemble ensemble, PureDecomposition decomposition)
    : ensemble_(std::move(ensemble)), decomposition_(std::move(decomposition)) {
  if (decomposition_.letters.size() != ensemble_.size()) {
    std::ostringstream os;
    os << decomposition_.letters.size() << " decompositions for " << ensemble_.size() << " letters";
    throw ValidationError("decomposition", os.str());
  }
  double joint = 0.0;
  for (std::size_t i = 0; i < ensemble_.size(); ++i) {
    validateDecomposition(decomposition_.letters[i], ensemble_.members()[i].state);
    for (const auto& term : decomposition_.letters[i]) joint += ensemble_.members()[i].probability * term.weight;
  }
  if (std::abs(joint - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os << "joint weights p_i r_alpha sum to " << joint;
    throw ValidationError("decomposition_weights", os.str());
  }
}

EncodedMessage EncodedMessage::canonical(const Ensemble& ensemble) {
  return EncodedMessage(ensemble, pureDecompose(ensemble));
}

EncodedMessage EncodedMessage::fromFile(const EnsembleFile& file) {
  PureDecomposition d;
  for (std::size_t i = 0; i < file.ensemble.size(); ++i) {
    if (i < file.decompositions.size() && file.decompositions[i])
      d.letters.push_back(*file.decompositions[i]);
    else
      d.letters.push_back(pureDecompose(file.ensemble.members()[i].state));
  }
  return EncodedMessage(file.ensemble, std::move(d));
}

Ensemble EncodedMessage::flattened() const {
  std::vector<EnsembleMember> members;
  for (std::size_t i = 0; i < ensemble_.size(); ++i) {
    const double p = ensemble_.members()[i].probability;
    for (const auto& term : decomposition_.letters[i])
      members.push_back({p * term.weight, term.state.projector()});
  }
  return Ensemble(std::move(members));
}

Ensemble EncodedMessage::letterComponents(std::size_t i) const {
  std::vector<EnsembleMember> members;
  for (const auto& term : decomposition_.letters.at(i)) members.push_back({term.weight, term.state.projector()});
  return Ensemble(std::move(members));
}

ErasureRun runDirectErasure(const EncodedMessage& m, const ErasureOptions& opts) {
  const Bath bath = bathForTarget(averageState(m.ensemble()), 1.0, opts.epsilonMix);
  ErasureRun run;
  run.ledgers.push_back(erasureLedger(m.flattened(), bath));
  run.entropy = run.ledgers.back().dSTotal;
  return run;
}

double directErasure(const EncodedMessage& m, const ErasureOptions& opts) {
  return runDirectErasure(m, opts).entropy;
}

ErasureRun runTwoStepFirst(const EncodedMessage& m, const ErasureOptions& opts) {
  ErasureRun run;
  for (std::size_t i = 0; i < m.ensemble().size(); ++i) {
    const auto& letter = m.ensemble().members()[i];
    if (letter.probability == 0.0) continue;
    const Bath bath = bathForTarget(letter.state, 1.0, opts.epsilonMix);
    run.ledgers.push_back(erasureLedger(m.letterComponents(i), bath));
    run.entropy += letter.probability * run.ledgers.back().dSTotal;
  }
  return run;
}

double twoStepFirst(const EncodedMessage& m, const ErasureOptions& opts) {
  return runTwoStepFirst(m, opts).entropy;
}

double BobErasureRun::routeDisagreement() const { return std::abs(difference - ledgerRoute); }

BobErasureRun runBobErasure(const EncodedMessage& m, const ErasureOptions& opts) {
  BobErasureRun out;
  ErasureRun direct = runDirectErasure(m, opts);
  ErasureRun first = runTwoStepFirst(m, opts);
  out.directEntropy = direct.entropy;
  out.firstStepEntropy = first.entropy;
  out.difference = direct.entropy - first.entropy;

  // Second step of the two-step erasure: Bob's mixed letters against a bath in rho_bar.
  const Bath bath = bathForTarget(averageState(m.ensemble()), 1.0, opts.epsilonMix);
  const ErasureLedger second = erasureLedger(m.ensemble(), bath);
  out.ledgerRoute = second.dSTotal;

  out.ledgers = std::move(direct.ledgers);
  out.ledgers.insert(out.ledgers.end(), first.ledgers.begin(), first.ledgers.end());
  out.ledgers.push_back(second);

  if (out.routeDisagreement() > kBobRouteTolerance) {
    std::ostringstream os;
    os << "Bob's erasure entropy: difference route " << out.difference << " vs ledger route " << out.ledgerRoute;
    throw InternalInconsistency(os.str());
  }
  return out;
}

double bobErasure(const Ensemble& e, const ErasureOptions& opts) {
  return runBobErasure(EncodedMessage::canonical(e), opts).value();
}

POVM::POVM(std::vector<HermitianOperator> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidPOVM("POVM needs at least one element");
  const Eigen::Index n = elements_.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    if (elements_[j].dim() != n) throw InvalidPOVM("POVM elements of unequal dimension");
    const double lowest = eigh(elements_[j]).eigenvalues(n - 1);
    if (lowest < -kPositivityTolerance) {
      std::ostringstream os;
      os << "element " << j << " has eigenvalue " << lowest;
      throw InvalidPOVM(os.str());
    }
    sum += elements_[j].matrix();
  }
  const double residual = maxAbs(sum - ComplexMatrix::Identity(n, n));
  if (residual > kPovmCompletenessTolerance) {
    std::ostringstream os;
    os << "elements sum to identity only within " << residual;
    throw InvalidPOVM(os.str());
  }
}

POVM POVM::computationalBasis(Eigen::Index dim) { return projective(ComplexMatrix::Identity(dim, dim)); }

POVM POVM::projective(const ComplexMatrix& basis) {
  std::vector<HermitianOperator> elements;
  elements.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) elements.push_back(HermitianOperator::projector(basis.col(k)));
  return POVM(std::move(elements));
}

Eigen::MatrixXd measurementJoint(const Ensemble& e, const POVM& m) {
  if (e.dim() != m.dim()) {
    std::ostringstream os;
    os << "ensemble of dimension " << e.dim() << " measured with a POVM of dimension " << m.dim();
    throw DimensionMismatch(os.str());
  }
  const auto letters = static_cast<Eigen::Index>(e.size());
  const auto outcomes = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd joint(letters, outcomes);
  for (Eigen::Index i = 0; i < letters; ++i) {
    const auto& letter = e.members()[static_cast<std::size_t>(i)];
    Eigen::RowVectorXd q(outcomes);
    for (Eigen::Index j = 0; j < outcomes; ++j)
      q(j) = std::clamp(traceProduct(letter.state.op(), m.elements()[static_cast<std::size_t>(j)]), 0.0, 1.0);
    joint.row(i) = letter.probability * q / q.sum();
  }
  return joint;
}

double measurementMutualInfo(const Ensemble& e, const POVM& m) {
  return classicalMutualInformation(measurementJoint(e, m)).nats;
}

POVM randomProjectivePOVM(Eigen::Index dim, RngStream rng) {
  if (dim < 1) throw DomainError("POVM dimension must be positive");
  std::normal_distribution<double> normal;
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  const ComplexMatrix h = 0.5 * (g + g.adjoint());
  return POVM::projective(eigh(HermitianOperator(h)).eigenvectors);
}

BoundReport holevoBoundCheck(const Ensemble& e, const std::vector<POVM>& measurements, const ErasureOptions& opts) {
  BoundReport r;
  r.chi = holevoChi(e).nats;
  r.erasureBob = bobErasure(e, opts);
  for (const auto& m : measurements) {
    const double info = measurementMutualInfo(e, m);
    if (!r.measuredInfo || info > *r.measuredInfo) r.measuredInfo = info;
  }
  r.slackHolevo = r.chi - r.measuredInfo.value_or(0.0);
  return r;
}

}  // namespace erasure_chi
