#include "erasure_chi/erasure.hpp"

#include <cmath>
#include <sstream>

namespace erasure_chi {

ComplexMatrix Bath::boltzmannState() const {
  const HermitianOperator unnormalised =
      matrixFunction(hamiltonian_, [b = beta_](double e) { return std::exp(-b * e); });
  return unnormalised.matrix() / unnormalised.trace();
}

Bath bathFromState(const DensityMatrix& omega, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    std::ostringstream os;
    os << "inverse temperature must be positive and finite, got " << beta;
    throw DomainError(os.str());
  }
  if (omega.minEigenvalue() <= kBathRankCutoff) {
    std::ostringstream os;
    os << "bath state has eigenvalue " << omega.minEigenvalue() << " <= " << kBathRankCutoff
       << "; ln(omega) is undefined (mix toward I/dim explicitly to proceed)";
    throw RankDeficientBath(os.str());
  }
  HermitianOperator logOmega = matrixFunction(omega.spectrum(), [](double x) { return std::log(x); });
  HermitianOperator hamiltonian = logOmega * (-1.0 / beta);
  return Bath(omega, beta, std::move(hamiltonian), std::move(logOmega));
}

Bath bathForTarget(const DensityMatrix& target, double beta, bool epsilonMix) {
  if (epsilonMix && target.minEigenvalue() <= kBathRankCutoff)
    return bathFromState(mixWithMaximallyMixed(target, kEpsilonMix), beta);
  return bathFromState(target, beta);
}

double ErasureLedger::additivityResidual() const { return std::abs(dSTotal - dSApparatus - dSBath); }

ErasureLedger erasureLedger(const Ensemble& initial, const Bath& bath) {
  if (initial.dim() != bath.dim()) {
    std::ostringstream os;
    os << "initial states of dimension " << initial.dim() << " against a bath of dimension " << bath.dim();
    throw DimensionMismatch(os.str());
  }
  const DensityMatrix avg = averageState(initial);
  const double initialEntropy = meanLetterEntropy(initial);

  ErasureLedger ledger;
  ledger.dSApparatus = vonNeumannEntropy(bath.omega()).nats - initialEntropy;
  // Heat released into the bath is tr{H (rho_bar - omega)}, divided by kT.
  ledger.dSBath = bath.beta() * traceProduct(bath.hamiltonian(), avg.op() - bath.omega().op());
  ledger.dSTotal = -traceProduct(avg.op(), bath.logOmega()) - initialEntropy;
  return ledger;
}

LandauerReport landauerCheck(const Ensemble& initial, const Bath& bath) {
  LandauerReport r;
  r.ledger = erasureLedger(initial, bath);
  r.erasedInformation = holevoChi(initial).nats;
  r.dSTotal = r.ledger.dSTotal;
  r.slack = r.dSTotal - r.erasedInformation;
  return r;
}

}  // namespace erasure_chi
