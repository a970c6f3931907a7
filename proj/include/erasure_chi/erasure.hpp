#pragma once

#include "erasure_chi/entropy.hpp"
#include "erasure_chi/states.hpp"

namespace erasure_chi {

/// Smallest bath eigenvalue accepted; ln(omega) must exist.
inline constexpr double kBathRankCutoff = 1e-12;

/// Weight of I/dim mixed into a rank-deficient bath when explicitly requested.
inline constexpr double kEpsilonMix = 1e-10;

/// Heat bath whose thermal state is omega at inverse temperature beta
/// (k_B = 1). The Hamiltonian is fixed by the gauge Z = 1, H = -(1/beta) ln omega.
class Bath {
 public:
  const DensityMatrix& omega() const noexcept { return omega_; }
  double beta() const noexcept { return beta_; }
  const HermitianOperator& hamiltonian() const noexcept { return hamiltonian_; }
  /// ln omega (= -beta H).
  const HermitianOperator& logOmega() const noexcept { return logOmega_; }
  Eigen::Index dim() const noexcept { return omega_.dim(); }

  /// exp(-beta H) / tr exp(-beta H).
  ComplexMatrix boltzmannState() const;

 private:
  friend Bath bathFromState(const DensityMatrix& omega, double beta);
  Bath(DensityMatrix omega, double beta, HermitianOperator hamiltonian, HermitianOperator logOmega)
      : omega_(std::move(omega)), beta_(beta), hamiltonian_(std::move(hamiltonian)), logOmega_(std::move(logOmega)) {}

  DensityMatrix omega_;
  double beta_;
  HermitianOperator hamiltonian_;
  HermitianOperator logOmega_;
};

/// Throws RankDeficientBath if the smallest eigenvalue of omega is <= 1e-12,
/// DomainError unless beta is positive and finite.
Bath bathFromState(const DensityMatrix& omega, double beta);

/// Bath for `target`; when `epsilonMix` is set a rank-deficient target is
/// first mixed with kEpsilonMix * I/dim, otherwise it is rejected.
Bath bathForTarget(const DensityMatrix& target, double beta, bool epsilonMix);

/// Entropy changes of one erasure step, in nats.
struct ErasureLedger {
  double dSApparatus = 0.0;
  double dSBath = 0.0;
  double dSTotal = 0.0;

  /// |dSTotal - dSApparatus - dSBath|.
  double additivityResidual() const;
};

/// Equilibrates every member of `initial` with `bath`. With rho_bar the
/// average initial state and S_init = sum p_i S(rho_i):
///   dSApparatus = S(omega) - S_init
///   dSBath      = beta tr{H (rho_bar - omega)}
///   dSTotal     = -tr{rho_bar ln omega} - S_init
/// dSTotal is evaluated independently of the other two entries.
ErasureLedger erasureLedger(const Ensemble& initial, const Bath& bath);

struct LandauerReport {
  /// Information held by the initial ensemble: its Holevo quantity, which is
  /// S(rho_bar) when every initial state is pure.
  double erasedInformation = 0.0;
  double dSTotal = 0.0;
  /// dSTotal - erasedInformation, equal to S(rho_bar || omega).
  double slack = 0.0;
  ErasureLedger ledger;
};

LandauerReport landauerCheck(const Ensemble& initial, const Bath& bath);

}  // namespace erasure_chi
