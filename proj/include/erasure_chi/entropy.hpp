#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "erasure_chi/states.hpp"

namespace erasure_chi {

/// Round-off band: results in [-kNegativeRoundoff, 0) are clipped to zero,
/// anything more negative raises InternalInconsistency.
inline constexpr double kNegativeRoundoff = 1e-10;

/// An entropy in nats. `infinite` flags +infinity (relative entropy with a
/// support mismatch); bits are produced only on request.
struct EntropyValue {
  double nats = 0.0;
  bool infinite = false;

  static EntropyValue fromNats(double nats);
  static EntropyValue infinity() { return {0.0, true}; }

  double bits() const;
  /// nats, or +inf when flagged.
  double value() const;
};

/// -sum lambda ln lambda over the cached spectrum, 0 ln 0 = 0.
EntropyValue vonNeumannEntropy(const DensityMatrix& rho);

/// tr rho ln rho - tr rho ln omega; flagged infinite if rho has weight above
/// kZeroCutoff on the kernel of omega.
EntropyValue relativeEntropy(const DensityMatrix& rho, const DensityMatrix& omega);

/// S(sum p_i rho_i) - sum p_i S(rho_i).
EntropyValue holevoChi(const Ensemble& e);

/// sum p_i S(rho_i || rho_bar); equals holevoChi. Throws InternalInconsistency
/// on a support mismatch, which cannot happen for p_i > 0.
EntropyValue chiViaRelativeEntropy(const Ensemble& e);

/// Throws InvalidDistribution unless p is on the simplex within 1e-9.
EntropyValue shannonEntropy(std::span<const double> p);

/// Mutual information of a joint distribution p(i, j) (rows i, columns j).
EntropyValue classicalMutualInformation(const Eigen::MatrixXd& joint);

/// Average of S(rho_i) weighted by p_i.
double meanLetterEntropy(const Ensemble& e);

/// Throws InvalidDistribution unless every entry is >= -1e-9 and the sum is 1
/// within 1e-9.
void validateDistribution(std::span<const double> p);

}  // namespace erasure_chi
