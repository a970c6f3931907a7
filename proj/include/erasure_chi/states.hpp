#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "erasure_chi/operator.hpp"
#include "erasure_chi/rng.hpp"

namespace erasure_chi {

inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kSimplexTolerance = 1e-9;
inline constexpr double kDecompositionTolerance = 1e-8;

/// Positive semidefinite, unit-trace operator. The spectrum is computed once at
/// construction and cached; eigenvalues in [-1e-9, 0) are clipped to zero.
class DensityMatrix {
 public:
  /// Throws ValidationError("positivity") or ValidationError("trace").
  explicit DensityMatrix(const HermitianOperator& op);

  static DensityMatrix fromPure(const ComplexVector& amplitudes);
  static DensityMatrix maximallyMixed(Eigen::Index dim);
  /// diag(weights); weights must already sum to one.
  static DensityMatrix diagonal(const RealVector& weights);

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  Eigen::Index dim() const noexcept { return op_.dim(); }
  /// Number of eigenvalues above kZeroCutoff.
  Eigen::Index rank() const;
  double minEigenvalue() const { return spectrum_.eigenvalues(spectrum_.dim() - 1); }

 private:
  HermitianOperator op_;
  Spectrum spectrum_;
};

/// Unit vector in C^dim.
class PureState {
 public:
  /// Throws ValidationError("normalization") when | ||v|| - 1 | > 1e-10.
  explicit PureState(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const noexcept { return v_; }
  Eigen::Index dim() const noexcept { return v_.size(); }
  DensityMatrix projector() const { return DensityMatrix::fromPure(v_); }

 private:
  ComplexVector v_;
};

struct EnsembleMember {
  double probability;
  DensityMatrix state;
};

/// Probability-weighted list of equal-dimension states.
class Ensemble {
 public:
  /// Throws ValidationError("empty" | "probabilities" | "dimension").
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  Eigen::Index dim() const noexcept { return members_.front().state.dim(); }
  std::vector<double> probabilities() const;
  std::vector<DensityMatrix> states() const;

 private:
  std::vector<EnsembleMember> members_;
};

struct WeightedPureState {
  double weight;
  PureState state;
};

/// rho = sum_alpha r_alpha |phi_alpha><phi_alpha| for one letter.
using LetterDecomposition = std::vector<WeightedPureState>;

/// Per-letter pure-state decompositions, index-aligned with an Ensemble.
struct PureDecomposition {
  std::vector<LetterDecomposition> letters;
};

/// Sum of r_alpha |phi_alpha><phi_alpha| (not validated).
HermitianOperator reconstruct(const LetterDecomposition& d);

/// Checks weights and reconstruction against `target`.
/// Throws ValidationError("decomposition_weights" | "decomposition").
void validateDecomposition(const LetterDecomposition& d, const DensityMatrix& target);

DensityMatrix averageState(const Ensemble& e);

/// Canonical decomposition: nonzero eigenvalues (descending) with eigenvectors.
LetterDecomposition pureDecompose(const DensityMatrix& rho);
PureDecomposition pureDecompose(const Ensemble& e);

/// Haar-random pure state: normalised vector of complex standard normals.
PureState randomPureState(Eigen::Index dim, RngStream rng);

/// Flat Dirichlet sample on the n-simplex.
std::vector<double> randomSimplexPoint(std::size_t n, RngStream rng);

/// sum_{alpha <= rank} w_alpha |psi_alpha><psi_alpha| with Dirichlet weights and
/// Haar states. Throws InvalidRank unless 1 <= rank <= dim.
DensityMatrix randomDensityMatrix(Eigen::Index dim, Eigen::Index rank, RngStream rng);

/// Dirichlet probabilities over nLetters with independent random states whose
/// rank is uniform in [1, maxRank].
Ensemble randomEnsemble(Eigen::Index dim, std::size_t nLetters, Eigen::Index maxRank, RngStream rng);

/// Ensemble whose letters are pure random states.
Ensemble randomPureEnsemble(Eigen::Index dim, std::size_t nLetters, RngStream rng);

/// Letters |k><k| of the computational basis with the given probabilities.
/// Requires probabilities.size() <= dim.
Ensemble basisEnsemble(Eigen::Index dim, std::span<const double> probabilities);

/// (1 - eps) rho + eps I / dim.
DensityMatrix mixWithMaximallyMixed(const DensityMatrix& rho, double eps);

}  // namespace erasure_chi
