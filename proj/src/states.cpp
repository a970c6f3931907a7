#include "erasure_chi/states.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace erasure_chi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this the clipped spectrum is kept only in the cache; the stored matrix
// is rebuilt only for clearly negative eigenvalues, which keeps validation
// idempotent (a validated matrix revalidates to the same bits).
constexpr double kRebuildBelow = -1e-13;

}  // namespace

DensityMatrix::DensityMatrix(const HermitianOperator& op) : op_(op), spectrum_(eigh(op)) {
  const Eigen::Index n = op_.dim();
  const double lowest = spectrum_.eigenvalues(n - 1);
  if (lowest < -kPositivityTolerance) {
    std::ostringstream os;
    os << "eigenvalue " << lowest << " below -" << kPositivityTolerance;
    throw ValidationError("positivity", os.str());
  }
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "trace " << tr << " differs from 1 by more than " << kTraceTolerance;
    throw ValidationError("trace", os.str());
  }

  for (Eigen::Index k = 0; k < n; ++k)
    if (spectrum_.eigenvalues(k) < 0.0) spectrum_.eigenvalues(k) = 0.0;
  if (lowest < kRebuildBelow) op_ = HermitianOperator(spectrum_.reconstruct());

  const double t = op_.trace();
  if (std::abs(t - 1.0) > 16.0 * kEps * static_cast<double>(n)) {
    op_ = op_ * (1.0 / t);
    spectrum_.eigenvalues /= t;
  }
}

DensityMatrix DensityMatrix::fromPure(const ComplexVector& amplitudes) {
  return DensityMatrix(HermitianOperator::projector(amplitudes));
}

DensityMatrix DensityMatrix::maximallyMixed(Eigen::Index dim) {
  return DensityMatrix(HermitianOperator::identity(dim) * (1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& weights) {
  return DensityMatrix(HermitianOperator::diagonal(weights));
}

Eigen::Index DensityMatrix::rank() const {
  return (spectrum_.eigenvalues.array() > kZeroCutoff).count();
}

PureState::PureState(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw ValidationError("dimension", "pure state must have at least one amplitude");
  if (!v_.allFinite()) throw ValidationError("finiteness", "pure state has non-finite amplitudes");
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "norm " << norm << " differs from 1 by more than " << kNormTolerance;
    throw ValidationError("normalization", os.str());
  }
  if (std::abs(norm - 1.0) > 4.0 * kEps) v_ /= norm;
}

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("empty", "ensemble needs at least one letter");
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const double p = members_[i].probability;
    if (!std::isfinite(p) || p < 0.0) {
      std::ostringstream os;
      os << "letter " << i << " has probability " << p;
      throw ValidationError("probabilities", os.str());
    }
    if (members_[i].state.dim() != members_.front().state.dim()) {
      std::ostringstream os;
      os << "letter " << i << " has dimension " << members_[i].state.dim() << ", expected "
         << members_.front().state.dim();
      throw ValidationError("dimension", os.str());
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os << "probabilities sum to " << total;
    throw ValidationError("probabilities", os.str());
  }
}

std::vector<double> Ensemble::probabilities() const {
  std::vector<double> p;
  p.reserve(members_.size());
  for (const auto& m : members_) p.push_back(m.probability);
  return p;
}

std::vector<DensityMatrix> Ensemble::states() const {
  std::vector<DensityMatrix> s;
  s.reserve(members_.size());
  for (const auto& m : members_) s.push_back(m.state);
  return s;
}

HermitianOperator reconstruct(const LetterDecomposition& d) {
  if (d.empty()) throw ValidationError("decomposition", "empty decomposition");
  const Eigen::Index n = d.front().state.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& term : d) {
    if (term.state.dim() != n) throw ValidationError("dimension", "decomposition states of unequal dimension");
    sum += term.weight * (term.state.amplitudes() * term.state.amplitudes().adjoint());
  }
  return HermitianOperator(std::move(sum));
}

void validateDecomposition(const LetterDecomposition& d, const DensityMatrix& target) {
  if (d.empty()) throw ValidationError("decomposition", "empty decomposition");
  double total = 0.0;
  for (const auto& term : d) {
    if (!std::isfinite(term.weight) || term.weight < 0.0)
      throw ValidationError("decomposition_weights", "negative or non-finite weight");
    if (term.state.dim() != target.dim())
      throw ValidationError("dimension", "decomposition state dimension differs from letter");
    total += term.weight;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os << "weights sum to " << total;
    throw ValidationError("decomposition_weights", os.str());
  }
  const double residual = maxAbs(reconstruct(d).matrix() - target.matrix());
  if (residual > kDecompositionTolerance) {
    std::ostringstream os;
    os << "reconstruction residual " << residual << " exceeds " << kDecompositionTolerance;
    throw ValidationError("decomposition", os.str());
  }
}

DensityMatrix averageState(const Ensemble& e) {
  const Eigen::Index n = e.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& m : e.members()) sum += m.probability * m.state.matrix();
  return DensityMatrix(HermitianOperator(std::move(sum)));
}

LetterDecomposition pureDecompose(const DensityMatrix& rho) {
  const Spectrum& s = rho.spectrum();
  LetterDecomposition out;
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    if (s.eigenvalues(k) <= kZeroCutoff) break;
    out.push_back({s.eigenvalues(k), PureState(s.eigenvectors.col(k))});
  }
  return out;
}

PureDecomposition pureDecompose(const Ensemble& e) {
  PureDecomposition out;
  out.letters.reserve(e.size());
  for (const auto& m : e.members()) out.letters.push_back(pureDecompose(m.state));
  return out;
}

PureState randomPureState(Eigen::Index dim, RngStream rng) {
  if (dim < 1) throw DomainError("pure state dimension must be positive");
  std::normal_distribution<double> normal;
  ComplexVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return PureState(v / v.norm());
}

std::vector<double> randomSimplexPoint(std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simplex dimension must be positive");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

DensityMatrix randomDensityMatrix(Eigen::Index dim, Eigen::Index rank, RngStream rng) {
  if (rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "rank " << rank << " outside [1, " << dim << "]";
    throw InvalidRank(os.str());
  }
  const auto weights = randomSimplexPoint(static_cast<std::size_t>(rank), rng.split(0));
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < rank; ++a) {
    const PureState psi = randomPureState(dim, rng.split(1 + static_cast<std::uint64_t>(a)));
    sum += weights[static_cast<std::size_t>(a)] * (psi.amplitudes() * psi.amplitudes().adjoint());
  }
  return DensityMatrix(HermitianOperator(std::move(sum)));
}

Ensemble randomEnsemble(Eigen::Index dim, std::size_t nLetters, Eigen::Index maxRank, RngStream rng) {
  if (maxRank < 1 || maxRank > dim) {
    std::ostringstream os;
    os << "maximum rank " << maxRank << " outside [1, " << dim << "]";
    throw InvalidRank(os.str());
  }
  const auto p = randomSimplexPoint(nLetters, rng.split(0));
  RngStream rankStream = rng.split(1);
  std::uniform_int_distribution<Eigen::Index> rankDist(1, maxRank);
  std::vector<EnsembleMember> members;
  members.reserve(nLetters);
  for (std::size_t i = 0; i < nLetters; ++i) {
    const Eigen::Index rank = rankDist(rankStream);
    members.push_back({p[i], randomDensityMatrix(dim, rank, rng.split(2 + i))});
  }
  return Ensemble(std::move(members));
}

Ensemble randomPureEnsemble(Eigen::Index dim, std::size_t nLetters, RngStream rng) {
  const auto p = randomSimplexPoint(nLetters, rng.split(0));
  std::vector<EnsembleMember> members;
  members.reserve(nLetters);
  for (std::size_t i = 0; i < nLetters; ++i)
    members.push_back({p[i], randomPureState(dim, rng.split(2 + i)).projector()});
  return Ensemble(std::move(members));
}

Ensemble basisEnsemble(Eigen::Index dim, std::span<const double> probabilities) {
  if (static_cast<Eigen::Index>(probabilities.size()) > dim)
    throw DimensionMismatch("more basis letters than dimensions");
  std::vector<EnsembleMember> members;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    RealVector d = RealVector::Zero(dim);
    d(static_cast<Eigen::Index>(k)) = 1.0;
    members.push_back({probabilities[k], DensityMatrix::diagonal(d)});
  }
  return Ensemble(std::move(members));
}

DensityMatrix mixWithMaximallyMixed(const DensityMatrix& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("mixing weight must lie in [0, 1]");
  const auto n = rho.dim();
  return DensityMatrix(rho.op() * (1.0 - eps) + HermitianOperator::identity(n) * (eps / static_cast<double>(n)));
}

}  // namespace erasure_chi
