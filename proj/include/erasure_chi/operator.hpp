#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "erasure_chi/errors.hpp"

namespace erasure_chi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative symmetry tolerance accepted by HermitianOperator.
inline constexpr double kHermiticityTolerance = 1e-9;

/// Eigenvalues in [kClipBelow, kZeroCutoff] are treated as exact zeros before a
/// spectral function is applied. kZeroCutoff is also the support threshold.
inline constexpr double kZeroCutoff = 1e-12;
inline constexpr double kClipBelow = -1e-9;

/// Sweep budget of the Jacobi eigensolver.
inline constexpr int kMaxJacobiSweeps = 100;

/// Largest absolute entry.
double maxAbs(const ComplexMatrix& m);

/// Dense complex self-adjoint matrix. Construction validates squareness,
/// finiteness and symmetry, then stores the exactly Hermitian form obtained by
/// mirroring the upper triangle (diagonal forced real).
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix m);

  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator diagonal(const RealVector& d);
  /// Projector |v><v| (v is used as given, not normalised).
  static HermitianOperator projector(const ComplexVector& v);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double trace() const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;

 private:
  struct Trusted {};
  HermitianOperator(ComplexMatrix m, Trusted);
  ComplexMatrix m_;
};

/// Eigen-decomposition A = V diag(eigenvalues) V^dagger, eigenvalues descending.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Throws ConvergenceFailure past kMaxJacobiSweeps.
Spectrum eigh(const HermitianOperator& a);

enum class SupportPolicy {
  /// f is applied to every (clipped) eigenvalue; f(0) must be finite.
  kFull,
  /// Eigenvalues that clip to zero map to zero without calling f.
  kRestricted,
};

/// V diag(f(lambda)) V^dagger with the zero-clipping rule applied first.
/// Throws DomainError if f yields a non-finite value.
HermitianOperator matrixFunction(const HermitianOperator& a,
                                 const std::function<double(double)>& f,
                                 SupportPolicy policy = SupportPolicy::kFull);
HermitianOperator matrixFunction(const Spectrum& s,
                                 const std::function<double(double)>& f,
                                 SupportPolicy policy = SupportPolicy::kFull);

/// Applies the zero-clipping rule to a single eigenvalue.
double clipEigenvalue(double lambda) noexcept;

/// Re tr(AB). Throws DimensionMismatch; InternalInconsistency if the imaginary
/// part exceeds 1e-10.
double traceProduct(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace erasure_chi
