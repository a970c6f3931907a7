#include "erasure_chi/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace erasure_chi {

double maxAbs(const ComplexMatrix& m) {
  double out = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out = std::max(out, std::abs(m(i, j)));
  return out;
}

namespace {

void mirrorUpper(ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  }
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    std::ostringstream os;
    os << "operator must be square, got " << m_.rows() << "x" << m_.cols();
    throw DimensionMismatch(os.str());
  }
  if (m_.rows() == 0) throw DomainError("operator dimension must be positive");
  if (!m_.allFinite()) throw DomainError("operator has non-finite entries");

  const double scale = std::max(1.0, maxAbs(m_));
  const double asym = maxAbs(m_ - m_.adjoint());
  if (asym > kHermiticityTolerance * scale) {
    std::ostringstream os;
    os << "max |A - A^dagger| = " << asym << " exceeds tolerance " << kHermiticityTolerance * scale;
    throw NonHermitianInput(os.str());
  }
  mirrorUpper(m_);
}

HermitianOperator::HermitianOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(const RealVector& d) {
  return HermitianOperator(d.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{});
}

HermitianOperator HermitianOperator::projector(const ComplexVector& v) {
  ComplexMatrix m = v * v.adjoint();
  mirrorUpper(m);
  return HermitianOperator(std::move(m), Trusted{});
}

double HermitianOperator::trace() const { return m_.trace().real(); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("operator sum of unequal dimensions");
  return HermitianOperator(m_ + other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("operator difference of unequal dimensions");
  return HermitianOperator(m_ - other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s, Trusted{});
}

ComplexMatrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Spectrum eigh(const HermitianOperator& op) {
  const Eigen::Index n = op.dim();
  ComplexMatrix a = op.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  // Off-diagonal entries below this floor cannot move any eigenvalue by more
  // than a rounding error of the largest one.
  const double floor = 1e-3 * std::numeric_limits<double>::epsilon() * a.norm();

  bool converged = n <= 1 || floor == 0.0;
  for (int sweep = 0; !converged && sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double mag = std::abs(b);
        if (mag <= floor) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = std::conj(b) / mag;  // e^{-i arg b}

        // U restricted to (p, q): [[c, s], [-s phase, c phase]].
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex arp = a(r, p), arq = a(r, q);
          a(r, p) = arp * upp + arq * uqp;
          a(r, q) = arp * upq + arq * uqq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex apr = a(p, r), aqr = a(q, r);
          a(p, r) = std::conj(upp) * apr + std::conj(uqp) * aqr;
          a(q, r) = std::conj(upq) * apr + std::conj(uqq) * aqr;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp * upp + vrq * uqp;
          v(r, q) = vrp * upq + vrq * uqq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    std::ostringstream os;
    os << "Jacobi eigensolver did not converge within " << kMaxJacobiSweeps << " sweeps (dim " << n << ")";
    throw ConvergenceFailure(os.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });

  Spectrum out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

double clipEigenvalue(double lambda) noexcept {
  return (lambda >= kClipBelow && lambda <= kZeroCutoff) ? 0.0 : lambda;
}

HermitianOperator matrixFunction(const Spectrum& s, const std::function<double(double)>& f,
                                 SupportPolicy policy) {
  RealVector mapped(s.dim());
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const double lambda = clipEigenvalue(s.eigenvalues(k));
    const double y = (policy == SupportPolicy::kRestricted && lambda == 0.0) ? 0.0 : f(lambda);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "matrix function undefined at eigenvalue " << lambda;
      throw DomainError(os.str());
    }
    mapped(k) = y;
  }
  return HermitianOperator(s.eigenvectors * mapped.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint());
}

HermitianOperator matrixFunction(const HermitianOperator& a, const std::function<double(double)>& f,
                                 SupportPolicy policy) {
  return matrixFunction(eigh(a), f, policy);
}

double traceProduct(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "trace product of dimensions " << a.dim() << " and " << b.dim();
    throw DimensionMismatch(os.str());
  }
  // tr(AB) = sum_jk A_jk B_kj = sum_jk A_jk conj(B_jk) for Hermitian B.
  const Complex t = (a.matrix().array() * b.matrix().conjugate().array()).sum();
  if (std::abs(t.imag()) >= 1e-10) {
    std::ostringstream os;
    os << "trace of Hermitian product has imaginary part " << t.imag();
    throw InternalInconsistency(os.str());
  }
  return t.real();
}

}  // namespace erasure_chi
