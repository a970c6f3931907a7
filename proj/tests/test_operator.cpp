#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "erasure_chi/operator.hpp"
#include "oracles.hpp"

using namespace erasure_chi;

namespace {

HermitianOperator pauliX() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return HermitianOperator(m);
}

HermitianOperator pauliZ() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return HermitianOperator(m);
}

}  // namespace

TEST(Eigh, IdentityHasUnitSpectrum) {
  const Spectrum s = eigh(HermitianOperator::identity(3));
  for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(s.eigenvalues(k), 1.0);
}

TEST(Eigh, PauliXEigenvalues) {
  const Spectrum s = eigh(pauliX());
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), -1.0, 1e-15);
}

TEST(Eigh, RandomHermitianReconstructs) {
  std::mt19937_64 gen(8);
  for (int dim : {1, 2, 5, 8, 16, 32}) {
    const ComplexMatrix a = oracle::randomHermitian(dim, gen);
    const Spectrum s = eigh(HermitianOperator(a));
    EXPECT_LT(maxAbs(s.reconstruct() - a), 1e-8 * dim) << "dim " << dim;
    EXPECT_LT(maxAbs(s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(dim, dim)), 1e-9);
  }
}

TEST(Eigh, AgreesWithIndependentSolver) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 7;
    const ComplexMatrix a = oracle::randomHermitian(dim, gen);
    const Spectrum s = eigh(HermitianOperator(a));
    const Eigen::VectorXd expected = oracle::eigenvalues(a).reverse();  // ascending -> descending
    EXPECT_LT((s.eigenvalues - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Eigh, DescendingAndTracePreserving) {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + trial % 10;
    const HermitianOperator a(oracle::randomHermitian(dim, gen));
    const Spectrum s = eigh(a);
    for (int k = 1; k < dim; ++k) EXPECT_GE(s.eigenvalues(k - 1), s.eigenvalues(k));
    EXPECT_NEAR(s.eigenvalues.sum(), a.trace(), 1e-9 * dim);
  }
}

TEST(Eigh, HandlesDegenerateAndZeroMatrices) {
  EXPECT_EQ(eigh(HermitianOperator::zero(4)).eigenvalues.cwiseAbs().maxCoeff(), 0.0);
  // Rank-one projector: one unit eigenvalue, the rest zero.
  ComplexVector v(3);
  v << Complex(0.6, 0), Complex(0, 0.8), 0;
  const Spectrum s = eigh(HermitianOperator::projector(v));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 0.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 0.0, 1e-14);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 1, 0.5, 0.2, 1;
  EXPECT_THROW(HermitianOperator{m}, NonHermitianInput);
}

TEST(HermitianOperator, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(HermitianOperator{ComplexMatrix(2, 3)}, DimensionMismatch);
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = std::nan("");
  EXPECT_THROW(HermitianOperator{m}, DomainError);
}

TEST(HermitianOperator, MirrorsUpperTriangleWithinTolerance) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 1e-12), Complex(0.3, 0.1), Complex(0.3, -0.1 + 1e-11), 2;
  const HermitianOperator a(m);
  EXPECT_EQ(a.matrix()(1, 0), std::conj(a.matrix()(0, 1)));
  EXPECT_EQ(a.matrix()(0, 0).imag(), 0.0);
  EXPECT_EQ(a.matrix()(0, 1), Complex(0.3, 0.1));
}

TEST(MatrixFunction, ExpOfDiagonal) {
  RealVector d(2);
  d << 0.0, std::log(2.0);
  const HermitianOperator e = matrixFunction(HermitianOperator::diagonal(d), [](double x) { return std::exp(x); });
  EXPECT_NEAR(e.matrix()(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(e.matrix()(1, 1).real(), 2.0, 1e-14);
  EXPECT_NEAR(std::abs(e.matrix()(0, 1)), 0.0, 1e-14);
}

TEST(MatrixFunction, LogOfIdentityIsZero) {
  const HermitianOperator l = matrixFunction(HermitianOperator::identity(3), [](double x) { return std::log(x); });
  EXPECT_LT(maxAbs(l.matrix()), 1e-15);
}

TEST(MatrixFunction, ExpLogRoundTrip) {
  std::mt19937_64 gen(11);
  for (int dim : {2, 3, 5, 8}) {
    const ComplexMatrix rho = oracle::randomFullRankState(dim, gen);
    const HermitianOperator logRho = matrixFunction(HermitianOperator(rho), [](double x) { return std::log(x); });
    const HermitianOperator back = matrixFunction(logRho, [](double x) { return std::exp(x); });
    EXPECT_LT(maxAbs(back.matrix() - rho), 1e-9) << "dim " << dim;
  }
}

TEST(MatrixFunction, IdentityMapReturnsInput) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = oracle::randomHermitian(2 + trial % 6, gen);
    const HermitianOperator f = matrixFunction(HermitianOperator(a), [](double x) { return x; });
    EXPECT_LT(maxAbs(f.matrix() - a), 1e-10);
  }
}

TEST(MatrixFunction, LogOfSingularNeedsRestriction) {
  RealVector d(2);
  d << 1.0, 0.0;
  const auto log = [](double x) { return std::log(x); };
  EXPECT_THROW(matrixFunction(HermitianOperator::diagonal(d), log), DomainError);
  const HermitianOperator r = matrixFunction(HermitianOperator::diagonal(d), log, SupportPolicy::kRestricted);
  EXPECT_LT(maxAbs(r.matrix()), 1e-15);
}

TEST(MatrixFunction, ClipsTinyEigenvalues) {
  EXPECT_EQ(clipEigenvalue(5e-13), 0.0);
  EXPECT_EQ(clipEigenvalue(-5e-10), 0.0);
  EXPECT_EQ(clipEigenvalue(-2e-9), -2e-9);
  EXPECT_EQ(clipEigenvalue(2e-12), 2e-12);
}

TEST(TraceProduct, IdentityGivesTrace) {
  std::mt19937_64 gen(13);
  const ComplexMatrix rho = oracle::randomFullRankState(4, gen);
  EXPECT_NEAR(traceProduct(HermitianOperator::identity(4), HermitianOperator(rho)), 1.0, 1e-14);
}

TEST(TraceProduct, PauliZOnGroundState) {
  RealVector d(2);
  d << 1.0, 0.0;
  EXPECT_DOUBLE_EQ(traceProduct(pauliZ(), HermitianOperator::diagonal(d)), 1.0);
}

TEST(TraceProduct, MatchesNaiveDoubleLoopAndIsSymmetric) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = oracle::randomHermitian(5, gen);
    const ComplexMatrix b = oracle::randomHermitian(5, gen);
    const double t = traceProduct(HermitianOperator(a), HermitianOperator(b));
    EXPECT_NEAR(t, oracle::naiveTraceProduct(a, b).real(), 1e-12);
    EXPECT_NEAR(t, traceProduct(HermitianOperator(b), HermitianOperator(a)), 1e-10);
  }
}

TEST(TraceProduct, DimensionMismatch) {
  EXPECT_THROW(traceProduct(HermitianOperator::identity(2), HermitianOperator::identity(3)), DimensionMismatch);
}
