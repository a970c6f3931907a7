#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "erasure_chi/capacity.hpp"
#include "oracles.hpp"

using namespace erasure_chi;

namespace {

constexpr double kZeroPlusNats = 0.4164955306996875;

DensityMatrix pure(Complex a, Complex b) { return DensityMatrix::fromPure(Eigen::Vector2cd(a, b)); }

std::vector<DensityMatrix> orthogonalPair() { return {pure(1, 0), pure(0, 1)}; }

std::vector<DensityMatrix> zeroPlus() {
  const double h = 1 / std::numbers::sqrt2;
  return {pure(1, 0), pure(h, h)};
}

std::vector<ComplexMatrix> matrices(const std::vector<DensityMatrix>& states) {
  std::vector<ComplexMatrix> out;
  for (const auto& s : states) out.push_back(s.matrix());
  return out;
}

std::vector<DensityMatrix> randomStates(Eigen::Index dim, std::size_t n, RngStream rng) {
  std::vector<DensityMatrix> out;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream child = rng.split(i);
    const auto rank = 1 + static_cast<Eigen::Index>(child() % static_cast<std::uint64_t>(dim));
    out.push_back(randomDensityMatrix(dim, rank, child.split(1)));
  }
  return out;
}

}  // namespace

TEST(ChiOfDistribution, Examples) {
  EXPECT_NEAR(chiOfDistribution(zeroPlus(), std::vector<double>{1.0, 0.0}), 0.0, 1e-14);
  EXPECT_NEAR(chiOfDistribution(orthogonalPair(), std::vector<double>{0.5, 0.5}), std::numbers::ln2, 1e-14);
  EXPECT_NEAR(chiOfDistribution(zeroPlus(), std::vector<double>{0.5, 0.5}), kZeroPlusNats, 1e-12);
}

TEST(ChiOfDistribution, Errors) {
  EXPECT_THROW(chiOfDistribution(zeroPlus(), std::vector<double>{0.5, 0.4}), InvalidDistribution);
  EXPECT_THROW(chiOfDistribution(zeroPlus(), std::vector<double>{1.0}), DimensionMismatch);
}

TEST(ChiOfDistribution, MidpointConcavity) {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Eigen::Index dim = 2 + t % 4;
    const std::size_t n = 2 + t % 4;
    const auto states = randomStates(dim, n, RngStream(91).split(t));
    const auto p = randomSimplexPoint(n, RngStream(92).split(t));
    const auto q = randomSimplexPoint(n, RngStream(93).split(t));
    std::vector<double> mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (p[i] + q[i]);
    EXPECT_GE(chiOfDistribution(states, mid),
              0.5 * (chiOfDistribution(states, p) + chiOfDistribution(states, q)) - 1e-10);
  }
}

TEST(ChiGradient, EqualStates) {
  const DensityMatrix rho = randomDensityMatrix(3, 2, RngStream(94));
  const auto g = chiGradient(std::vector<DensityMatrix>{rho, rho, rho}, std::vector<double>{0.2, 0.3, 0.5});
  for (double x : g) EXPECT_NEAR(x, -1.0, 1e-10);
}

TEST(ChiGradient, OrthogonalPair) {
  const auto g = chiGradient(orthogonalPair(), std::vector<double>{0.5, 0.5});
  EXPECT_NEAR(g[0], std::numbers::ln2 - 1.0, 1e-14);
  EXPECT_NEAR(g[1], std::numbers::ln2 - 1.0, 1e-14);
}

TEST(ChiGradient, MatchesFiniteDifferences) {
  const double h = 1e-5;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Eigen::Index dim = 2 + t % 4;
    const std::size_t n = 3;
    const auto states = randomStates(dim, n, RngStream(95).split(t));
    auto p = randomSimplexPoint(n, RngStream(96).split(t));
    for (auto& x : p) x = 0.8 * x + 0.2 / n;
    const auto g = chiGradient(states, p);
    const auto m = matrices(states);
    for (std::size_t i = 0; i < n; ++i) {
      auto up = p;
      auto down = p;
      up[i] += h;
      down[i] -= h;
      const double fd = (oracle::chi(m, up) - oracle::chi(m, down)) / (2 * h);
      EXPECT_LT(std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])), 1e-5) << "trial " << t << " i " << i;
    }
  }
}

TEST(ChiGradient, NeedsInteriorPoint) {
  EXPECT_THROW(chiGradient(zeroPlus(), std::vector<double>{1.0, 0.0}), SupportError);
}

TEST(KktResidual, Examples) {
  EXPECT_NEAR(kktResidual(orthogonalPair(), std::vector<double>{0.5, 0.5}), 0.0, 1e-9);
  EXPECT_GT(kktResidual(orthogonalPair(), std::vector<double>{0.9, 0.1}), 0.1);
  // An unused letter off the support of the mixture has infinite divergence.
  EXPECT_TRUE(std::isinf(kktResidual(orthogonalPair(), std::vector<double>{1.0, 0.0})));
}

TEST(Optimizer, OrthogonalPair) {
  const CapacityResult r = optimizeInputDistribution(orthogonalPair(), 1e-9, 1000);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 5);
  EXPECT_NEAR(r.pStar[0], 0.5, 1e-12);
  EXPECT_NEAR(r.chiStar, std::numbers::ln2, 1e-12);
  EXPECT_NEAR(r.chiStar / std::numbers::ln2, 1.0, 1e-9);
}

TEST(Optimizer, DuplicateStates) {
  const DensityMatrix rho = randomDensityMatrix(2, 2, RngStream(97));
  const CapacityResult r = optimizeInputDistribution(std::vector<DensityMatrix>{rho, rho}, 1e-9, 1000);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.chiStar, 0.0, 1e-12);
  EXPECT_LT(r.kktResidual, 1e-9);
}

TEST(Optimizer, ZeroPlusIsSymmetric) {
  const CapacityResult r = optimizeInputDistribution(zeroPlus(), 1e-9, 1000);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.pStar[0], 0.5, 1e-9);
  EXPECT_NEAR(r.chiStar, kZeroPlusNats, 1e-12);
  EXPECT_NEAR(oracle::gridMaxChi(matrices(zeroPlus())), kZeroPlusNats, 1e-6);
}

TEST(Optimizer, TwoStateInstancesMatchGrid) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Eigen::Index dim = 2 + t % 3;
    const auto states = randomStates(dim, 2, RngStream(98).split(t));
    const CapacityResult r = optimizeInputDistribution(states, 1e-8, 100000);
    EXPECT_TRUE(r.converged) << "trial " << t;
    EXPECT_LT(r.kktResidual, 1e-6);
    EXPECT_LE(std::abs(r.chiStar - oracle::gridMaxChi(matrices(states))), 1e-4) << "trial " << t;
    for (std::size_t k = 1; k < r.chiTrace.size(); ++k) EXPECT_GE(r.chiTrace[k], r.chiTrace[k - 1] - 1e-12);
  }
}

TEST(Optimizer, ManyLetterInvariants) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Eigen::Index dim = 2 + t % 4;
    const std::size_t n = 2 + t % 5;
    const auto states = randomStates(dim, n, RngStream(99).split(t));
    const CapacityResult r = optimizeInputDistribution(states, 1e-7, 100000);
    EXPECT_TRUE(r.converged) << "trial " << t;
    EXPECT_LT(r.kktResidual, 1e-7);
    EXPECT_GE(r.kktResidual, -1e-12);
    double sum = 0.0;
    for (double x : r.pStar) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_NEAR(r.chiStar, chiOfDistribution(states, r.pStar), 1e-10);
    EXPECT_LE(r.chiStar, std::log(static_cast<double>(dim)) + 1e-12);
  }
}

TEST(Optimizer, FullOrthogonalBasisReachesLogDim) {
  for (int dim = 2; dim <= 5; ++dim) {
    std::vector<DensityMatrix> basis;
    for (int k = 0; k < dim; ++k) {
      ComplexVector v = ComplexVector::Zero(dim);
      v(k) = 1;
      basis.push_back(DensityMatrix::fromPure(v));
    }
    EXPECT_NEAR(optimizeInputDistribution(basis, 1e-9, 100).chiStar, std::log(dim), 1e-12);
  }
}

TEST(Optimizer, BudgetExhaustionIsAResult) {
  const auto states = randomStates(3, 4, RngStream(100));
  const CapacityResult r = optimizeInputDistribution(states, 1e-15, 2);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
  EXPECT_EQ(r.chiTrace.size(), 3u);
}

TEST(Optimizer, ArgumentChecks) {
  EXPECT_THROW(optimizeInputDistribution(std::vector<DensityMatrix>{}, 1e-9, 10), DomainError);
  EXPECT_THROW(optimizeInputDistribution(zeroPlus(), 0.0, 10), DomainError);
  EXPECT_THROW(optimizeInputDistribution(zeroPlus(), 1e-9, 0), DomainError);
}
