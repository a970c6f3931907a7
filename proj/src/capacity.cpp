#include "erasure_chi/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "erasure_chi/parallel.hpp"

namespace erasure_chi {

namespace {

// Below this many letters the per-letter work is too small to share out.
constexpr std::size_t kParallelLetters = 32;

void checkShapes(std::span<const DensityMatrix> states, std::span<const double> p) {
  if (states.empty()) throw DomainError("state list is empty");
  if (states.size() != p.size()) {
    std::ostringstream os;
    os << p.size() << " probabilities for " << states.size() << " states";
    throw DimensionMismatch(os.str());
  }
  for (const auto& s : states)
    if (s.dim() != states.front().dim()) throw DimensionMismatch("states of unequal dimension");
}

DensityMatrix mixture(std::span<const DensityMatrix> states, std::span<const double> p) {
  const Eigen::Index n = states.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < states.size(); ++i) sum += std::max(p[i], 0.0) * states[i].matrix();
  return DensityMatrix(HermitianOperator(std::move(sum)));
}

double chiFromMixture(std::span<const DensityMatrix> states, std::span<const double> p, const DensityMatrix& avg) {
  double mean = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (p[i] > 0.0) mean += p[i] * vonNeumannEntropy(states[i]).nats;
  return EntropyValue::fromNats(vonNeumannEntropy(avg).nats - mean).nats;
}

std::vector<EntropyValue> divergencesFrom(std::span<const DensityMatrix> states, const DensityMatrix& avg) {
  std::vector<EntropyValue> d(states.size());
  forEachIndex(states.size(), states.size() >= kParallelLetters,
               [&](std::size_t i) { d[i] = relativeEntropy(states[i], avg); });
  return d;
}

double residualFrom(const std::vector<EntropyValue>& d, double chi) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& x : d) worst = std::max(worst, x.value());
  const double r = worst - chi;
  return (r < 0.0 && r > -kNegativeRoundoff) ? 0.0 : r;
}

}  // namespace

double chiOfDistribution(std::span<const DensityMatrix> states, std::span<const double> p) {
  checkShapes(states, p);
  validateDistribution(p);
  return chiFromMixture(states, p, mixture(states, p));
}

std::vector<double> chiGradient(std::span<const DensityMatrix> states, std::span<const double> p) {
  checkShapes(states, p);
  validateDistribution(p);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] <= kZeroCutoff) {
      std::ostringstream os;
      os << "gradient needs p_i > " << kZeroCutoff << "; p_" << i << " = " << p[i];
      throw SupportError(os.str());
    }
  const auto d = divergencesFrom(states, mixture(states, p));
  std::vector<double> g(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g[i] = d[i].value() - 1.0;
  return g;
}

double kktResidual(std::span<const DensityMatrix> states, std::span<const double> p) {
  checkShapes(states, p);
  validateDistribution(p);
  const DensityMatrix avg = mixture(states, p);
  return residualFrom(divergencesFrom(states, avg), chiFromMixture(states, p, avg));
}

CapacityResult optimizeInputDistribution(std::span<const DensityMatrix> states, double tol, int maxIter) {
  if (states.empty()) throw DomainError("state list is empty");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (maxIter < 1) throw DomainError("iteration budget must be at least 1");

  CapacityResult r;
  r.pStar.assign(states.size(), 1.0 / static_cast<double>(states.size()));
  checkShapes(states, r.pStar);

  for (;;) {
    const DensityMatrix avg = mixture(states, r.pStar);
    const double chi = chiFromMixture(states, r.pStar, avg);
    if (!r.chiTrace.empty() && chi < r.chiTrace.back() - kMonotonicityTolerance) {
      std::ostringstream os;
      os << "chi decreased from " << r.chiTrace.back() << " to " << chi << " at iteration " << r.iterations;
      throw InternalInconsistency(os.str());
    }
    r.chiTrace.push_back(chi);
    r.chiStar = chi;

    const auto d = divergencesFrom(states, avg);
    r.kktResidual = residualFrom(d, chi);
    if (r.kktResidual < tol) {
      r.converged = true;
      return r;
    }
    if (r.iterations >= maxIter) return r;

    // Shifting by the largest exponent leaves the normalised update unchanged.
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.size(); ++i)
      if (r.pStar[i] > 0.0) shift = std::max(shift, d[i].value());
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      r.pStar[i] = r.pStar[i] > 0.0 ? r.pStar[i] * std::exp(d[i].value() - shift) : 0.0;
      total += r.pStar[i];
    }
    for (auto& x : r.pStar) x /= total;
    ++r.iterations;
  }
}

}  // namespace erasure_chi
