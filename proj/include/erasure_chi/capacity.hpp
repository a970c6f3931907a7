#pragma once

#include <span>
#include <vector>

#include "erasure_chi/entropy.hpp"

namespace erasure_chi {

/// Slack allowed when checking that chi never decreases along the iteration.
inline constexpr double kMonotonicityTolerance = 1e-12;

struct CapacityResult {
  std::vector<double> pStar;
  double chiStar = 0.0;
  double kktResidual = 0.0;
  int iterations = 0;
  bool converged = false;
  /// chi at the start and after every update.
  std::vector<double> chiTrace;
};

/// chi(p) = S(sum p_i rho_i) - sum p_i S(rho_i). Throws InvalidDistribution
/// or DimensionMismatch.
double chiOfDistribution(std::span<const DensityMatrix> states, std::span<const double> p);

/// d chi / d p_i = S(rho_i || rho_bar) - 1. Requires every p_i > 1e-12,
/// otherwise throws SupportError.
std::vector<double> chiGradient(std::span<const DensityMatrix> states, std::span<const double> p);

/// max_i S(rho_i || rho_bar) - chi(p); zero exactly at the optimum. Infinite
/// when an unused letter lies outside the support of rho_bar.
double kktResidual(std::span<const DensityMatrix> states, std::span<const double> p);

/// Multiplicative fixed point p_i <- p_i exp(S(rho_i || rho_bar)) / Z from the
/// uniform start, stopping once the KKT residual drops below `tol`. Reaching
/// `maxIter` is not an error: the result carries converged = false. Throws
/// InternalInconsistency if chi ever decreases.
CapacityResult optimizeInputDistribution(std::span<const DensityMatrix> states, double tol, int maxIter);

}  // namespace erasure_chi
