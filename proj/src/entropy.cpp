#include "erasure_chi/entropy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace erasure_chi {

EntropyValue EntropyValue::fromNats(double nats) {
  if (std::isnan(nats)) throw InternalInconsistency("entropy evaluated to NaN");
  if (nats < -kNegativeRoundoff) {
    std::ostringstream os;
    os << "entropy-like quantity " << nats << " is negative beyond round-off";
    throw InternalInconsistency(os.str());
  }
  return {nats < 0.0 ? 0.0 : nats, false};
}

double EntropyValue::bits() const {
  return infinite ? std::numeric_limits<double>::infinity() : nats / std::numbers::ln2;
}

double EntropyValue::value() const { return infinite ? std::numeric_limits<double>::infinity() : nats; }

namespace {

double xlogx(const RealVector& lambda) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    if (lambda(k) > kZeroCutoff) s += lambda(k) * std::log(lambda(k));
  return s;
}

}  // namespace

EntropyValue vonNeumannEntropy(const DensityMatrix& rho) {
  return EntropyValue::fromNats(-xlogx(rho.spectrum().eigenvalues));
}

EntropyValue relativeEntropy(const DensityMatrix& rho, const DensityMatrix& omega) {
  if (rho.dim() != omega.dim()) {
    std::ostringstream os;
    os << "relative entropy of dimensions " << rho.dim() << " and " << omega.dim();
    throw DimensionMismatch(os.str());
  }
  const Spectrum& w = omega.spectrum();
  double cross = 0.0;  // tr rho ln omega on supp(omega)
  for (Eigen::Index k = 0; k < w.dim(); ++k) {
    const auto vec = w.eigenvectors.col(k);
    const double weight = (vec.adjoint() * rho.matrix() * vec).value().real();
    const double mu = clipEigenvalue(w.eigenvalues(k));
    if (mu == 0.0) {
      if (weight > kZeroCutoff) return EntropyValue::infinity();
      continue;
    }
    cross += weight * std::log(mu);
  }
  return EntropyValue::fromNats(xlogx(rho.spectrum().eigenvalues) - cross);
}

double meanLetterEntropy(const Ensemble& e) {
  double s = 0.0;
  for (const auto& m : e.members()) s += m.probability * vonNeumannEntropy(m.state).nats;
  return s;
}

EntropyValue holevoChi(const Ensemble& e) {
  return EntropyValue::fromNats(vonNeumannEntropy(averageState(e)).nats - meanLetterEntropy(e));
}

EntropyValue chiViaRelativeEntropy(const Ensemble& e) {
  const DensityMatrix avg = averageState(e);
  double chi = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& m = e.members()[i];
    if (m.probability == 0.0) continue;
    const EntropyValue d = relativeEntropy(m.state, avg);
    if (d.infinite) {
      std::ostringstream os;
      os << "letter " << i << " is not supported on the average state";
      throw InternalInconsistency(os.str());
    }
    chi += m.probability * d.nats;
  }
  return EntropyValue::fromNats(chi);
}

void validateDistribution(std::span<const double> p) {
  if (p.empty()) throw InvalidDistribution("empty distribution");
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!std::isfinite(p[k]) || p[k] < -kSimplexTolerance) {
      std::ostringstream os;
      os << "entry " << k << " is " << p[k];
      throw InvalidDistribution(os.str());
    }
    total += p[k];
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os << "distribution sums to " << total;
    throw InvalidDistribution(os.str());
  }
}

EntropyValue shannonEntropy(std::span<const double> p) {
  validateDistribution(p);
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return EntropyValue::fromNats(s);
}

EntropyValue classicalMutualInformation(const Eigen::MatrixXd& joint) {
  if (joint.size() == 0) throw InvalidDistribution("empty joint distribution");
  if (!joint.allFinite() || joint.minCoeff() < -kSimplexTolerance)
    throw InvalidDistribution("joint distribution has negative or non-finite entries");
  if (std::abs(joint.sum() - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os << "joint distribution sums to " << joint.sum();
    throw InvalidDistribution(os.str());
  }
  const Eigen::VectorXd rows = joint.rowwise().sum();
  const Eigen::RowVectorXd cols = joint.colwise().sum();
  double mi = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i)
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double pij = joint(i, j);
      if (pij > 0.0) mi += pij * std::log(pij / (rows(i) * cols(j)));
    }
  return EntropyValue::fromNats(mi);
}

}  // namespace erasure_chi
