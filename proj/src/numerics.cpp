#include "maxstream/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>

namespace maxstream {

GaussHermiteRule::GaussHermiteRule(int order) {
  if (order < 1) throw std::invalid_argument("GaussHermiteRule: order must be positive");
  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
  // Hermite recurrence, weights sqrt(pi) times the squared first components.
  const Eigen::Index n = order;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 0; k + 1 < n; ++k) off[k] = std::sqrt(0.5 * static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("GaussHermiteRule: eigensolver failed");
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v = solver.eigenvectors()(0, k);
    nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()[k];
    weights[static_cast<std::size_t>(k)] = v * v / kInvSqrtPi;
  }
}

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("normal_quantile: u must lie in (0, 1)");
  return -GaussHermiteRule::kSqrt2 * boost::math::erfc_inv(2.0 * u);
}

double empirical_quantile(std::span<double> xs, double p) {
  if (xs.empty()) throw std::domain_error("empirical_quantile: empty sample");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("empirical_quantile: p must lie in (0, 1)");
  auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(xs.size())));
  k = std::clamp<std::size_t>(k, 1, xs.size()) - 1;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
  return xs[k];
}

MeanVar mean_var(std::span<const double> xs) {
  MeanVar r;
  if (xs.empty()) return r;
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.variance = ss / static_cast<double>(xs.size() - 1);
  }
  return r;
}

}  // namespace maxstream
