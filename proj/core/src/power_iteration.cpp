#include "ccqp/power_iteration.hpp"

#include <cmath>
#include <random>

#include "ccqp/errors.hpp"

namespace ccqp {

double power_lambda_max(const LinOp& op, double tol, int max_iter) {
  if (op.dim < 1 || !op.apply) throw InputError("power_lambda_max: empty operator");
  if (!(tol > 0)) throw InputError("power_lambda_max: tol must be positive");

  // Fixed seed: estimates are reproducible and, for a PSD operator, the
  // start is almost surely not orthogonal to the leading eigenspace.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(op.dim);
  for (int i = 0; i < op.dim; ++i) v[i] = gauss(rng);
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd av = op.apply(v);
    const double norm_av = av.norm();
    if (norm_av <= 1e-14) return 0.0;  // numerically the zero operator
    lambda = v.dot(av);                // Rayleigh quotient, v is unit
    const double residual = (av - lambda * v).norm();
    if (residual <= tol * std::max(std::abs(lambda), 1.0)) return std::max(lambda, 0.0);
    v = av / norm_av;
  }
  throw NoConvergence("power_lambda_max: no convergence within " + std::to_string(max_iter) +
                          " iterations",
                      std::max(lambda, 0.0));
}

double inflated_lambda_max(const LinOp& op) {
  return power_lambda_max(op) * (1.0 + 1e-6);
}

}  // namespace ccqp
