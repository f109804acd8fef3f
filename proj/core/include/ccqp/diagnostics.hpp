#ifndef CCQP_DIAGNOSTICS_HPP_
#define CCQP_DIAGNOSTICS_HPP_

#include <Eigen/Dense>

#include "ccqp/problem.hpp"

namespace ccqp {

/// Relative KKT residuals of a (w, y, z, x) tuple:
///   eta_primal = ||A x - b|| / (1 + ||b||)
///   eta_dual   = ||A*y + z - Q w - c|| / (1 + ||c||)
///   eta_w      = ||Q (w - x)|| / (1 + ||Q x||)
///   eta_theta  = ||x - J_{sigma d theta*}(x - sigma z)|| / (1 + ||x||)
///   eta_comp   = |<z, x>| / (1 + ||x|| ||z||) plus the cone-infeasibility
///                norms of x and z (PSD embeddings only).
struct KktResidual {
  double eta_primal = 0.0;
  double eta_dual = 0.0;
  double eta_w = 0.0;
  double eta_theta = 0.0;
  double eta_comp = 0.0;
  bool has_comp = false;

  double max() const;
};

KktResidual kkt_residual(const CcqpProblem& p, double sigma, const KktPoint& pt);

/// Value of the augmented Lagrangian of the dual problem,
///   (1/2)<w, Q w> - <b, y> + theta(-z) + <A*y + z - Q w - c, x>
///   + (sigma/2) ||A*y + z - Q w - c||^2.
/// Returns +infinity when -z is outside dom theta. Throws ValueOracleMissing
/// if theta has no value oracle.
double aug_lagrangian_value(const CcqpProblem& p, double sigma, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                            const Eigen::VectorXd& x);

/// Objective values for reporting: the primal objective of the composite
/// problem at x and the dual (minimization-form) objective at (w, y, z).
/// Indicator terms contribute their finite part (0); membership is what the
/// residuals measure.
struct ObjectiveValues {
  double primal = 0.0;
  double dual = 0.0;
};
ObjectiveValues objective_values(const CcqpProblem& p, const KktPoint& pt);

}  // namespace ccqp

#endif  // CCQP_DIAGNOSTICS_HPP_
