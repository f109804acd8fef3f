#include "ccqp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccqp/errors.hpp"

namespace ccqp {

double KktResidual::max() const {
  double m = std::max({eta_primal, eta_dual, eta_w, eta_theta});
  if (has_comp) m = std::max(m, eta_comp);
  return m;
}

KktResidual kkt_residual(const CcqpProblem& p, double sigma, const KktPoint& pt) {
  if (!(sigma > 0)) throw InputError("kkt_residual: sigma must be positive");
  if (pt.w.size() != p.x_dim || pt.z.size() != p.x_dim || pt.x.size() != p.x_dim ||
      pt.y.size() != p.y_dim) {
    throw InputError("kkt_residual: point dimensions do not match the problem");
  }
  KktResidual r;
  r.eta_primal = (p.apply_A(pt.x) - p.b).norm() / (1.0 + p.b.norm());

  const Eigen::VectorXd qw = p.Q.apply(pt.w);
  r.eta_dual = (p.apply_At(pt.y) + pt.z - qw - p.c).norm() / (1.0 + p.c.norm());

  const Eigen::VectorXd qx = p.Q.apply(pt.x);
  r.eta_w = (qw - qx).norm() / (1.0 + qx.norm());

  // 0 in x - d theta(-z), tested through the resolvent fixed point
  // x = J_{sigma d theta*}(x - sigma z).
  const Eigen::VectorXd fixed = p.theta->conjugate_prox(sigma, pt.x - sigma * pt.z);
  r.eta_theta = (pt.x - fixed).norm() / (1.0 + pt.x.norm());

  if (p.psd_embedding && p.matrix_order) {
    const int n = *p.matrix_order;
    const SymMatrix xm = smat(pt.x, n);
    const SymMatrix zm = smat(pt.z, n);
    const double comp = std::abs(dot(zm, xm)) / (1.0 + xm.norm() * zm.norm());
    const double x_inf = (xm - psd_project(xm)).norm() / (1.0 + xm.norm());
    const double z_inf = (zm - psd_project(zm)).norm() / (1.0 + zm.norm());
    r.eta_comp = comp + x_inf + z_inf;
    r.has_comp = true;
  }
  return r;
}

double aug_lagrangian_value(const CcqpProblem& p, double sigma, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                            const Eigen::VectorXd& x) {
  if (!(sigma > 0)) throw InputError("aug_lagrangian_value: sigma must be positive");
  const double theta_neg_z = p.theta->value(-z);
  if (std::isinf(theta_neg_z)) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd qw = p.Q.apply(w);
  const Eigen::VectorXd dual_res = p.apply_At(y) + z - qw - p.c;
  return 0.5 * w.dot(qw) - p.b.dot(y) + theta_neg_z + dual_res.dot(x) +
         0.5 * sigma * dual_res.squaredNorm();
}

ObjectiveValues objective_values(const CcqpProblem& p, const KktPoint& pt) {
  ObjectiveValues v;
  double theta_star = 0.0;
  double theta_neg_z = 0.0;
  try {
    theta_star = p.theta->conjugate_value(pt.x);
  } catch (const ValueOracleMissing&) {
    theta_star = 0.0;
  }
  try {
    theta_neg_z = p.theta->value(-pt.z);
  } catch (const ValueOracleMissing&) {
    theta_neg_z = 0.0;
  }
  if (std::isinf(theta_star)) theta_star = 0.0;
  if (std::isinf(theta_neg_z)) theta_neg_z = 0.0;
  const Eigen::VectorXd qw = p.Q.apply(pt.w);
  v.primal = 0.5 * pt.x.dot(p.Q.apply(pt.x)) + p.c.dot(pt.x) + theta_star;
  v.dual = 0.5 * pt.w.dot(qw) - p.b.dot(pt.y) + theta_neg_z;
  return v;
}

}  // namespace ccqp
