#include "ccqp/prox.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "ccqp/errors.hpp"
#include "ccqp/sym_matrix.hpp"

namespace ccqp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative tolerance for indicator membership.
double membership_tol(const Eigen::VectorXd& v) { return 1e-9 * (1.0 + v.norm()); }
}  // namespace

void ProxFn::check_args(double t, const Eigen::VectorXd& v) const {
  if (!(t > 0)) throw InputError(describe() + ": prox parameter must be positive");
  if (v.size() != dim()) {
    throw InputError(describe() + ": point has length " + std::to_string(v.size()) +
                     ", expected " + std::to_string(dim()));
  }
}

double ProxFn::value(const Eigen::VectorXd&) const {
  throw ValueOracleMissing(describe() + ": no value oracle");
}

Eigen::VectorXd ProxFn::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return v - t * prox(1.0 / t, v / t);
}

double ProxFn::conjugate_value(const Eigen::VectorXd&) const {
  throw ValueOracleMissing(describe() + ": no conjugate value oracle");
}

Eigen::VectorXd prox_conjugate(const ProxFn& f, double t, const Eigen::VectorXd& v) {
  return f.conjugate_prox(t, v);
}

double moreau_max_residual(const ProxFn& f, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> tdist(0.1, 10.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double t = tdist(rng);
    Eigen::VectorXd v(f.dim());
    for (int i = 0; i < v.size(); ++i) v[i] = 3.0 * gauss(rng);
    const Eigen::VectorXd lhs = f.conjugate_prox(t, v) + t * f.prox(1.0 / t, v / t);
    worst = std::max(worst, (lhs - v).norm() / (1.0 + v.norm()));
  }
  return worst;
}

// ---------------------------------------------------------------------------

PsdIndicator::PsdIndicator(int order) : order_(order) {
  if (order < 1) throw InputError("PsdIndicator: order must be >= 1");
}

int PsdIndicator::dim() const { return svec_dim(order_); }

Eigen::VectorXd PsdIndicator::prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return svec(psd_project(smat(v, order_)));
}

Eigen::VectorXd PsdIndicator::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  // Projection onto the polar (NSD) cone; t drops out for cones.
  return v - svec(psd_project(smat(v, order_)));
}

double PsdIndicator::value(const Eigen::VectorXd& v) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(smat(v, order_).mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -membership_tol(v) ? 0.0 : kInf;
}

double PsdIndicator::conjugate_value(const Eigen::VectorXd& v) const {
  return lambda_max_sym(smat(v, order_)) <= membership_tol(v) ? 0.0 : kInf;
}

std::string PsdIndicator::describe() const {
  return "psd_indicator(n=" + std::to_string(order_) + ")";
}

// ---------------------------------------------------------------------------

NonnegIndicator::NonnegIndicator(int d) : d_(d) {
  if (d < 1) throw InputError("NonnegIndicator: dimension must be >= 1");
}

Eigen::VectorXd NonnegIndicator::prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return v.cwiseMax(0.0);
}

Eigen::VectorXd NonnegIndicator::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return v.cwiseMin(0.0);
}

double NonnegIndicator::value(const Eigen::VectorXd& v) const {
  return v.minCoeff() >= -membership_tol(v) ? 0.0 : kInf;
}

double NonnegIndicator::conjugate_value(const Eigen::VectorXd& v) const {
  return v.maxCoeff() <= membership_tol(v) ? 0.0 : kInf;
}

std::string NonnegIndicator::describe() const { return "nonneg_indicator"; }

// ---------------------------------------------------------------------------

BoxIndicator::BoxIndicator(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.size() < 1) throw InputError("BoxIndicator: bad bounds");
  if ((hi_ - lo_).minCoeff() < 0) throw InputError("BoxIndicator: lower bound exceeds upper");
}

BoxIndicator::BoxIndicator(int d, double lo, double hi)
    : BoxIndicator(Eigen::VectorXd::Constant(d, lo), Eigen::VectorXd::Constant(d, hi)) {}

Eigen::VectorXd BoxIndicator::prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return v.cwiseMax(lo_).cwiseMin(hi_);
}

Eigen::VectorXd BoxIndicator::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  // Moreau with the inner projection folded in: v - clamp(v, t lo, t hi).
  return v - v.cwiseMax(t * lo_).cwiseMin(t * hi_);
}

double BoxIndicator::value(const Eigen::VectorXd& v) const {
  const double tol = membership_tol(v);
  if ((v - lo_).minCoeff() < -tol || (hi_ - v).minCoeff() < -tol) return kInf;
  return 0.0;
}

double BoxIndicator::conjugate_value(const Eigen::VectorXd& v) const {
  // Support function of the box.
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += std::max(lo_[i] * v[i], hi_[i] * v[i]);
  return s;
}

std::string BoxIndicator::describe() const { return "box_indicator"; }

// ---------------------------------------------------------------------------

ScaledL1::ScaledL1(int d, double alpha) : d_(d), alpha_(alpha) {
  if (d < 1) throw InputError("ScaledL1: dimension must be >= 1");
  if (!(alpha > 0)) throw InputError("ScaledL1: alpha must be positive");
}

Eigen::VectorXd ScaledL1::prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  const double thr = t * alpha_;
  Eigen::VectorXd out(d_);
  for (int i = 0; i < d_; ++i) {
    const double a = v[i];
    out[i] = a > thr ? a - thr : (a < -thr ? a + thr : 0.0);
  }
  return out;
}

Eigen::VectorXd ScaledL1::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return v.cwiseMax(-alpha_).cwiseMin(alpha_);
}

double ScaledL1::value(const Eigen::VectorXd& v) const { return alpha_ * v.lpNorm<1>(); }

double ScaledL1::conjugate_value(const Eigen::VectorXd& v) const {
  return v.cwiseAbs().maxCoeff() <= alpha_ + membership_tol(v) ? 0.0 : kInf;
}

std::string ScaledL1::describe() const { return "l1(alpha=" + std::to_string(alpha_) + ")"; }

// ---------------------------------------------------------------------------

ZeroFn::ZeroFn(int d) : d_(d) {
  if (d < 1) throw InputError("ZeroFn: dimension must be >= 1");
}

Eigen::VectorXd ZeroFn::prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return v;
}

Eigen::VectorXd ZeroFn::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  check_args(t, v);
  return Eigen::VectorXd::Zero(d_);
}

double ZeroFn::value(const Eigen::VectorXd& v) const {
  check_args(1.0, v);
  return 0.0;
}

double ZeroFn::conjugate_value(const Eigen::VectorXd& v) const {
  return v.norm() <= membership_tol(v) ? 0.0 : kInf;
}

std::string ZeroFn::describe() const { return "zero"; }

// ---------------------------------------------------------------------------

ConjugateFn::ConjugateFn(std::shared_ptr<const ProxFn> inner) : inner_(std::move(inner)) {
  if (!inner_) throw InputError("ConjugateFn: null oracle");
}

Eigen::VectorXd ConjugateFn::prox(double t, const Eigen::VectorXd& v) const {
  return inner_->conjugate_prox(t, v);
}

Eigen::VectorXd ConjugateFn::conjugate_prox(double t, const Eigen::VectorXd& v) const {
  return inner_->prox(t, v);
}

double ConjugateFn::value(const Eigen::VectorXd& v) const { return inner_->conjugate_value(v); }

double ConjugateFn::conjugate_value(const Eigen::VectorXd& v) const { return inner_->value(v); }

std::string ConjugateFn::describe() const { return "conjugate(" + inner_->describe() + ")"; }

}  // namespace ccqp
