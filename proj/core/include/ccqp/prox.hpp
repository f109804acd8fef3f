#ifndef CCQP_PROX_HPP_
#define CCQP_PROX_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>

namespace ccqp {

/// A closed proper convex function given through its proximal map,
///   prox(t, v) = argmin_s { f(s) + (1/(2t)) ||s - v||^2 },  t > 0.
///
/// The conjugate side is always available: conjugate_prox defaults to the
/// Moreau identity  J_{t df*}(v) = v - t prox(1/t, v/t), so one oracle serves
/// both f and f*. Shipped instances override it with the closed form.
/// Function values are optional; indicator instances evaluate membership at a
/// relative tolerance of 1e-9 and return 0 or +infinity.
class ProxFn {
 public:
  virtual ~ProxFn() = default;

  virtual int dim() const = 0;
  virtual Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const = 0;

  /// f(v); throws ValueOracleMissing unless the instance provides one.
  virtual double value(const Eigen::VectorXd& v) const;
  /// J_{t df*}(v); default synthesizes via the Moreau identity.
  virtual Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const;
  /// f*(v); throws ValueOracleMissing unless provided.
  virtual double conjugate_value(const Eigen::VectorXd& v) const;

  virtual std::string describe() const = 0;

 protected:
  void check_args(double t, const Eigen::VectorXd& v) const;
};

/// Resolvent of the conjugate: J_{t df*}(v), via the oracle's conjugate side.
Eigen::VectorXd prox_conjugate(const ProxFn& f, double t, const Eigen::VectorXd& v);

/// Largest relative residual of the Moreau identity
///   v = conjugate_prox(t, v) + t prox(1/t, v/t)
/// over `samples` seeded (t, v) pairs. Identically small for a correct oracle
/// pair regardless of which side is closed form.
double moreau_max_residual(const ProxFn& f, std::uint64_t seed = 7, int samples = 100);

/// Indicator of the PSD cone of order n, on svec coordinates.
/// prox = projection onto the cone; conjugate is the NSD-cone indicator.
class PsdIndicator final : public ProxFn {
 public:
  explicit PsdIndicator(int order);
  int dim() const override;
  int order() const { return order_; }
  Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const override;
  Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const override;
  double value(const Eigen::VectorXd& v) const override;
  double conjugate_value(const Eigen::VectorXd& v) const override;
  std::string describe() const override;

 private:
  int order_;
};

/// Indicator of the nonnegative orthant.
class NonnegIndicator final : public ProxFn {
 public:
  explicit NonnegIndicator(int d);
  int dim() const override { return d_; }
  Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const override;
  Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const override;
  double value(const Eigen::VectorXd& v) const override;
  double conjugate_value(const Eigen::VectorXd& v) const override;
  std::string describe() const override;

 private:
  int d_;
};

/// Indicator of the box [lo, hi]; the conjugate is the box support function.
class BoxIndicator final : public ProxFn {
 public:
  BoxIndicator(Eigen::VectorXd lo, Eigen::VectorXd hi);
  BoxIndicator(int d, double lo, double hi);
  int dim() const override { return static_cast<int>(lo_.size()); }
  const Eigen::VectorXd& lower() const { return lo_; }
  const Eigen::VectorXd& upper() const { return hi_; }
  Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const override;
  Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const override;
  double value(const Eigen::VectorXd& v) const override;
  double conjugate_value(const Eigen::VectorXd& v) const override;
  std::string describe() const override;

 private:
  Eigen::VectorXd lo_, hi_;
};

/// alpha * ||.||_1; prox is soft thresholding, the conjugate is the
/// indicator of the box [-alpha, alpha].
class ScaledL1 final : public ProxFn {
 public:
  ScaledL1(int d, double alpha);
  int dim() const override { return d_; }
  double alpha() const { return alpha_; }
  Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const override;
  Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const override;
  double value(const Eigen::VectorXd& v) const override;
  double conjugate_value(const Eigen::VectorXd& v) const override;
  std::string describe() const override;

 private:
  int d_;
  double alpha_;
};

/// The zero function; its conjugate is the indicator of {0}.
class ZeroFn final : public ProxFn {
 public:
  explicit ZeroFn(int d);
  int dim() const override { return d_; }
  Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const override;
  Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const override;
  double value(const Eigen::VectorXd& v) const override;
  double conjugate_value(const Eigen::VectorXd& v) const override;
  std::string describe() const override;

 private:
  int d_;
};

/// View of the Fenchel conjugate of another oracle: swaps the two prox and
/// value channels. Wrapping twice restores the original function.
class ConjugateFn final : public ProxFn {
 public:
  explicit ConjugateFn(std::shared_ptr<const ProxFn> inner);
  int dim() const override { return inner_->dim(); }
  const ProxFn& inner() const { return *inner_; }
  Eigen::VectorXd prox(double t, const Eigen::VectorXd& v) const override;
  Eigen::VectorXd conjugate_prox(double t, const Eigen::VectorXd& v) const override;
  double value(const Eigen::VectorXd& v) const override;
  double conjugate_value(const Eigen::VectorXd& v) const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const ProxFn> inner_;
};

}  // namespace ccqp

#endif  // CCQP_PROX_HPP_
