#ifndef CCQP_PROBLEM_HPP_
#define CCQP_PROBLEM_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ccqp/constraint_map.hpp"
#include "ccqp/prox.hpp"
#include "ccqp/quad_operator.hpp"
#include "ccqp/sym_matrix.hpp"

namespace ccqp {

/// Self-adjoint PSD operator on S^n, in the same enumerated forms as
/// QuadOperator but with matrix-level payloads. apply() is the matrix-level
/// route; lower() produces the equivalent operator on svec coordinates.
class PhiOperator {
 public:
  using Form = QuadOperator::Form;

  static PhiOperator zero();
  static PhiOperator identity_scaled(double alpha);
  /// X -> D o X (entrywise product with a nonnegative symmetric weight matrix).
  static PhiOperator hadamard(SymMatrix weights);
  /// Dense matrix acting on svec coordinates.
  static PhiOperator dense_vec(const Eigen::MatrixXd& m);
  /// X -> sum_i <B_i, X> B_i.
  static PhiOperator rank_one_sum(std::vector<SymMatrix> terms);

  Form form() const { return form_; }
  SymMatrix apply(const SymMatrix& x) const;
  QuadOperator lower(int n) const;

  double alpha() const { return alpha_; }
  const SymMatrix& weights() const { return weights_; }
  const Eigen::MatrixXd& dense_matrix() const { return dense_; }
  const std::vector<SymMatrix>& terms() const { return terms_; }

 private:
  explicit PhiOperator(Form f) : form_(f) {}

  Form form_;
  double alpha_ = 0.0;
  SymMatrix weights_;
  Eigen::MatrixXd dense_;
  std::vector<SymMatrix> terms_;
};

/// Quadratic semidefinite program data:
///   min over X in S^n of  (1/2)<X, phi(X)> + <C, X>
///   s.t. A X = b,  X psd.
struct CqsdpProblem {
  CqsdpProblem(PhiOperator phi_in, ConstraintMap a_in, Eigen::VectorXd b_in, SymMatrix c_in);

  int n = 0;
  int m = 0;
  PhiOperator phi;
  ConstraintMap A;
  Eigen::VectorXd b;
  SymMatrix C;

  double primal_objective(const SymMatrix& x) const;
};

/// Composite quadratic program data:
///   min over x of  theta*(x) + (1/2)<x, Q x> + <c, x>
///   s.t. A x = b,
/// solved through its dual in the variables (w, y, z). theta is supplied by
/// its prox; the conjugate side is synthesized from the same oracle.
struct CcqpProblem {
  int x_dim = 0;
  int y_dim = 0;
  QuadOperator Q = QuadOperator::zero(1);
  Eigen::MatrixXd A;        // y_dim x x_dim, surjective
  GramFactorization gram;   // factorization of A A^T
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::shared_ptr<const ProxFn> theta;

  /// Set when the x-space is svec(S^n); enables matrix-level diagnostics.
  std::optional<int> matrix_order;
  /// theta* is the PSD-cone indicator (complementarity residual applies).
  bool psd_embedding = false;

  /// Inflated largest-eigenvalue estimate of Q, cached at construction.
  double lambda_hat = 0.0;

  Eigen::VectorXd apply_A(const Eigen::VectorXd& x) const { return A * x; }
  Eigen::VectorXd apply_At(const Eigen::VectorXd& y) const { return A.transpose() * y; }
  Eigen::VectorXd grad_q(const Eigen::VectorXd& x) const { return Q.apply(x) + c; }
};

/// Builds a CcqpProblem, factorizing A A^T (throws SurjectivityViolation on
/// dependent rows) and caching the lambda_max estimate.
CcqpProblem make_ccqp(QuadOperator Q, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
                      std::shared_ptr<const ProxFn> theta,
                      std::optional<int> matrix_order = std::nullopt,
                      bool psd_embedding = false);

/// Embedding of the semidefinite problem into the composite model on svec
/// coordinates: Q = phi lowered, c = svec(C), same A and b, and theta the
/// conjugate view of the PSD-cone indicator (so theta* projects onto the cone).
CcqpProblem cqsdp_to_ccqp(const CqsdpProblem& p);

/// One KKT tuple for the composite problem.
struct KktPoint {
  Eigen::VectorXd w, y, z, x;
};

/// Seeded random instance satisfying the surjectivity and strict-feasibility
/// assumptions by construction: independent unit-norm constraint rows, b from
/// a generated positive definite point, phi a rank-`phi_rank` sum of
/// rank-one terms scaled so lambda_max is O(1). Deterministic in seed.
/// slater_out, when given, receives the strictly feasible point.
CqsdpProblem gen_random_cqsdp(int n, int m, std::uint64_t seed, int phi_rank,
                              SymMatrix* slater_out = nullptr);

/// Nearest-correlation-matrix instance for a symmetric G:
///   min (1/2)||X - G||^2  s.t. diag(X) = 1, X psd,
/// encoded with phi = identity, C = -G and diagonal-extraction rows.
CqsdpProblem gen_nearest_correlation(const SymMatrix& g);

/// Sampled validation of the structural invariants (self-adjointness and
/// positive semidefiniteness of phi/Q, dimension consistency). Throws
/// InputError on violation. Deterministic in seed.
void validate_problem(const CqsdpProblem& p, std::uint64_t seed = 0, int samples = 16);
void validate_problem(const CcqpProblem& p, std::uint64_t seed = 0, int samples = 16);

}  // namespace ccqp

#endif  // CCQP_PROBLEM_HPP_
