#include "ccqp/problem.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "ccqp/errors.hpp"

namespace ccqp {

// --------------------------------------------------------------------------
// PhiOperator

PhiOperator PhiOperator::zero() { return PhiOperator(Form::zero); }

PhiOperator PhiOperator::identity_scaled(double alpha) {
  if (alpha < 0) throw InputError("PhiOperator: scaled identity needs alpha >= 0");
  PhiOperator p(Form::identity_scaled);
  p.alpha_ = alpha;
  return p;
}

PhiOperator PhiOperator::hadamard(SymMatrix weights) {
  if (weights.mat().minCoeff() < 0) {
    throw InputError("PhiOperator: Hadamard weights must be nonnegative for a PSD operator");
  }
  PhiOperator p(Form::hadamard_diag);
  p.weights_ = std::move(weights);
  return p;
}

PhiOperator PhiOperator::dense_vec(const Eigen::MatrixXd& m) {
  PhiOperator p(Form::dense_vec);
  p.dense_ = 0.5 * (m + m.transpose());
  return p;
}

PhiOperator PhiOperator::rank_one_sum(std::vector<SymMatrix> terms) {
  PhiOperator p(Form::rank_one_sum);
  p.terms_ = std::move(terms);
  return p;
}

SymMatrix PhiOperator::apply(const SymMatrix& x) const {
  switch (form_) {
    case Form::zero:
      return SymMatrix::zero(x.dim());
    case Form::identity_scaled:
      return x * alpha_;
    case Form::hadamard_diag:
      if (weights_.dim() != x.dim()) throw InputError("PhiOperator: weight order mismatch");
      return SymMatrix(weights_.mat().cwiseProduct(x.mat()));
    case Form::dense_vec:
      return smat(dense_ * svec(x), x.dim());
    case Form::rank_one_sum: {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(x.dim(), x.dim());
      for (const auto& b : terms_) {
        if (b.dim() != x.dim()) throw InputError("PhiOperator: term order mismatch");
        acc += dot(b, x) * b.mat();
      }
      return SymMatrix(acc);
    }
  }
  return SymMatrix::zero(x.dim());  // unreachable
}

QuadOperator PhiOperator::lower(int n) const {
  const int d = svec_dim(n);
  switch (form_) {
    case Form::zero:
      return QuadOperator::zero(d);
    case Form::identity_scaled:
      return QuadOperator::scaled_identity(d, alpha_);
    case Form::hadamard_diag: {
      if (weights_.dim() != n) throw InputError("PhiOperator: weight order mismatch");
      // Entrywise product becomes a diagonal scaling on svec coordinates.
      Eigen::VectorXd w(d);
      int pos = 0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) w[pos++] = weights_(i, j);
      return QuadOperator::diagonal(w);
    }
    case Form::dense_vec:
      if (dense_.rows() != d) throw InputError("PhiOperator: dense payload has wrong order");
      return QuadOperator::dense(dense_);
    case Form::rank_one_sum: {
      if (terms_.empty()) return QuadOperator::zero(d);
      Eigen::MatrixXd basis(d, static_cast<int>(terms_.size()));
      for (int i = 0; i < static_cast<int>(terms_.size()); ++i) {
        if (terms_[static_cast<size_t>(i)].dim() != n)
          throw InputError("PhiOperator: term order mismatch");
        basis.col(i) = svec(terms_[static_cast<size_t>(i)]);
      }
      return QuadOperator::rank_one_sum(basis);
    }
  }
  return QuadOperator::zero(d);  // unreachable
}

// --------------------------------------------------------------------------
// Problems

CqsdpProblem::CqsdpProblem(PhiOperator phi_in, ConstraintMap a_in, Eigen::VectorXd b_in,
                           SymMatrix c_in)
    : phi(std::move(phi_in)), A(std::move(a_in)), b(std::move(b_in)), C(std::move(c_in)) {
  n = A.dim();
  m = A.num_rows();
  if (C.dim() != n) throw InputError("CqsdpProblem: C has order " + std::to_string(C.dim()) +
                                     ", constraints have order " + std::to_string(n));
  if (b.size() != m) throw InputError("CqsdpProblem: |b| != m");
}

double CqsdpProblem::primal_objective(const SymMatrix& x) const {
  return 0.5 * dot(x, phi.apply(x)) + dot(C, x);
}

CcqpProblem make_ccqp(QuadOperator Q, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
                      std::shared_ptr<const ProxFn> theta, std::optional<int> matrix_order,
                      bool psd_embedding) {
  CcqpProblem p;
  p.x_dim = static_cast<int>(A.cols());
  p.y_dim = static_cast<int>(A.rows());
  if (Q.dim() != p.x_dim) throw InputError("make_ccqp: Q dimension mismatch");
  if (b.size() != p.y_dim) throw InputError("make_ccqp: |b| != rows(A)");
  if (c.size() != p.x_dim) throw InputError("make_ccqp: |c| != cols(A)");
  if (!theta) throw InputError("make_ccqp: theta oracle is required");
  if (theta->dim() != p.x_dim) throw InputError("make_ccqp: theta dimension mismatch");
  if (matrix_order && svec_dim(*matrix_order) != p.x_dim)
    throw InputError("make_ccqp: matrix order does not match the vector dimension");
  p.Q = std::move(Q);
  p.gram = GramFactorization::compute(A * A.transpose());
  p.A = std::move(A);
  p.b = std::move(b);
  p.c = std::move(c);
  p.theta = std::move(theta);
  p.matrix_order = matrix_order;
  p.psd_embedding = psd_embedding;
  p.lambda_hat = inflated_lambda_max(p.Q.as_linop());
  return p;
}

CcqpProblem cqsdp_to_ccqp(const CqsdpProblem& p) {
  auto theta = std::make_shared<ConjugateFn>(std::make_shared<PsdIndicator>(p.n));
  return make_ccqp(p.phi.lower(p.n), p.A.lowered(), p.b, svec(p.C), std::move(theta), p.n,
                   /*psd_embedding=*/true);
}

// --------------------------------------------------------------------------
// Generators

namespace {

SymMatrix random_sym(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  return SymMatrix(m);
}

SymMatrix random_sym_unit(std::mt19937_64& rng, int n) {
  SymMatrix s = random_sym(rng, n);
  return s * (1.0 / s.norm());
}

}  // namespace

CqsdpProblem gen_random_cqsdp(int n, int m, std::uint64_t seed, int phi_rank,
                              SymMatrix* slater_out) {
  if (n < 1 || m < 1 || m > svec_dim(n)) {
    throw InputError("gen_random_cqsdp: need 1 <= m <= n(n+1)/2");
  }
  if (phi_rank < 0) throw InputError("gen_random_cqsdp: phi_rank must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Independent rows are almost sure for Gaussian draws; redraw from the same
  // stream in the (theoretical) event of a rank-deficient Gram matrix, so the
  // result stays a deterministic function of the seed.
  std::vector<SymMatrix> rows;
  std::optional<ConstraintMap> map;
  for (int attempt = 0; attempt < 8 && !map; ++attempt) {
    rows.clear();
    rows.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) rows.push_back(random_sym_unit(rng, n));
    try {
      map.emplace(rows);
    } catch (const SurjectivityViolation&) {
      map.reset();
    }
  }
  if (!map) throw SurjectivityViolation("gen_random_cqsdp: could not draw independent rows");

  // Strictly feasible point: identity plus a modest PSD perturbation.
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = gauss(rng);
  SymMatrix slater(Eigen::MatrixXd::Identity(n, n) + (v * v.transpose()) / (2.0 * n));
  const Eigen::VectorXd b = map->apply(slater);

  SymMatrix c = random_sym_unit(rng, n);

  PhiOperator phi = PhiOperator::zero();
  if (phi_rank > 0) {
    // Unit-norm terms scaled by 1/sqrt(rank) keep lambda_max(phi) <= 1.
    std::vector<SymMatrix> terms;
    terms.reserve(static_cast<size_t>(phi_rank));
    const double scale = 1.0 / std::sqrt(static_cast<double>(phi_rank));
    for (int i = 0; i < phi_rank; ++i) terms.push_back(random_sym_unit(rng, n) * scale);
    phi = PhiOperator::rank_one_sum(std::move(terms));
  }

  if (slater_out) *slater_out = slater;
  return CqsdpProblem(std::move(phi), std::move(*map), b, std::move(c));
}

CqsdpProblem gen_nearest_correlation(const SymMatrix& g) {
  const int n = g.dim();
  std::vector<SymMatrix> rows;
  rows.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    e(i, i) = 1.0;
    rows.push_back(SymMatrix(e));
  }
  return CqsdpProblem(PhiOperator::identity_scaled(1.0), ConstraintMap(std::move(rows)),
                      Eigen::VectorXd::Ones(n), g * -1.0);
}

// --------------------------------------------------------------------------
// Validation

namespace {

void check_operator_samples(const LinOp& op, std::uint64_t seed, int samples,
                            const std::string& who) {
  std::mt19937_64 rng(seed ^ 0xabcdef12345ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&] {
    Eigen::VectorXd v(op.dim);
    for (int i = 0; i < op.dim; ++i) v[i] = gauss(rng);
    return v;
  };
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = draw();
    const Eigen::VectorXd y = draw();
    const Eigen::VectorXd qx = op.apply(x);
    const double self_adj = std::abs(qx.dot(y) - x.dot(op.apply(y)));
    if (self_adj > 1e-12 * (1.0 + qx.norm() * y.norm())) {
      throw InputError(who + ": operator is not self-adjoint (sampled)");
    }
    if (x.dot(qx) < -1e-12 * x.squaredNorm()) {
      throw InputError(who + ": operator is not positive semidefinite (sampled)");
    }
  }
}

}  // namespace

void validate_problem(const CqsdpProblem& p, std::uint64_t seed, int samples) {
  if (p.b.size() != p.m || p.C.dim() != p.n) throw InputError("CqsdpProblem: dimension mismatch");
  const LinOp op{svec_dim(p.n), [&p](const Eigen::VectorXd& v) {
                   return svec(p.phi.apply(smat(v, p.n)));
                 }};
  check_operator_samples(op, seed, samples, "CqsdpProblem.phi");
}

void validate_problem(const CcqpProblem& p, std::uint64_t seed, int samples) {
  if (p.A.rows() != p.y_dim || p.A.cols() != p.x_dim || p.b.size() != p.y_dim ||
      p.c.size() != p.x_dim || !p.theta || p.theta->dim() != p.x_dim) {
    throw InputError("CcqpProblem: dimension mismatch");
  }
  check_operator_samples(p.Q.as_linop(), seed, samples, "CcqpProblem.Q");
}

}  // namespace ccqp
