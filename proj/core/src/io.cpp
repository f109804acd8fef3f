#include "ccqp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccqp/errors.hpp"

namespace ccqp {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kProblemSchema = "ccqp-problem/1";
constexpr const char* kRunSchema = "ccqp-run-report/1";
constexpr const char* kCheckSchema = "ccqp-check-report/1";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& field(const json& j, const std::string& where, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing field");
  return *it;
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Eigen::VectorXd vec(const json& j, const std::string& where, int want = -1) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  if (want >= 0 && static_cast<int>(j.size()) != want) {
    fail(where, "expected " + std::to_string(want) + " entries, got " + std::to_string(j.size()));
  }
  Eigen::VectorXd v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = num(j[static_cast<size_t>(i)], where);
  return v;
}

std::vector<double> dvec(const json& j, const std::string& where, size_t want) {
  if (!j.is_array() || j.size() != want) {
    fail(where, "expected " + std::to_string(want) + " entries");
  }
  std::vector<double> v;
  v.reserve(want);
  for (size_t i = 0; i < want; ++i) v.push_back(num(j[i], where));
  return v;
}

// A symmetric matrix entry: a row-major upper triangle array, or an object
// {"triplets": [[i, j, value], ...]}.
SymMatrix sym_entry(const json& j, const std::string& where, int n) {
  if (j.is_array()) {
    return SymMatrix::from_upper(n, dvec(j, where, static_cast<size_t>(svec_dim(n))));
  }
  if (j.is_object() && j.contains("triplets")) {
    const json& t = j["triplets"];
    if (!t.is_array()) fail(where + ".triplets", "expected an array");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (size_t k = 0; k < t.size(); ++k) {
      const json& e = t[k];
      const std::string tw = where + ".triplets[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 3) fail(tw, "expected [i, j, value]");
      const int i = integer(e[0], tw);
      const int c = integer(e[1], tw);
      if (i < 0 || i >= n || c < 0 || c >= n) fail(tw, "index out of range");
      const double val = num(e[2], tw);
      m(i, c) = val;
      m(c, i) = val;
    }
    return SymMatrix(m);
  }
  fail(where, "expected an upper-triangle array or {\"triplets\": ...}");
}

json sym_to_json(const SymMatrix& s) {
  // Triplets when clearly sparser than the dense upper triangle.
  const int n = s.dim();
  long nnz = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (s(i, j) != 0.0) ++nnz;
  if (3 * nnz < svec_dim(n)) {
    json t = json::array();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (s(i, j) != 0.0) t.push_back(json::array({i, j, s(i, j)}));
    return json{{"triplets", t}};
  }
  return json(s.upper());
}

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_rows_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
  return rows;
}

Eigen::MatrixXd matrix_rows(const json& j, const std::string& where, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    fail(where, "expected " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    m.row(i) = vec(j[static_cast<size_t>(i)], where + "[" + std::to_string(i) + "]", cols);
  }
  return m;
}

std::string form_name(QuadOperator::Form f) {
  switch (f) {
    case QuadOperator::Form::zero: return "zero";
    case QuadOperator::Form::identity_scaled: return "identity_scaled";
    case QuadOperator::Form::hadamard_diag: return "hadamard_diag";
    case QuadOperator::Form::dense_vec: return "dense_vec";
    case QuadOperator::Form::rank_one_sum: return "rank_one_sum";
  }
  return "?";
}

PhiOperator parse_phi(const json& j, const std::string& where, int n) {
  const std::string form = field(j, where, "form").get<std::string>();
  if (form == "zero") return PhiOperator::zero();
  const json& payload = field(j, where, "payload");
  const std::string pw = where + ".payload";
  if (form == "identity_scaled") {
    return PhiOperator::identity_scaled(num(field(payload, pw, "alpha"), pw + ".alpha"));
  }
  if (form == "hadamard_diag") {
    return PhiOperator::hadamard(sym_entry(field(payload, pw, "weights"), pw + ".weights", n));
  }
  if (form == "dense_vec") {
    const int d = svec_dim(n);
    return PhiOperator::dense_vec(matrix_rows(field(payload, pw, "matrix"), pw + ".matrix", d, d));
  }
  if (form == "rank_one_sum") {
    const json& terms = field(payload, pw, "terms");
    if (!terms.is_array()) fail(pw + ".terms", "expected an array");
    std::vector<SymMatrix> out;
    out.reserve(terms.size());
    for (size_t i = 0; i < terms.size(); ++i) {
      out.push_back(sym_entry(terms[i], pw + ".terms[" + std::to_string(i) + "]", n));
    }
    if (out.empty()) return PhiOperator::zero();
    return PhiOperator::rank_one_sum(std::move(out));
  }
  fail(where + ".form", "unknown operator form '" + form + "'");
}

json phi_to_json(const PhiOperator& phi) {
  json j;
  j["form"] = form_name(phi.form());
  switch (phi.form()) {
    case QuadOperator::Form::zero:
      break;
    case QuadOperator::Form::identity_scaled:
      j["payload"] = {{"alpha", phi.alpha()}};
      break;
    case QuadOperator::Form::hadamard_diag:
      j["payload"] = {{"weights", sym_to_json(phi.weights())}};
      break;
    case QuadOperator::Form::dense_vec:
      j["payload"] = {{"matrix", matrix_rows_json(phi.dense_matrix())}};
      break;
    case QuadOperator::Form::rank_one_sum: {
      json terms = json::array();
      for (const auto& t : phi.terms()) terms.push_back(sym_to_json(t));
      j["payload"] = {{"terms", terms}};
      break;
    }
  }
  return j;
}

QuadOperator parse_quad(const json& j, const std::string& where, int d) {
  const std::string form = field(j, where, "form").get<std::string>();
  if (form == "zero") return QuadOperator::zero(d);
  const json& payload = field(j, where, "payload");
  const std::string pw = where + ".payload";
  if (form == "identity_scaled") {
    return QuadOperator::scaled_identity(d, num(field(payload, pw, "alpha"), pw + ".alpha"));
  }
  if (form == "hadamard_diag") {
    return QuadOperator::diagonal(vec(field(payload, pw, "weights"), pw + ".weights", d));
  }
  if (form == "dense_vec") {
    return QuadOperator::dense(matrix_rows(field(payload, pw, "matrix"), pw + ".matrix", d, d));
  }
  if (form == "rank_one_sum") {
    const json& terms = field(payload, pw, "terms");
    if (!terms.is_array()) fail(pw + ".terms", "expected an array");
    if (terms.empty()) return QuadOperator::zero(d);
    Eigen::MatrixXd basis(d, static_cast<int>(terms.size()));
    for (size_t i = 0; i < terms.size(); ++i) {
      basis.col(static_cast<int>(i)) = vec(terms[i], pw + ".terms[" + std::to_string(i) + "]", d);
    }
    return QuadOperator::rank_one_sum(basis);
  }
  fail(where + ".form", "unknown operator form '" + form + "'");
}

json quad_to_json(const QuadOperator& q) {
  json j;
  j["form"] = form_name(q.form());
  switch (q.form()) {
    case QuadOperator::Form::zero:
      break;
    case QuadOperator::Form::identity_scaled:
      j["payload"] = {{"alpha", q.alpha()}};
      break;
    case QuadOperator::Form::hadamard_diag:
      j["payload"] = {{"weights", vec_to_json(q.weights())}};
      break;
    case QuadOperator::Form::dense_vec:
      j["payload"] = {{"matrix", matrix_rows_json(q.dense_matrix())}};
      break;
    case QuadOperator::Form::rank_one_sum: {
      json terms = json::array();
      for (int i = 0; i < q.basis().cols(); ++i) terms.push_back(vec_to_json(q.basis().col(i)));
      j["payload"] = {{"terms", terms}};
      break;
    }
  }
  return j;
}

ThetaDescriptor parse_theta(const json& j, const std::string& where) {
  ThetaDescriptor d;
  const std::string kind = field(j, where, "kind").get<std::string>();
  const json params = j.contains("params") ? j["params"] : json::object();
  const std::string pw = where + ".params";
  if (kind == "psd_indicator") {
    d.kind = ThetaDescriptor::Kind::psd_indicator;
    d.order = integer(field(params, pw, "order"), pw + ".order");
  } else if (kind == "nonneg_indicator") {
    d.kind = ThetaDescriptor::Kind::nonneg_indicator;
  } else if (kind == "box") {
    d.kind = ThetaDescriptor::Kind::box;
    const json& lo = field(params, pw, "lower");
    const json& hi = field(params, pw, "upper");
    if (lo.is_number() && hi.is_number()) {
      d.lower = Eigen::VectorXd::Constant(1, lo.get<double>());
      d.upper = Eigen::VectorXd::Constant(1, hi.get<double>());
    } else {
      d.lower = vec(lo, pw + ".lower");
      d.upper = vec(hi, pw + ".upper");
    }
  } else if (kind == "l1") {
    d.kind = ThetaDescriptor::Kind::l1;
    d.alpha = num(field(params, pw, "alpha"), pw + ".alpha");
  } else {
    fail(where + ".kind", "unknown theta kind '" + kind + "'");
  }
  return d;
}

json theta_to_json(const ThetaDescriptor& d) {
  json j;
  switch (d.kind) {
    case ThetaDescriptor::Kind::psd_indicator:
      j["kind"] = "psd_indicator";
      j["params"] = {{"order", d.order}};
      break;
    case ThetaDescriptor::Kind::nonneg_indicator:
      j["kind"] = "nonneg_indicator";
      j["params"] = json::object();
      break;
    case ThetaDescriptor::Kind::box:
      j["kind"] = "box";
      j["params"] = {{"lower", vec_to_json(d.lower)}, {"upper", vec_to_json(d.upper)}};
      break;
    case ThetaDescriptor::Kind::l1:
      j["kind"] = "l1";
      j["params"] = {{"alpha", d.alpha}};
      break;
  }
  return j;
}

json kkt_to_json(const KktResidual& r) {
  json j;
  j["eta_primal"] = r.eta_primal;
  j["eta_dual"] = r.eta_dual;
  j["eta_w"] = r.eta_w;
  j["eta_theta"] = r.eta_theta;
  j["eta_comp"] = r.has_comp ? json(r.eta_comp) : json(nullptr);
  j["max"] = r.max();
  return j;
}

}  // namespace

std::shared_ptr<const ProxFn> ThetaDescriptor::build(int x_dim) const {
  switch (kind) {
    case Kind::psd_indicator:
      if (svec_dim(order) != x_dim) {
        throw InputError("theta.params.order: svec dimension " + std::to_string(svec_dim(order)) +
                         " does not match n = " + std::to_string(x_dim));
      }
      return std::make_shared<PsdIndicator>(order);
    case Kind::nonneg_indicator:
      return std::make_shared<NonnegIndicator>(x_dim);
    case Kind::box: {
      Eigen::VectorXd lo = lower, hi = upper;
      if (lo.size() == 1 && x_dim > 1) lo = Eigen::VectorXd::Constant(x_dim, lower[0]);
      if (hi.size() == 1 && x_dim > 1) hi = Eigen::VectorXd::Constant(x_dim, upper[0]);
      if (lo.size() != x_dim || hi.size() != x_dim) {
        throw InputError("theta.params: box bounds do not match the problem dimension");
      }
      return std::make_shared<BoxIndicator>(lo, hi);
    }
    case Kind::l1:
      return std::make_shared<ScaledL1>(x_dim, alpha);
  }
  throw InputError("theta: unknown kind");
}

LoadedProblem load_problem(const std::string& path) {
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  const std::string where = "$";
  const std::string kind = field(root, where, "kind").get<std::string>();
  const int n = integer(field(root, where, "n"), "$.n");
  const int m = integer(field(root, where, "m"), "$.m");
  if (n < 1 || m < 1) fail("$.n/m", "dimensions must be >= 1");

  if (kind == "cqsdp") {
    PhiOperator phi = parse_phi(field(root, where, "phi"), "$.phi", n);
    const json& a = field(root, where, "A");
    if (!a.is_array() || static_cast<int>(a.size()) != m) fail("$.A", "expected m rows");
    std::vector<SymMatrix> rows;
    rows.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      rows.push_back(sym_entry(a[static_cast<size_t>(i)], "$.A[" + std::to_string(i) + "]", n));
    }
    Eigen::VectorXd b = vec(field(root, where, "b"), "$.b", m);
    SymMatrix c = SymMatrix::from_upper(
        n, dvec(field(root, where, "C"), "$.C", static_cast<size_t>(svec_dim(n))));
    CqsdpProblem sdp(std::move(phi), ConstraintMap(std::move(rows)), std::move(b), std::move(c));
    validate_problem(sdp);
    CcqpProblem embedded = cqsdp_to_ccqp(sdp);
    return LoadedProblem{std::move(sdp), std::move(embedded), kind};
  }
  if (kind == "ccqp") {
    QuadOperator q = parse_quad(field(root, where, "Q"), "$.Q", n);
    Eigen::MatrixXd a = matrix_rows(field(root, where, "A"), "$.A", m, n);
    Eigen::VectorXd b = vec(field(root, where, "b"), "$.b", m);
    Eigen::VectorXd c = vec(field(root, where, "c"), "$.c", n);
    ThetaDescriptor theta = parse_theta(field(root, where, "theta"), "$.theta");
    std::optional<int> order;
    if (theta.kind == ThetaDescriptor::Kind::psd_indicator) order = theta.order;
    CcqpProblem p = make_ccqp(std::move(q), std::move(a), std::move(b), std::move(c),
                              theta.build(n), order, /*psd_embedding=*/false);
    validate_problem(p);
    return LoadedProblem{std::nullopt, std::move(p), kind};
  }
  fail("$.kind", "expected 'cqsdp' or 'ccqp', got '" + kind + "'");
}

std::string problem_json(const CqsdpProblem& p) {
  json j;
  j["schema"] = kProblemSchema;
  j["kind"] = "cqsdp";
  j["n"] = p.n;
  j["m"] = p.m;
  j["phi"] = phi_to_json(p.phi);
  json rows = json::array();
  for (int i = 0; i < p.m; ++i) rows.push_back(sym_to_json(p.A.row(i)));
  j["A"] = rows;
  j["b"] = vec_to_json(p.b);
  j["C"] = json(p.C.upper());
  return j.dump(2) + "\n";
}

std::string ccqp_problem_json(const CcqpProblem& p, const ThetaDescriptor& theta) {
  json j;
  j["schema"] = kProblemSchema;
  j["kind"] = "ccqp";
  j["n"] = p.x_dim;
  j["m"] = p.y_dim;
  j["Q"] = quad_to_json(p.Q);
  j["A"] = matrix_rows_json(p.A);
  j["b"] = vec_to_json(p.b);
  j["c"] = vec_to_json(p.c);
  j["theta"] = theta_to_json(theta);
  return j.dump(2) + "\n";
}

std::string run_report_json(const SolveReport& report, const std::string& input_path,
                            const std::string& csv_path) {
  json j;
  j["schema"] = kRunSchema;
  j["input"] = input_path;
  j["algo"] = algo_name(report.algo);
  j["config"] = {{"sigma", report.config.sigma},
                 {"rho", report.config.rho},
                 {"tau", report.config.tau},
                 {"tol_kkt", report.config.tol_kkt},
                 {"tol_fp", report.config.tol_fp},
                 {"max_iter", report.config.max_iter},
                 {"log_every", report.config.log_every},
                 {"unsafe_override", report.config.unsafe_override}};
  j["termination"] = {{"reason", term_reason_name(report.reason)},
                      {"stopped_by", report.stopped_by}};
  j["iterations"] = report.iterations;
  j["kkt"] = kkt_to_json(report.final_kkt);
  j["fp_residual"] = report.final_fp;
  j["objectives"] = {{"primal", report.objectives.primal},
                     {"dual_minform", report.objectives.dual}};
  j["wall_seconds"] = report.wall_seconds;
  if (!csv_path.empty()) j["csv_path"] = csv_path;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string equivalence_report_json(const EquivalenceReport& report, double bound, bool pass) {
  json j;
  j["schema"] = kCheckSchema;
  j["mode"] = report.mode == CheckMode::thm1 ? "thm1" : "prop2";
  j["steps"] = report.steps;
  j["sigma"] = report.sigma;
  j["rho"] = report.rho;
  j["max_u_deviation"] = report.max_u_deviation;
  j["max_x_deviation"] = report.max_x_deviation;
  j["bound"] = bound;
  j["pass"] = pass;
  json trace = json::array();
  for (const auto& e : report.trace) {
    trace.push_back({{"k", e.k}, {"u_dev", e.u_dev}, {"x_dev", e.x_dev}});
  }
  j["trace"] = trace;
  return j.dump(2) + "\n";
}

std::string history_csv(const std::vector<KktHistoryEntry>& history) {
  std::string out = "k,eta_primal,eta_dual,eta_w,eta_theta,eta_comp,fp_residual\n";
  char buf[256];
  for (const auto& e : history) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.k,
                  e.residual.eta_primal, e.residual.eta_dual, e.residual.eta_w,
                  e.residual.eta_theta, e.residual.has_comp ? e.residual.eta_comp : 0.0,
                  e.fp_residual);
    out += buf;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace ccqp
