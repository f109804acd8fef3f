#ifndef CCQP_IO_HPP_
#define CCQP_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ccqp/admm.hpp"
#include "ccqp/equivalence.hpp"
#include "ccqp/problem.hpp"

namespace ccqp {

/// Parsed problem file. The semidefinite form is kept when the file carried
/// one; the composite form is always populated and is what the solver runs on.
struct LoadedProblem {
  std::optional<CqsdpProblem> cqsdp;
  CcqpProblem ccqp;
  std::string kind;  // "cqsdp" or "ccqp"
};

/// Serializable description of theta for composite problem files.
struct ThetaDescriptor {
  enum class Kind { psd_indicator, nonneg_indicator, box, l1 };
  Kind kind = Kind::nonneg_indicator;
  int order = 0;            // psd_indicator
  double alpha = 1.0;       // l1
  Eigen::VectorXd lower, upper;  // box

  std::shared_ptr<const ProxFn> build(int x_dim) const;
};

/// Loads and validates a problem file; errors carry the offending field path.
LoadedProblem load_problem(const std::string& path);

/// JSON for a semidefinite problem file. Constraint rows are written as
/// row-major upper triangles, or as sparse triplets when that is smaller.
std::string problem_json(const CqsdpProblem& p);
/// JSON for a vector-space composite problem file.
std::string ccqp_problem_json(const CcqpProblem& p, const ThetaDescriptor& theta);

/// Run report JSON (schema ccqp-run-report/1).
std::string run_report_json(const SolveReport& report, const std::string& input_path,
                            const std::string& csv_path);

/// Equivalence / check report JSON (schema ccqp-check-report/1).
std::string equivalence_report_json(const EquivalenceReport& report, double bound, bool pass);

/// Iteration log with the fixed column set
/// k,eta_primal,eta_dual,eta_w,eta_theta,eta_comp,fp_residual.
std::string history_csv(const std::vector<KktHistoryEntry>& history);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace ccqp

#endif  // CCQP_IO_HPP_
