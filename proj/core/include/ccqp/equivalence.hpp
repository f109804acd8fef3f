#ifndef CCQP_EQUIVALENCE_HPP_
#define CCQP_EQUIVALENCE_HPP_

#include <optional>
#include <vector>

#include "ccqp/admm.hpp"
#include "ccqp/splitting.hpp"

namespace ccqp {

/// thm1: modified scheme against the plain fixed-point iteration (unit
/// relaxation). prop2: relaxed scheme against u+ = (1-rho) u + rho Gamma(u).
enum class CheckMode { thm1, prop2 };

struct EquivalenceStep {
  long k = 0;
  double u_dev = 0.0;  // relative deviation of the governing sequences
  double x_dev = 0.0;  // relative deviation of the recovered primals
};

struct EquivalenceReport {
  CheckMode mode = CheckMode::thm1;
  long steps = 0;
  double sigma = 0.0;
  double rho = 1.0;
  double max_u_deviation = 0.0;
  double max_x_deviation = 0.0;
  std::vector<EquivalenceStep> trace;  // one entry per compared step
};

/// Test hooks for negative controls.
struct EquivalenceHooks {
  /// Scales sigma on the fixed-point side only, deliberately mismatching the
  /// two iterations.
  std::optional<double> sigma_mismatch_factor;
};

/// Runs the ADMM side and the fixed-point side in lock step from matched
/// initial points (the fixed-point side is seeded with the shadow point of
/// the ADMM side's first step) and reports the per-step relative deviations
/// of the governing u sequences and the recovered primal x sequences.
EquivalenceReport equivalence_check(const CcqpProblem& p, const SolverConfig& cfg, long steps,
                                    CheckMode mode, const EquivalenceHooks& hooks = {});

/// Residual-soundness probe around a converged reference point: each
/// perturbation must raise its target residual component above 1e-4 while the
/// components it provably cannot touch stay below 1e-8. Which components can
/// be held still depends on the problem's couplings, so every result lists
/// the components it checked.
struct PerturbProbe {
  std::string target;
  double target_delta = 0.0;
  double max_other_delta = 0.0;
  std::vector<std::string> others_checked;
  bool skipped = false;  // e.g. eta_w on a vanishing quadratic
  bool pass = false;
};

struct KktPerturbReport {
  double reference_max = 0.0;
  std::vector<PerturbProbe> probes;
  bool pass = false;
};

/// Converges a reference point with the modified scheme at tolerance 1e-11,
/// then runs the four targeted perturbations. Throws NoConvergence when the
/// reference run fails to reach the tolerance.
KktPerturbReport kkt_perturb_check(const CcqpProblem& p, SolverConfig cfg);

}  // namespace ccqp

#endif  // CCQP_EQUIVALENCE_HPP_
