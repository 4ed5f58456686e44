#pragma once

#include "sigcomp/data.hpp"
#include "sigcomp/errors.hpp"
#include "sigcomp/model.hpp"
#include "sigcomp/subsolvers.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace sigcomp {

struct SolverConfig {
  double t = 1e5;
  double step_tol = 1e-2;
  int max_outer = 500;
  double c = 1e-3;
  double tau = 0.5;
  int max_backtracks = 10;
  AdmmConfig admm;

  void validate() const;
};

enum class BacktrackStatus { None, Accepted, Exhausted };

struct IterationRecord {
  int k = 0;
  double objective = 0.0;
  double step_norm = 0.0;
  double eta = 1.0;
  int admm_iters = 0;
  double elapsed = 0.0;
  BacktrackStatus backtrack = BacktrackStatus::None;
};

enum class StopReason { StepTol, MaxOuter };

struct FitReport {
  ParamVector theta_star;
  std::vector<IterationRecord> trace;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxOuter;
  /// E(theta_star). A sub-tolerance final step is applied when it does not
  /// raise the objective, so this can sit below the last traced objective.
  double final_objective = 0.0;
};

std::string_view to_string(StopReason reason);

/// Linearized proximal algorithm: theta += argmin of the proximal subproblem.
FitReport lpa_fit(const Dataset& data, const NetworkShape& shape, LossKind loss,
                  const SolverConfig& cfg, const ParamVector& theta0);

/// Globalized variant with backtracking on the sufficient-decrease rule.
FitReport glpa_fit(const Dataset& data, const NetworkShape& shape, LossKind loss,
                   const SolverConfig& cfg, const ParamVector& theta0);

struct BacktrackResult {
  double eta = 1.0;
  int evals = 0;
  bool accepted = false;
  double objective = 0.0;  // E(theta_k + eta * dtheta_k)
};

/// First eta in {1, tau, tau^2, ...} with
///   E(theta + eta d) - E(theta) <= c * eta * min(model(d) - E(theta), 0).
/// After max_backtracks failed trials the smallest trial is returned with accepted = false.
BacktrackResult backtrack(const Dataset& data, const NetworkShape& shape,
                          LossKind loss, const ParamVector& theta,
                          const Vector& dtheta, const ResidualEval& eval,
                          const SolverConfig& cfg);

enum class Optimizer { SGDM, RMSProp, Adam };

std::string_view to_string(Optimizer opt);

struct BaselineConfig {
  Optimizer optimizer = Optimizer::Adam;
  double lr = 1e-3;
  double momentum = 0.9;
  int iters = 1000;

  void validate() const;
};

/// (Sub)gradient of E at theta: (1/m) J^T g(F) with g = 2F, sign(F) or -1[F < 1].
Vector objective_subgradient(const ResidualEval& eval, LossKind loss);

/// Full-batch first-order training with PyTorch-default update rules.
FitReport baseline_fit(const Dataset& data, const NetworkShape& shape,
                       LossKind loss, const BaselineConfig& cfg,
                       const ParamVector& theta0);

/// Seeded uniform entries in [-radius, radius].
ParamVector uniform_init(const NetworkShape& shape, std::uint64_t seed,
                         double radius = 0.5);

/// E(theta) = L(F(theta)) on a dataset.
double training_objective(const Dataset& data, const NetworkShape& shape,
                          LossKind loss, const ParamVector& theta);

}  // namespace sigcomp
