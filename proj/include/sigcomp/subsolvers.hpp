#pragma once

#include "sigcomp/errors.hpp"
#include "sigcomp/model.hpp"

namespace sigcomp {

enum class DualResidual {
  Literal,     // s = rho * J * (dtheta_i - dtheta_{i-1})         (length m)
  Transposed,  // s = rho * J^T * J * (dtheta_i - dtheta_{i-1})   (length n)
};

struct AdmmConfig {
  double rho = 1e-2;
  double eps = 1e-2;
  int max_iters = 20;
  DualResidual dual_residual = DualResidual::Literal;

  void validate() const;
};

struct AdmmTrace {
  int iterations = 0;
  double final_primal_residual_norm = 0.0;
  double final_dual_residual_norm = 0.0;
  bool converged = false;
  int factorizations = 0;
  /// Final multiplier, kept for the inexactness bound on the model value.
  Vector lambda;
};

struct AdmmResult {
  Vector dtheta;
  AdmmTrace trace;
};

/// Closed-form proximal step for the quadratic loss:
/// solves ((2/m) J^T J + I/t) d = -(2/m) J^T F by Cholesky.
Vector lm_step(const ResidualEval& eval, double t, int m);

/// ADMM on  min_d  L(F + J d) + |d|^2 / (2t)  split as mu = F + J d.
/// Cold start at d = 0, lambda = 0. The matrix rho J^T J + I/t is factored once.
AdmmResult admm_solve(const ResidualEval& eval, double t, int m, LossKind loss,
                      const AdmmConfig& cfg);

/// L(F + J d) + |d|^2 / (2t).
double subproblem_model_value(const ResidualEval& eval,
                              const Eigen::Ref<const Vector>& dtheta, double t,
                              int m, LossKind loss);

}  // namespace sigcomp
