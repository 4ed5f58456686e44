#include "sigcomp/subsolvers.hpp"

#include "sigcomp/kernels.hpp"
#include "sigcomp/losses.hpp"

#include <Eigen/Cholesky>

#include <string>

namespace sigcomp {

void AdmmConfig::validate() const {
  if (!(rho > 0.0)) throw std::invalid_argument("ADMM rho must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("ADMM eps must be > 0");
  if (max_iters < 1) throw std::invalid_argument("ADMM max_iters must be >= 1");
}

namespace {

void check_eval(const ResidualEval& eval, double t, int m) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("proximal stepsize t must be > 0");
  }
  if (m < 1 || eval.F.size() != m || eval.J.rows() != m) {
    throw std::invalid_argument("residual evaluation does not have m = " +
                                std::to_string(m) + " rows");
  }
  if (!eval.F.allFinite() || !eval.J.allFinite()) {
    throw NumericalError("residual evaluation has non-finite entries");
  }
}

// Factors  scale * J^T J + I / t.
Eigen::LLT<Matrix> factor_regularized_gram(const Matrix& J, double scale,
                                           double t) {
  Matrix A = par::gram(J);
  A *= scale;
  A.diagonal().array() += 1.0 / t;
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization of the regularized normal matrix failed");
  }
  return llt;
}

}  // namespace

Vector lm_step(const ResidualEval& eval, double t, int m) {
  check_eval(eval, t, m);
  const double scale = 2.0 / static_cast<double>(m);
  const auto llt = factor_regularized_gram(eval.J, scale, t);
  Vector rhs = -scale * (eval.J.transpose() * eval.F);
  Vector step = llt.solve(rhs);
  if (!step.allFinite()) {
    throw NumericalError("lm_step produced a non-finite direction");
  }
  return step;
}

AdmmResult admm_solve(const ResidualEval& eval, double t, int m, LossKind loss,
                      const AdmmConfig& cfg) {
  if (loss == LossKind::Quadratic) {
    throw std::invalid_argument("admm_solve handles absolute and hinge losses only");
  }
  cfg.validate();
  check_eval(eval, t, m);

  const Matrix& J = eval.J;
  const Vector& F = eval.F;
  const double rho = cfg.rho;
  const double kappa = 1.0 / (static_cast<double>(m) * rho);

  AdmmResult out;
  AdmmTrace& trace = out.trace;
  const auto llt = factor_regularized_gram(J, rho, t);
  trace.factorizations = 1;

  Vector dtheta = Vector::Zero(J.cols());
  Vector Jd = Vector::Zero(m);
  Vector lambda = Vector::Zero(m);
  Vector mu(m);
  Vector r(m);

  for (int i = 1; i <= cfg.max_iters; ++i) {
    for (int j = 0; j < m; ++j) {
      mu[j] = prox(F[j] + Jd[j] - lambda[j] / rho, kappa, loss);
    }
    Vector rhs = rho * (J.transpose() * (mu - F + lambda / rho));
    Vector next = llt.solve(rhs);
    Vector Jnext = J * next;

    r = mu - F - Jnext;
    lambda += rho * r;

    double s_norm = 0.0;
    if (cfg.dual_residual == DualResidual::Literal) {
      s_norm = rho * (Jnext - Jd).norm();
    } else {
      s_norm = rho * (J.transpose() * (Jnext - Jd)).norm();
    }

    dtheta = std::move(next);
    Jd = std::move(Jnext);
    trace.iterations = i;
    trace.final_primal_residual_norm = r.norm();
    trace.final_dual_residual_norm = s_norm;

    if (!dtheta.allFinite() || !lambda.allFinite()) {
      throw NumericalError("ADMM iterate became non-finite at iteration " +
                           std::to_string(i));
    }
    if (trace.final_primal_residual_norm < cfg.eps && s_norm < cfg.eps) {
      trace.converged = true;
      break;
    }
  }
  trace.lambda = std::move(lambda);
  out.dtheta = std::move(dtheta);
  return out;
}

double subproblem_model_value(const ResidualEval& eval,
                              const Eigen::Ref<const Vector>& dtheta, double t,
                              int m, LossKind loss) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("proximal stepsize t must be > 0");
  }
  if (eval.F.size() != m || eval.J.rows() != m || dtheta.size() != eval.J.cols()) {
    throw std::invalid_argument("subproblem_model_value: dimension mismatch");
  }
  const Vector z = eval.F + eval.J * dtheta;
  return outer_value(z, loss) + dtheta.squaredNorm() / (2.0 * t);
}

}  // namespace sigcomp
