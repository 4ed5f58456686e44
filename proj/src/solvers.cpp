#include "sigcomp/solvers.hpp"

#include "sigcomp/losses.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>

namespace sigcomp {

void SolverConfig::validate() const {
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  if (!(step_tol >= 0.0)) throw std::invalid_argument("step_tol must be >= 0");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0,1)");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0,1)");
  if (max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
  admm.validate();
}

void BaselineConfig::validate() const {
  if (!(lr > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("momentum must lie in [0,1)");
  }
  if (iters < 1) throw std::invalid_argument("iters must be >= 1");
}

std::string_view to_string(StopReason reason) {
  return reason == StopReason::StepTol ? "step_tol" : "max_outer";
}

std::string_view to_string(Optimizer opt) {
  switch (opt) {
    case Optimizer::SGDM: return "sgdm";
    case Optimizer::RMSProp: return "rmsprop";
    case Optimizer::Adam: return "adam";
  }
  return "unknown";
}

ParamVector uniform_init(const NetworkShape& shape, std::uint64_t seed,
                         double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-radius, radius);
  ParamVector theta(shape.n());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    theta[i] = dist(rng);
  }
  return theta;
}

double training_objective(const Dataset& data, const NetworkShape& shape,
                          LossKind loss, const ParamVector& theta) {
  return outer_value(inner_value(theta, shape, data.inputs, data.targets, loss), loss);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_problem(const Dataset& data, const NetworkShape& shape,
                   const ParamVector& theta0) {
  data.validate();
  if (data.d() != shape.d()) {
    throw std::invalid_argument("dataset has d = " + std::to_string(data.d()) +
                                " but the network expects d = " +
                                std::to_string(shape.d()));
  }
  check_params(shape, theta0);
}

double checked_objective(const Vector& F, LossKind loss, int k) {
  const double e = outer_value(F, loss);
  if (!std::isfinite(e)) {
    throw NumericalError("objective is not finite at iteration " + std::to_string(k));
  }
  return e;
}

FitReport proximal_fit(const Dataset& data, const NetworkShape& shape,
                       LossKind loss, const SolverConfig& cfg,
                       const ParamVector& theta0, bool globalized) {
  cfg.validate();
  check_problem(data, shape, theta0);
  const int m = data.m();
  const auto start = Clock::now();

  FitReport report;
  ParamVector theta = theta0;
  for (int k = 0;; ++k) {
    const ResidualEval eval = inner_eval(theta, shape, data.inputs, data.targets, loss);
    IterationRecord rec;
    rec.k = k;
    rec.objective = checked_objective(eval.F, loss, k);

    Vector dtheta;
    if (loss == LossKind::Quadratic) {
      dtheta = lm_step(eval, cfg.t, m);
    } else {
      AdmmResult sub = admm_solve(eval, cfg.t, m, loss, cfg.admm);
      rec.admm_iters = sub.trace.iterations;
      dtheta = std::move(sub.dtheta);
    }
    rec.step_norm = dtheta.norm();

    if (rec.step_norm < cfg.step_tol) {
      report.final_objective = rec.objective;
      if (rec.step_norm > 0.0) {
        const ParamVector last = theta + dtheta;
        const double value = outer_value(
            inner_value(last, shape, data.inputs, data.targets, loss), loss);
        if (value <= rec.objective) {
          theta = last;
          report.final_objective = value;
        }
      }
      rec.elapsed = seconds_since(start);
      report.trace.push_back(rec);
      report.converged = true;
      report.stop_reason = StopReason::StepTol;
      break;
    }
    if (k == cfg.max_outer) {
      rec.elapsed = seconds_since(start);
      report.trace.push_back(rec);
      report.final_objective = rec.objective;
      report.stop_reason = StopReason::MaxOuter;
      break;
    }
    if (globalized) {
      const BacktrackResult bt = backtrack(data, shape, loss, theta, dtheta, eval, cfg);
      rec.eta = bt.eta;
      rec.backtrack = bt.accepted ? BacktrackStatus::Accepted : BacktrackStatus::Exhausted;
    }
    theta += rec.eta * dtheta;
    rec.elapsed = seconds_since(start);
    report.trace.push_back(rec);
  }

  report.theta_star = std::move(theta);
  return report;
}

}  // namespace

BacktrackResult backtrack(const Dataset& data, const NetworkShape& shape,
                          LossKind loss, const ParamVector& theta,
                          const Vector& dtheta, const ResidualEval& eval,
                          const SolverConfig& cfg) {
  const int m = data.m();
  const double current = outer_value(eval.F, loss);
  const double model = subproblem_model_value(eval, dtheta, cfg.t, m, loss);
  // A predicted increase is clamped to zero.
  const double predicted = std::min(model - current, 0.0);

  BacktrackResult result;
  double eta = 1.0;
  for (int trial = 0; trial < cfg.max_backtracks; ++trial) {
    const ParamVector candidate = theta + eta * dtheta;
    const double value = outer_value(
        inner_value(candidate, shape, data.inputs, data.targets, loss), loss);
    ++result.evals;
    result.eta = eta;
    result.objective = value;
    if (std::isfinite(value) && value - current <= cfg.c * eta * predicted) {
      result.accepted = true;
      return result;
    }
    if (trial + 1 < cfg.max_backtracks) {
      eta *= cfg.tau;
    }
  }
  return result;
}

FitReport lpa_fit(const Dataset& data, const NetworkShape& shape, LossKind loss,
                  const SolverConfig& cfg, const ParamVector& theta0) {
  return proximal_fit(data, shape, loss, cfg, theta0, false);
}

FitReport glpa_fit(const Dataset& data, const NetworkShape& shape, LossKind loss,
                   const SolverConfig& cfg, const ParamVector& theta0) {
  return proximal_fit(data, shape, loss, cfg, theta0, true);
}

Vector objective_subgradient(const ResidualEval& eval, LossKind loss) {
  const Eigen::Index m = eval.F.size();
  Vector g(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double z = eval.F[i];
    switch (loss) {
      case LossKind::Quadratic: g[i] = 2.0 * z; break;
      case LossKind::Absolute: g[i] = z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); break;
      case LossKind::Hinge: g[i] = z < 1.0 ? -1.0 : 0.0; break;
    }
  }
  return eval.J.transpose() * g / static_cast<double>(m);
}

FitReport baseline_fit(const Dataset& data, const NetworkShape& shape,
                       LossKind loss, const BaselineConfig& cfg,
                       const ParamVector& theta0) {
  cfg.validate();
  check_problem(data, shape, theta0);
  const auto start = Clock::now();

  // torch.optim defaults for everything except lr and SGD momentum.
  constexpr double kRmsAlpha = 0.99;
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;

  const Eigen::Index n = shape.n();
  Vector first = Vector::Zero(n);
  Vector second = Vector::Zero(n);
  double beta1_pow = 1.0;
  double beta2_pow = 1.0;

  FitReport report;
  ParamVector theta = theta0;
  for (int k = 0;; ++k) {
    const ResidualEval eval = inner_eval(theta, shape, data.inputs, data.targets, loss);
    IterationRecord rec;
    rec.k = k;
    rec.objective = checked_objective(eval.F, loss, k);
    if (k == cfg.iters) {
      rec.elapsed = seconds_since(start);
      report.trace.push_back(rec);
      break;
    }

    const Vector g = objective_subgradient(eval, loss);
    Vector update;
    switch (cfg.optimizer) {
      case Optimizer::SGDM:
        first = cfg.momentum * first + g;
        update = cfg.lr * first;
        break;
      case Optimizer::RMSProp:
        second = kRmsAlpha * second + (1.0 - kRmsAlpha) * g.cwiseAbs2();
        update = cfg.lr * g.cwiseQuotient((second.cwiseSqrt().array() + kEps).matrix());
        break;
      case Optimizer::Adam: {
        first = kBeta1 * first + (1.0 - kBeta1) * g;
        second = kBeta2 * second + (1.0 - kBeta2) * g.cwiseAbs2();
        beta1_pow *= kBeta1;
        beta2_pow *= kBeta2;
        const Vector mhat = first / (1.0 - beta1_pow);
        const Vector vhat = second / (1.0 - beta2_pow);
        update = cfg.lr * mhat.cwiseQuotient((vhat.cwiseSqrt().array() + kEps).matrix());
        break;
      }
    }
    theta -= update;
    rec.step_norm = update.norm();
    rec.elapsed = seconds_since(start);
    report.trace.push_back(rec);
  }

  report.converged = false;
  report.stop_reason = StopReason::MaxOuter;
  report.final_objective = report.trace.back().objective;
  report.theta_star = std::move(theta);
  return report;
}

}  // namespace sigcomp
