#include "sigcomp/experiment.hpp"

#include "sigcomp/diagnostics.hpp"
#include "sigcomp/losses.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#ifndef SIGCOMP_DATA_DIR
#define SIGCOMP_DATA_DIR "data"
#endif

namespace sigcomp {

using nlohmann::json;

TaskKind parse_task(std::string_view name) {
  if (name == "franke") return TaskKind::Franke;
  if (name == "digits") return TaskKind::Digits;
  if (name == "custom-csv") return TaskKind::CustomCsv;
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

SolverKind parse_solver(std::string_view name) {
  if (name == "lpa") return SolverKind::LPA;
  if (name == "glpa") return SolverKind::GLPA;
  if (name == "sgdm") return SolverKind::SGDM;
  if (name == "rmsprop") return SolverKind::RMSProp;
  if (name == "adam") return SolverKind::Adam;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

InitKind parse_init(std::string_view name) {
  if (name == "zero") return InitKind::Zero;
  if (name == "uniform") return InitKind::Uniform;
  throw std::invalid_argument("unknown init '" + std::string(name) + "'");
}

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Franke: return "franke";
    case TaskKind::Digits: return "digits";
    case TaskKind::CustomCsv: return "custom-csv";
  }
  return "unknown";
}

std::string_view to_string(SolverKind solver) {
  switch (solver) {
    case SolverKind::LPA: return "lpa";
    case SolverKind::GLPA: return "glpa";
    case SolverKind::SGDM: return "sgdm";
    case SolverKind::RMSProp: return "rmsprop";
    case SolverKind::Adam: return "adam";
  }
  return "unknown";
}

std::string_view to_string(InitKind init) {
  return init == InitKind::Zero ? "zero" : "uniform";
}

std::filesystem::path default_digits_path() {
  return std::filesystem::path(SIGCOMP_DATA_DIR) / "digits.csv";
}

void ExperimentConfig::validate() const {
  solver_cfg.validate();
  if (q && *q < 1) throw std::invalid_argument("--q must be >= 1");
  if (task == TaskKind::Franke && loss == LossKind::Hinge) {
    throw std::invalid_argument("hinge loss needs a classification task, franke is regression");
  }
  if (task == TaskKind::Franke && (n_train < 1 || n_test < 1)) {
    throw std::invalid_argument("--n-train and --n-test must be >= 1");
  }
  if (task == TaskKind::Digits) {
    if (pair.first == pair.second || pair.first < 0 || pair.first > 9 ||
        pair.second < 0 || pair.second > 9) {
      throw std::invalid_argument("--pair needs two different digits in 0..9");
    }
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
      throw std::invalid_argument("--train-frac must lie in (0,1)");
    }
  }
  if (task == TaskKind::CustomCsv && data.empty()) {
    throw std::invalid_argument("custom-csv task needs --data");
  }
  if (task != TaskKind::Franke && noise_sigma) {
    throw std::invalid_argument("--noise-sigma only applies to the franke task");
  }
  if (noise_sigma && !(*noise_sigma > 0.0)) {
    throw std::invalid_argument("--noise-sigma must be > 0");
  }
  if (solver == SolverKind::SGDM || solver == SolverKind::RMSProp ||
      solver == SolverKind::Adam) {
    BaselineConfig{Optimizer::Adam, lr, momentum, baseline_iters}.validate();
  }
}

TaskData load_task(const ExperimentConfig& cfg) {
  switch (cfg.task) {
    case TaskKind::Franke: {
      std::optional<NoiseSpec> noise;
      if (cfg.noise_sigma) noise = NoiseSpec{*cfg.noise_sigma, cfg.seed};
      auto [train, test] = make_franke_datasets(cfg.n_train, cfg.n_test, noise);
      return {std::move(train), std::move(test)};
    }
    case TaskKind::Digits: {
      const auto path = cfg.data.empty() ? default_digits_path() : cfg.data;
      const auto records = load_digits_csv(path);
      auto [train, test] = make_binary_task(records, cfg.pair.first, cfg.pair.second,
                                            cfg.train_frac, cfg.seed, cfg.scale_pixels);
      return {std::move(train), std::move(test)};
    }
    case TaskKind::CustomCsv: {
      const Task kind = cfg.loss == LossKind::Hinge ? Task::Binary : Task::Regression;
      TaskData td;
      td.train = read_dataset_csv(cfg.data, kind);
      td.test = cfg.test_data.empty() ? td.train : read_dataset_csv(cfg.test_data, kind);
      if (td.test.d() != td.train.d()) {
        throw std::invalid_argument("training and test CSVs have different input dimensions");
      }
      return td;
    }
  }
  throw std::logic_error("unhandled task");
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json config_json(const ExperimentConfig& cfg, int q) {
  const auto& s = cfg.solver_cfg;
  json j;
  j["task"] = to_string(cfg.task);
  j["loss"] = to_string(cfg.loss);
  j["solver"] = to_string(cfg.solver);
  j["q"] = q;
  j["t"] = s.t;
  j["step_tol"] = s.step_tol;
  j["max_outer"] = s.max_outer;
  j["c"] = s.c;
  j["tau"] = s.tau;
  j["max_backtracks"] = s.max_backtracks;
  j["rho"] = s.admm.rho;
  j["eps"] = s.admm.eps;
  j["admm_max_iters"] = s.admm.max_iters;
  j["dual_residual"] = s.admm.dual_residual == DualResidual::Literal ? "literal" : "transposed";
  j["lr"] = cfg.lr;
  j["momentum"] = cfg.momentum;
  j["baseline_iters"] = cfg.baseline_iters;
  j["noise_sigma"] = cfg.noise_sigma ? json(*cfg.noise_sigma) : json(nullptr);
  j["seed"] = cfg.seed;
  j["init"] = to_string(cfg.init);
  j["n_train"] = cfg.n_train;
  j["n_test"] = cfg.n_test;
  j["pair"] = {cfg.pair.first, cfg.pair.second};
  j["train_frac"] = cfg.train_frac;
  j["scale_pixels"] = cfg.scale_pixels;
  j["data"] = cfg.data.string();
  j["test_data"] = cfg.test_data.string();
  return j;
}

ParamVector initial_point(const ExperimentConfig& cfg, const NetworkShape& shape) {
  if (cfg.init == InitKind::Zero) return ParamVector::Zero(shape.n());
  return uniform_init(shape, cfg.seed);
}

FitReport train(const ExperimentConfig& cfg, SolverKind solver, const Dataset& train,
                const NetworkShape& shape, const ParamVector& theta0) {
  switch (solver) {
    case SolverKind::LPA:
      return lpa_fit(train, shape, cfg.loss, cfg.solver_cfg, theta0);
    case SolverKind::GLPA:
      return glpa_fit(train, shape, cfg.loss, cfg.solver_cfg, theta0);
    case SolverKind::SGDM:
    case SolverKind::RMSProp:
    case SolverKind::Adam: {
      const Optimizer opt = solver == SolverKind::SGDM      ? Optimizer::SGDM
                            : solver == SolverKind::RMSProp ? Optimizer::RMSProp
                                                            : Optimizer::Adam;
      return baseline_fit(train, shape, cfg.loss,
                          BaselineConfig{opt, cfg.lr, cfg.momentum, cfg.baseline_iters},
                          theta0);
    }
  }
  throw std::logic_error("unhandled solver");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir.string() +
                             "': " + ec.message());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void write_trace_csv(const FitReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "k,objective,step_norm,eta,admm_iters,elapsed_s\n";
  for (const auto& r : report.trace) {
    out << r.k << ',' << fmt17(r.objective) << ',' << fmt17(r.step_norm) << ','
        << fmt17(r.eta) << ',' << r.admm_iters << ',' << fmt17(r.elapsed) << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const TaskData td = load_task(cfg);
  if (cfg.loss == LossKind::Hinge && td.train.task != Task::Binary) {
    throw std::invalid_argument("hinge loss needs a binary task");
  }

  const int q_default = adaptive_network_size(td.train.m(), td.train.d());
  const int q = cfg.q.value_or(q_default);
  const NetworkShape shape(td.train.d(), q);
  const ParamVector theta0 = initial_point(cfg, shape);

  ExperimentResult result;
  result.q = q;
  result.report = train(cfg, cfg.solver, td.train, shape, theta0);
  const FitReport& rep = result.report;

  json s;
  s["schema_version"] = kSummarySchemaVersion;
  s["config"] = config_json(cfg, q);
  s["q"] = q;
  s["q_default"] = q_default;
  s["q_is_default"] = !cfg.q.has_value();
  s["n_params"] = shape.n();
  s["m_train"] = td.train.m();
  s["m_test"] = td.test.m();
  s["converged"] = rep.converged;
  s["stop_reason"] = to_string(rep.stop_reason);
  s["iterations"] = static_cast<int>(rep.trace.size()) - 1;
  s["final_objective"] = rep.final_objective;
  s["elapsed_s"] = rep.trace.back().elapsed;

  json exhausted = json::array();
  for (const auto& r : rep.trace) {
    if (r.backtrack == BacktrackStatus::Exhausted) exhausted.push_back(r.k);
  }
  s["backtrack_exhausted"] = exhausted;

  if (td.train.task == Task::Binary && cfg.loss == LossKind::Hinge) {
    s["metrics"] = {
        {"train_errors", classification_errors(rep.theta_star, shape, td.train)},
        {"train_size", td.train.m()},
        {"test_errors", classification_errors(rep.theta_star, shape, td.test)},
        {"test_size", td.test.m()},
    };
  } else {
    const Vector train_pred = predict(rep.theta_star, shape, td.train.inputs);
    const Vector test_pred = predict(rep.theta_star, shape, td.test.inputs);
    s["metrics"] = {
        {"train_rms_error", rms_error(train_pred, td.train.targets)},
        {"train_max_error", max_error(train_pred, td.train.targets)},
        {"test_rms_error", rms_error(test_pred, td.test.targets)},
        {"test_max_error", max_error(test_pred, td.test.targets)},
    };
  }

  const ResidualEval final_eval =
      inner_eval(rep.theta_star, shape, td.train.inputs, td.train.targets, cfg.loss);
  const RankInfo rank = jacobian_rank(final_eval.J);
  s["rank"] = {
      {"rank", rank.rank},
      {"rows", final_eval.m()},
      {"full_row_rank", rank.full_row_rank},
      {"sigma_max", rank.sigma_max},
      {"sigma_min", rank.sigma_min},
  };
  result.summary = s;

  ensure_dir(cfg.out);
  write_trace_csv(rep, cfg.out / "trace.csv");
  {
    auto out = open_out(cfg.out / "summary.json");
    out << s.dump(2) << '\n';
  }
  if (cfg.save_model) {
    auto out = open_out(cfg.out / "model.csv");
    out << "theta\n";
    for (Eigen::Index i = 0; i < rep.theta_star.size(); ++i) {
      out << fmt17(rep.theta_star[i]) << '\n';
    }
  }
  return result;
}

std::pair<std::filesystem::path, std::filesystem::path> gen_data(
    const ExperimentConfig& cfg) {
  cfg.validate();
  const TaskData td = load_task(cfg);
  ensure_dir(cfg.out);
  std::string stem = std::string(to_string(cfg.task));
  if (cfg.task == TaskKind::Digits) {
    stem += "_" + std::to_string(cfg.pair.first) + "_" + std::to_string(cfg.pair.second);
  }
  const auto train_path = cfg.out / (stem + "_train.csv");
  const auto test_path = cfg.out / (stem + "_test.csv");
  write_dataset_csv(td.train, train_path);
  write_dataset_csv(td.test, test_path);
  return {train_path, test_path};
}

std::vector<SolverRun> compare_optimizers(const ExperimentConfig& cfg) {
  cfg.validate();
  const TaskData td = load_task(cfg);
  const int q = cfg.q.value_or(adaptive_network_size(td.train.m(), td.train.d()));
  const NetworkShape shape(td.train.d(), q);
  const ParamVector theta0 = initial_point(cfg, shape);

  constexpr std::array<SolverKind, 4> solvers = {SolverKind::GLPA, SolverKind::SGDM,
                                                 SolverKind::RMSProp, SolverKind::Adam};
  std::vector<SolverRun> runs(solvers.size());
  std::vector<std::string> errors(solvers.size());
  // Each fit owns its state; results are merged in fixed solver order afterwards.
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < static_cast<int>(solvers.size()); ++i) {
    try {
      runs[i].solver = std::string(to_string(solvers[i]));
      runs[i].report = train(cfg, solvers[i], td.train, shape, theta0);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error(std::string(to_string(solvers[i])) + ": " + errors[i]);
    }
  }

  ensure_dir(cfg.out);
  {
    auto out = open_out(cfg.out / "compare.csv");
    out << "solver,k,objective\n";
    for (const auto& run : runs) {
      for (const auto& r : run.report.trace) {
        out << run.solver << ',' << r.k << ',' << fmt17(r.objective) << '\n';
      }
    }
  }
  json s;
  s["schema_version"] = kSummarySchemaVersion;
  s["config"] = config_json(cfg, q);
  json finals = json::object();
  for (const auto& run : runs) {
    json entry = {
        {"final_objective", run.report.final_objective},
        {"iterations", static_cast<int>(run.report.trace.size()) - 1},
        {"converged", run.report.converged},
    };
    if (td.train.task == Task::Binary && cfg.loss == LossKind::Hinge) {
      entry["train_errors"] = classification_errors(run.report.theta_star, shape, td.train);
      entry["test_errors"] = classification_errors(run.report.theta_star, shape, td.test);
    }
    finals[run.solver] = entry;
  }
  s["solvers"] = finals;
  {
    auto out = open_out(cfg.out / "compare_summary.json");
    out << s.dump(2) << '\n';
  }
  return runs;
}

}  // namespace sigcomp
