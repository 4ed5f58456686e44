// Command-line front end: train a sigmoid network, export datasets, or compare optimizers.
//
//   sigcomp run --task franke --loss quadratic --solver lpa --q 72 --seed 7 --out runs/a
//   sigcomp franke --loss absolute --solver glpa          (shorthand for run --task franke)
//   sigcomp gen-data --task franke --out data/
//   sigcomp compare --task digits --pair 0,1 --loss hinge --out runs/cmp

#include "sigcomp/experiment.hpp"
#include "sigcomp/losses.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

struct RawOptions {
  std::string task = "franke";
  std::string loss = "quadratic";
  std::string solver = "lpa";
  std::string init = "uniform";
  std::string pair = "0,1";
  std::string dual_residual = "literal";
  int q = 0;
  double noise_sigma = 0.0;
};

void add_common(CLI::App& app, sigcomp::ExperimentConfig& cfg, RawOptions& raw) {
  auto& s = cfg.solver_cfg;
  app.add_option("--task", raw.task, "franke | digits | custom-csv")
      ->check(CLI::IsMember({"franke", "digits", "custom-csv"}));
  app.add_option("--loss", raw.loss, "quadratic | absolute | hinge")
      ->check(CLI::IsMember({"quadratic", "absolute", "hinge"}));
  app.add_option("--solver", raw.solver, "lpa | glpa | sgdm | rmsprop | adam")
      ->check(CLI::IsMember({"lpa", "glpa", "sgdm", "rmsprop", "adam"}));
  app.add_option("--q", raw.q, "hidden neurons (default: adaptive network size)");
  app.add_option("--t", s.t, "proximal stepsize");
  app.add_option("--step-tol", s.step_tol, "stop when the step norm drops below this");
  app.add_option("--max-outer", s.max_outer, "outer iteration cap");
  app.add_option("--c", s.c, "sufficient-decrease constant");
  app.add_option("--tau", s.tau, "backtracking shrink factor");
  app.add_option("--max-backtracks", s.max_backtracks, "line-search trials per iteration");
  app.add_option("--rho", s.admm.rho, "ADMM penalty");
  app.add_option("--eps", s.admm.eps, "ADMM residual tolerance");
  app.add_option("--admm-max-iters", s.admm.max_iters, "ADMM iteration cap");
  app.add_option("--dual-residual", raw.dual_residual, "literal | transposed")
      ->check(CLI::IsMember({"literal", "transposed"}));
  app.add_option("--lr", cfg.lr, "baseline learning rate");
  app.add_option("--momentum", cfg.momentum, "SGDM momentum");
  app.add_option("--iters", cfg.baseline_iters, "baseline iterations");
  app.add_option("--noise-sigma", raw.noise_sigma, "add positive noise to Franke targets");
  app.add_option("--seed", cfg.seed, "seed for init, noise and splits");
  app.add_option("--init", raw.init, "zero | uniform")
      ->check(CLI::IsMember({"zero", "uniform"}));
  app.add_option("--pair", raw.pair, "digit pair A,B (A -> +1, B -> -1)");
  app.add_option("--train-frac", cfg.train_frac, "training fraction for digits");
  app.add_flag("--scale-pixels", cfg.scale_pixels, "divide digit pixels by 16");
  app.add_option("--n-train", cfg.n_train, "Franke training points");
  app.add_option("--n-test", cfg.n_test, "Franke test points");
  app.add_option("--data", cfg.data, "digits CSV or custom training CSV");
  app.add_option("--test-data", cfg.test_data, "custom test CSV");
  app.add_option("--out", cfg.out, "output directory");
  app.add_flag("--save-model", cfg.save_model, "also write model.csv");
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("--pair expects A,B");
  }
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

void finish(sigcomp::ExperimentConfig& cfg, const RawOptions& raw, const CLI::App& app) {
  cfg.task = sigcomp::parse_task(raw.task);
  cfg.loss = sigcomp::parse_loss(raw.loss);
  cfg.solver = sigcomp::parse_solver(raw.solver);
  cfg.init = sigcomp::parse_init(raw.init);
  cfg.pair = parse_pair(raw.pair);
  cfg.solver_cfg.admm.dual_residual = raw.dual_residual == "literal"
                                          ? sigcomp::DualResidual::Literal
                                          : sigcomp::DualResidual::Transposed;
  if (app.count("--q") > 0) cfg.q = raw.q;
  if (app.count("--noise-sigma") > 0) cfg.noise_sigma = raw.noise_sigma;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && (args[0] == "franke" || args[0] == "digits" || args[0] == "custom-csv")) {
    args.insert(args.begin(), {"run", "--task"});
  }

  CLI::App app{"Composite-optimization training for sigmoid networks", "sigcomp"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  sigcomp::ExperimentConfig run_cfg, gen_cfg, cmp_cfg;
  RawOptions run_raw, gen_raw, cmp_raw;
  cmp_raw.solver = "glpa";
  cmp_raw.loss = "hinge";
  cmp_raw.task = "digits";

  auto* run = app.add_subcommand("run", "train one model and write trace.csv / summary.json");
  add_common(*run, run_cfg, run_raw);
  auto* gen = app.add_subcommand("gen-data", "write training and test sets as CSV");
  add_common(*gen, gen_cfg, gen_raw);
  auto* cmp = app.add_subcommand("compare", "GLPA vs SGDM, RMSProp and Adam on one task");
  add_common(*cmp, cmp_cfg, cmp_raw);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      finish(run_cfg, run_raw, *run);
      const auto res = sigcomp::run_experiment(run_cfg);
      const auto& s = res.summary;
      std::cout << "solver " << s["config"]["solver"].get<std::string>() << "  q " << res.q
                << "  iterations " << s["iterations"] << "  stop " << s["stop_reason"].get<std::string>()
                << "\nfinal objective " << s["final_objective"] << "\nmetrics "
                << s["metrics"].dump() << "\nwrote " << (run_cfg.out / "summary.json").string()
                << '\n';
    } else if (*gen) {
      finish(gen_cfg, gen_raw, *gen);
      const auto [train, test] = sigcomp::gen_data(gen_cfg);
      std::cout << "wrote " << train.string() << "\nwrote " << test.string() << '\n';
    } else if (*cmp) {
      finish(cmp_cfg, cmp_raw, *cmp);
      const auto runs = sigcomp::compare_optimizers(cmp_cfg);
      for (const auto& r : runs) {
        std::cout << r.solver << "  final objective " << r.report.final_objective
                  << "  iterations " << r.report.trace.size() - 1 << '\n';
      }
      std::cout << "wrote " << (cmp_cfg.out / "compare.csv").string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
