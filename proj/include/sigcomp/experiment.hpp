#pragma once

#include "sigcomp/data.hpp"
#include "sigcomp/solvers.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigcomp {

enum class TaskKind { Franke, Digits, CustomCsv };
enum class SolverKind { LPA, GLPA, SGDM, RMSProp, Adam };
enum class InitKind { Zero, Uniform };

TaskKind parse_task(std::string_view name);
SolverKind parse_solver(std::string_view name);
InitKind parse_init(std::string_view name);
std::string_view to_string(TaskKind task);
std::string_view to_string(SolverKind solver);
std::string_view to_string(InitKind init);

inline constexpr int kSummarySchemaVersion = 1;

struct ExperimentConfig {
  TaskKind task = TaskKind::Franke;
  LossKind loss = LossKind::Quadratic;
  SolverKind solver = SolverKind::LPA;
  std::optional<int> q;
  SolverConfig solver_cfg;

  double lr = 1e-3;
  double momentum = 0.9;
  int baseline_iters = 1000;

  std::optional<double> noise_sigma;
  std::uint64_t seed = 0;
  InitKind init = InitKind::Uniform;

  int n_train = 289;
  int n_test = 121;
  std::pair<int, int> pair{0, 1};
  double train_frac = 0.7;
  bool scale_pixels = false;
  /// Digits CSV (digits task) or training CSV (custom-csv task).
  std::filesystem::path data;
  /// Optional test CSV for the custom-csv task.
  std::filesystem::path test_data;

  std::filesystem::path out = ".";
  bool save_model = false;

  /// Rejects inconsistent combinations before any computation runs.
  void validate() const;
};

/// Location of the digits export shipped with the sources.
std::filesystem::path default_digits_path();

struct TaskData {
  Dataset train;
  Dataset test;
};

TaskData load_task(const ExperimentConfig& cfg);

struct ExperimentResult {
  FitReport report;
  int q = 0;
  nlohmann::json summary;
};

/// Trains one model, writing trace.csv, summary.json and optionally model.csv under cfg.out.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Materializes the task's training and test sets as CSV under cfg.out.
/// Returns the written paths (train, test).
std::pair<std::filesystem::path, std::filesystem::path> gen_data(
    const ExperimentConfig& cfg);

struct SolverRun {
  std::string solver;
  FitReport report;
};

/// GLPA and the three baselines on one task and seed; writes compare.csv
/// (`solver,k,objective`) and compare_summary.json under cfg.out.
std::vector<SolverRun> compare_optimizers(const ExperimentConfig& cfg);

void write_trace_csv(const FitReport& report, const std::filesystem::path& path);

}  // namespace sigcomp
