#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "drillboom/compare.hpp"
#include "drillboom/harness/config.hpp"
#include "drillboom/rl/trainer.hpp"

namespace drillboom::harness {

/// Seeds of the paired comparison trials, disjoint from training and evaluation seeds.
inline constexpr std::uint64_t kCompareSeedBase = 2'000'000;
inline constexpr int kCompareTrials = 100;

/// Two-sided 95% Student-t half-width of the mean; zero for fewer than two values.
double ci95_half_width(const std::vector<double>& values);

/// Percentage by which `ours` improves on `baseline`: (baseline - ours) / baseline * 100.
double percentage_reduction(double baseline, double ours);

rl::EnvFactory env_factory(const ExperimentSpec& spec);

struct SeedRun {
  std::uint64_t seed = 0;
  rl::TrainResult result;
  rl::EvaluationReport untrained;  // freshly initialised policy on the same episodes
  rl::EvaluationReport final_eval;
};

struct BandPoint {
  long iteration = 0;
  int n = 0;
  double return_mean = 0.0, return_ci = 0.0;
  double eps_current_mean = 0.0, eps_current_ci = 0.0;
  double eps_preview_mean = 0.0, eps_preview_ci = 0.0;
};

struct TrainSummary {
  std::vector<SeedRun> runs;  // in seed-list order
  std::vector<BandPoint> band;
};

/**
 * Trains one agent per seed, then evaluates the untrained and the trained
 * policy on `n_eval_episodes` held-out episodes.
 *
 *   <out>/config.ini              resolved configuration
 *   <out>/seed_<s>/policy.bin     final checkpoint
 *   <out>/seed_<s>/curve.csv      learning curve
 *   <out>/seed_<s>/eval.csv       per-episode final evaluation
 *   <out>/summary.csv             curve mean and 95% half-width across seeds
 *   <out>/final.csv               per-seed untrained and final metrics
 *   <out>/report.txt
 *
 * On divergence the last good policy is written to seed_<s>/policy.bin and
 * rl::TrainingDiverged propagates.
 */
TrainSummary cmd_train(const ExperimentSpec& spec, const std::string& out_dir,
                       std::ostream* log = nullptr);

/// Evaluates a checkpoint on `n_eval_episodes` episodes: <out>/episodes.csv, summary.csv, report.txt.
rl::EvaluationReport cmd_eval(const ExperimentSpec& spec, const std::string& checkpoint,
                              const std::string& out_dir, std::ostream* log = nullptr);

struct GroupResult {
  int group = 0;
  std::string label;
  std::vector<double> eps_current;  // final mean per seed
  std::vector<double> eps_preview;
  double eps_current_mean = 0.0, eps_current_std = 0.0;
  double eps_preview_mean = 0.0, eps_preview_std = 0.0;
};

struct Reduction {
  std::string comparison;  // e.g. "preview vs non-preview (DH)"
  int baseline_group = 0;
  int improved_group = 0;
  double eps_current_pct = 0.0;
  double eps_preview_pct = 0.0;
};

struct AblationReport {
  std::array<GroupResult, 4> groups;
  std::vector<Reduction> reductions;
};

/// Builds group statistics and the pairwise reductions from per-seed final metrics.
AblationReport make_ablation_report(const std::array<std::vector<double>, 4>& eps_current,
                                    const std::array<std::vector<double>, 4>& eps_preview);

/**
 * Runs cmd_train for Groups 1-4 under identical seeds into <out>/group<g>/ and
 * writes <out>/ablation.csv (one row per group), <out>/reductions.csv and
 * <out>/report.txt.
 */
AblationReport cmd_ablate(const ExperimentSpec& spec, const std::string& out_dir,
                          std::ostream* log = nullptr);

std::vector<std::uint64_t> compare_seeds(int n = kCompareTrials);

/**
 * Paired integrated-vs-hierarchical trials with the checkpoint's policy:
 * <out>/compare.csv (one row per trial), <out>/compare_summary.csv and
 * <out>/report.txt.
 */
ComparisonSummary cmd_compare(const ExperimentSpec& spec, const std::string& checkpoint,
                              const std::string& out_dir, int trials = kCompareTrials,
                              std::ostream* log = nullptr);

struct BenchReport {
  long calls = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p99_ms = 0.0;
  double mean_integrated_steps = 0.0;
  double projected_total_ms = 0.0;  // mean_ms * mean_integrated_steps
};

/**
 * Times `calls` single-observation deterministic forward passes after a
 * warm-up, and the mean integrated step count over `step_trials` comparison
 * trials. Writes <out>/bench.csv and <out>/report.txt.
 */
BenchReport cmd_bench(const ExperimentSpec& spec, const std::string& checkpoint,
                      const std::string& out_dir, long calls = 100'000, int step_trials = 100,
                      std::ostream* log = nullptr);

}  // namespace drillboom::harness
