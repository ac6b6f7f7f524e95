#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "drillboom/environment.hpp"
#include "drillboom/ik_baseline.hpp"

namespace drillboom {

using Controller = std::function<Action(const Observation&)>;

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int integrated_steps = 0;
  int hierarchical_steps = 0;
  int ik_iterations = 0;
  bool ik_converged = false;
};

struct ComparisonSummary {
  std::vector<TrialRecord> trials;  // every trial, including excluded ones
  int n_excluded = 0;               // trials whose IK did not converge
  double integrated_mean = 0.0, integrated_std = 0.0;
  double hierarchical_mean = 0.0, hierarchical_std = 0.0;
  double ratio = 0.0;  // hierarchical_mean / integrated_mean
};

/**
 * Paired integrated-vs-hierarchical step accounting.
 *
 * For each seed: the controller runs a full episode; integrated steps are the
 * largest per-joint effective step count of that trajectory. The hierarchical
 * count is sequential_plan from the same initial posture to the IK solution
 * of the same hole. Trials whose IK fails are kept in `trials` but excluded
 * from the statistics.
 */
ComparisonSummary compare_methods(const Controller& controller, HoleSeekingEnv& env,
                                  std::span<const std::uint64_t> seeds,
                                  const IkParams& ik_params = {},
                                  const JointVector& tol = default_effective_step_tolerance());

/// Columns: trial, seed, integrated_steps, hierarchical_steps, ik_iterations, ik_converged.
void write_comparison_csv(std::ostream& out, const ComparisonSummary& summary);
/// Columns: n_trials, n_excluded, integrated_mean, integrated_std, hierarchical_mean,
/// hierarchical_std, ratio.
void write_comparison_summary_csv(std::ostream& out, const ComparisonSummary& summary);

}  // namespace drillboom
