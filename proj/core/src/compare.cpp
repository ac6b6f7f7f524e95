#include "drillboom/compare.hpp"

#include <cmath>
#include <ostream>

#include "drillboom/csv.hpp"

namespace drillboom {

namespace {

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

ComparisonSummary compare_methods(const Controller& controller, HoleSeekingEnv& env,
                                  std::span<const std::uint64_t> seeds,
                                  const IkParams& ik_params, const JointVector& tol) {
  ComparisonSummary summary;
  std::vector<double> integrated, hierarchical;
  int trial = 0;
  for (std::uint64_t seed : seeds) {
    Observation obs = env.reset(seed);
    const JointVector q0 = env.q();
    const TargetHole hole = env.hole();

    std::vector<JointVector> trajectory{q0};
    while (!env.done()) {
      const StepResult r = env.step(controller(obs));
      trajectory.push_back(r.info.q);
      obs = r.observation;
    }
    const StepReport policy_steps = make_step_report(effective_steps(trajectory, tol));

    const IkSolution ik = solve_ik(env.config(), hole, q0, ik_params);
    const StepReport plan =
        sequential_plan(env.config(), q0, ik.q_star, env.env_config().control_hz);

    TrialRecord rec;
    rec.trial = trial++;
    rec.seed = seed;
    rec.integrated_steps = policy_steps.integrated_steps;
    rec.hierarchical_steps = plan.hierarchical_steps;
    rec.ik_iterations = ik.iterations;
    rec.ik_converged = ik.converged;
    summary.trials.push_back(rec);

    if (!ik.converged) {
      ++summary.n_excluded;
      continue;
    }
    integrated.push_back(rec.integrated_steps);
    hierarchical.push_back(rec.hierarchical_steps);
  }
  mean_std(integrated, summary.integrated_mean, summary.integrated_std);
  mean_std(hierarchical, summary.hierarchical_mean, summary.hierarchical_std);
  summary.ratio = summary.integrated_mean > 0.0 ? summary.hierarchical_mean / summary.integrated_mean
                                                : 0.0;
  return summary;
}

void write_comparison_csv(std::ostream& out, const ComparisonSummary& summary) {
  CsvWriter csv(out, {"trial", "seed", "integrated_steps", "hierarchical_steps", "ik_iterations",
                      "ik_converged"});
  for (const auto& t : summary.trials) {
    csv.row({std::to_string(t.trial), std::to_string(t.seed), std::to_string(t.integrated_steps),
             std::to_string(t.hierarchical_steps), std::to_string(t.ik_iterations),
             t.ik_converged ? "1" : "0"});
  }
}

void write_comparison_summary_csv(std::ostream& out, const ComparisonSummary& summary) {
  CsvWriter csv(out, {"n_trials", "n_excluded", "integrated_mean", "integrated_std",
                      "hierarchical_mean", "hierarchical_std", "ratio"});
  csv.row({std::to_string(summary.trials.size()), std::to_string(summary.n_excluded),
           format_number(summary.integrated_mean), format_number(summary.integrated_std),
           format_number(summary.hierarchical_mean), format_number(summary.hierarchical_std),
           format_number(summary.ratio)});
}

}  // namespace drillboom
