#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "drillboom/environment.hpp"
#include "drillboom/error.hpp"
#include "drillboom/rl/agent.hpp"
#include "drillboom/rl/policy.hpp"
#include "drillboom/rl/train_config.hpp"

namespace drillboom::rl {

using EnvFactory = std::function<HoleSeekingEnv()>;

/// Seeds of evaluation episodes are drawn from a range disjoint from training episodes.
inline constexpr std::uint64_t kEvalSeedBase = 1'000'000;

std::vector<std::uint64_t> evaluation_seeds(int n, std::uint64_t base = kEvalSeedBase);

struct EpisodeRecord {
  std::uint64_t seed = 0;
  double episode_return = 0.0;
  double eps_current = 0.0;
  double eps_preview = 0.0;
};

struct EvaluationReport {
  std::vector<EpisodeRecord> episodes;  // sorted by seed
  double return_mean = 0.0, return_std = 0.0;
  double eps_current_mean = 0.0, eps_current_std = 0.0;
  double eps_preview_mean = 0.0, eps_preview_std = 0.0;
};

/// Aggregates per-episode records (sample standard deviation; zero for one episode).
EvaluationReport summarize(std::vector<EpisodeRecord> episodes);

/// Runs one deterministic-mode episode per seed.
EvaluationReport evaluate_policy(const Policy& policy, const EnvFactory& make_env,
                                 std::span<const std::uint64_t> seeds);

/// Rolls out an arbitrary controller for one episode and returns every step.
std::vector<StepResult> rollout(HoleSeekingEnv& env, std::uint64_t seed,
                                const std::function<Action(const Observation&)>& controller);

struct CurvePoint {
  long iteration = 0;
  double eval_return_mean = 0.0;
  double eval_return_std = 0.0;
  double eps_current = 0.0;
  double eps_preview = 0.0;
};

struct TrainResult {
  Policy policy;
  std::vector<CurvePoint> curve;
  long env_steps = 0;
};

struct TrainCallbacks {
  /// Called with the evaluated policy at every curve point.
  std::function<void(const Policy&, const CurvePoint&)> on_checkpoint;
};

class TrainingDiverged : public DivergenceError {
 public:
  TrainingDiverged(const std::string& what, Policy last_good, long iteration)
      : DivergenceError(what), last_good_(std::move(last_good)), iteration_(iteration) {}

  const Policy& last_good() const { return last_good_; }
  long iteration() const { return iteration_; }

 private:
  Policy last_good_;
  long iteration_;
};

/**
 * Collects `warmup_steps` uniform-random transitions, then alternates
 * `env_steps_per_update` behaviour-policy environment steps with one gradient
 * update. The policy is
 * evaluated every `eval_interval` updates and after the last one (a single
 * point at iteration 0 when no updates are requested). Deterministic given
 * `cfg.seed`. Throws TrainingDiverged on a non-finite loss or parameter.
 */
TrainResult train(const EnvFactory& make_env, const TrainConfig& cfg,
                  const TrainCallbacks& callbacks = {});

/// Policy the trainer would start from (network initialisation only).
Policy initial_policy(const EnvFactory& make_env, const TrainConfig& cfg);

/// Columns: iteration, eval_return_mean, eval_return_std, eps_current, eps_preview.
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);
std::vector<CurvePoint> read_curve_csv(std::istream& in);

/// Columns: episode, seed, return, eps_current, eps_preview.
void write_episode_csv(std::ostream& out, const EvaluationReport& report);

}  // namespace drillboom::rl
