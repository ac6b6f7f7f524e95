#include "drillboom/rl/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "drillboom/csv.hpp"

namespace drillboom::rl {

namespace {

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

Transition make_transition(const ObservationNormalizer& norm, const Observation& obs,
                           const Eigen::VectorXd& action_n, const StepResult& step) {
  // Horizon ends are truncations, so every stored transition bootstraps.
  return Transition{norm.apply(obs), action_n, step.reward, norm.apply(step.observation), false};
}

}  // namespace

std::vector<std::uint64_t> evaluation_seeds(int n, std::uint64_t base) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(std::max(n, 0)));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = base + i;
  return seeds;
}

EvaluationReport summarize(std::vector<EpisodeRecord> episodes) {
  std::sort(episodes.begin(), episodes.end(),
            [](const EpisodeRecord& a, const EpisodeRecord& b) { return a.seed < b.seed; });
  EvaluationReport r;
  std::vector<double> ret, ec, ep;
  for (const auto& e : episodes) {
    ret.push_back(e.episode_return);
    ec.push_back(e.eps_current);
    ep.push_back(e.eps_preview);
  }
  mean_std(ret, r.return_mean, r.return_std);
  mean_std(ec, r.eps_current_mean, r.eps_current_std);
  mean_std(ep, r.eps_preview_mean, r.eps_preview_std);
  r.episodes = std::move(episodes);
  return r;
}

std::vector<StepResult> rollout(HoleSeekingEnv& env, std::uint64_t seed,
                                const std::function<Action(const Observation&)>& controller) {
  std::vector<StepResult> steps;
  steps.reserve(static_cast<std::size_t>(env.env_config().horizon));
  Observation obs = env.reset(seed);
  while (!env.done()) {
    steps.push_back(env.step(controller(obs)));
    obs = steps.back().observation;
  }
  return steps;
}

EvaluationReport evaluate_policy(const Policy& policy, const EnvFactory& make_env,
                                 std::span<const std::uint64_t> seeds) {
  HoleSeekingEnv env = make_env();
  std::vector<EpisodeRecord> records;
  records.reserve(seeds.size());
  const auto controller = [&](const Observation& obs) {
    return policy.act(obs, ActMode::deterministic);
  };
  for (std::uint64_t seed : seeds) {
    const auto steps = rollout(env, seed, controller);
    EpisodeRecord rec;
    rec.seed = seed;
    for (const auto& s : steps) rec.episode_return += s.reward;
    const EpisodeMetrics m = episode_metrics(std::span<const StepResult>(steps));
    rec.eps_current = m.eps_current;
    rec.eps_preview = m.eps_preview;
    records.push_back(rec);
  }
  return summarize(std::move(records));
}

Policy initial_policy(const EnvFactory& make_env, const TrainConfig& cfg) {
  const HoleSeekingEnv env = make_env();
  const int obs_dim = env.env_config().mode.dimension();
  const auto agent = make_agent(cfg, obs_dim, kJointCount);
  return agent->policy(make_observation_normalizer(env.config(), env.env_config()),
                       action_bound(env.config()), env.env_config().mode);
}

TrainResult train(const EnvFactory& make_env, const TrainConfig& cfg,
                  const TrainCallbacks& callbacks) {
  if (auto errors = validate(cfg); !errors.empty()) {
    throw std::invalid_argument("train: " + errors.front());
  }
  HoleSeekingEnv env = make_env();
  const ObservationMode mode = env.env_config().mode;
  const ObservationNormalizer norm = make_observation_normalizer(env.config(), env.env_config());
  const Action a_max = action_bound(env.config());
  const auto agent = make_agent(cfg, mode.dimension(), kJointCount);

  std::mt19937_64 episode_seeds(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL);
  std::mt19937_64 rng(cfg.seed ^ 0x7a3d1e5b2c4f6a8dULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const auto eval_seeds = evaluation_seeds(cfg.eval_episodes);

  ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity));
  TrainResult result;

  auto evaluate_point = [&](long iteration) {
    Policy current = agent->policy(norm, a_max, mode);
    const EvaluationReport report = evaluate_policy(current, make_env, eval_seeds);
    CurvePoint p{iteration, report.return_mean, report.return_std, report.eps_current_mean,
                 report.eps_preview_mean};
    result.curve.push_back(p);
    if (callbacks.on_checkpoint) callbacks.on_checkpoint(current, p);
    result.policy = std::move(current);
  };

  if (cfg.total_iterations == 0) {
    evaluate_point(0);
    return result;
  }

  Observation obs = env.reset(episode_seeds());
  auto env_step = [&](const Eigen::VectorXd& action_n) {
    const StepResult step = env.step(action_n.cwiseProduct(a_max));
    buffer.add(make_transition(norm, obs, action_n, step));
    ++result.env_steps;
    obs = step.done ? env.reset(episode_seeds()) : step.observation;
  };

  for (long s = 0; s < cfg.warmup_steps; ++s) {
    Eigen::VectorXd action_n(kJointCount);
    for (int j = 0; j < kJointCount; ++j) action_n[j] = uniform(rng);
    env_step(action_n);
  }

  Policy last_good = agent->policy(norm, a_max, mode);
  for (long it = 1; it <= cfg.total_iterations; ++it) {
    for (int k = 0; k < cfg.env_steps_per_update; ++k) env_step(agent->explore(norm.apply(obs), rng));
    const UpdateDiagnostics diag =
        agent->update(buffer.sample(static_cast<std::size_t>(cfg.batch_size), rng), rng);
    if (!diag.finite() || !agent->parameters_finite()) {
      throw TrainingDiverged("training diverged at iteration " + std::to_string(it), last_good,
                             it);
    }
    if (it % cfg.eval_interval == 0 || it == cfg.total_iterations) {
      evaluate_point(it);
      last_good = result.policy;
    }
  }
  return result;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  CsvWriter csv(out, {"iteration", "eval_return_mean", "eval_return_std", "eps_current",
                      "eps_preview"});
  for (const auto& p : curve) {
    csv.row({format_number(static_cast<long long>(p.iteration)), format_number(p.eval_return_mean),
             format_number(p.eval_return_std), format_number(p.eps_current),
             format_number(p.eps_preview)});
  }
}

std::vector<CurvePoint> read_curve_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const auto it = table.numeric_column("iteration");
  const auto rm = table.numeric_column("eval_return_mean");
  const auto rs = table.numeric_column("eval_return_std");
  const auto ec = table.numeric_column("eps_current");
  const auto ep = table.numeric_column("eps_preview");
  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < it.size(); ++i) {
    curve.push_back({static_cast<long>(it[i]), rm[i], rs[i], ec[i], ep[i]});
  }
  return curve;
}

void write_episode_csv(std::ostream& out, const EvaluationReport& report) {
  CsvWriter csv(out, {"episode", "seed", "return", "eps_current", "eps_preview"});
  long long k = 0;
  for (const auto& e : report.episodes) {
    csv.row({format_number(k++), std::to_string(e.seed), format_number(e.episode_return),
             format_number(e.eps_current), format_number(e.eps_preview)});
  }
}

}  // namespace drillboom::rl
