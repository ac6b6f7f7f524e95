#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "drillboom/environment.hpp"
#include "drillboom/ik_baseline.hpp"
#include "drillboom/kinematics.hpp"
#include "drillboom/rl/policy.hpp"
#include "drillboom/rl/replay_buffer.hpp"
#include "drillboom/rl/sac.hpp"

using namespace drillboom;

static void BM_ForwardKinematics(benchmark::State& state) {
  const BoomConfig boom = default_boom();
  const JointVector q = boom.nominal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_kinematics(boom, q));
  }
}
BENCHMARK(BM_ForwardKinematics);

static void BM_JacobianFd(benchmark::State& state) {
  const BoomConfig boom = default_boom();
  const JointVector q = boom.nominal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobian_fd(boom, q));
  }
}
BENCHMARK(BM_JacobianFd);

static void BM_SolveIk(benchmark::State& state) {
  const BoomConfig boom = default_boom();
  const EnvConfig env;
  const TargetHole hole = sample_target(7, env.workspace, env.cone_half_angle, env.depth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ik(boom, hole, boom.nominal()));
  }
}
BENCHMARK(BM_SolveIk);

static void BM_EnvStep(benchmark::State& state) {
  HoleSeekingEnv env(default_boom(), EnvConfig{});
  env.reset(1);
  const Action a = Action::Constant(0.01);
  for (auto _ : state) {
    if (env.done()) env.reset(1);
    benchmark::DoNotOptimize(env.step(a));
  }
}
BENCHMARK(BM_EnvStep);

// The 14 -> 256 -> 256 -> 8 deterministic policy, one observation per call.
static void BM_PolicyForward(benchmark::State& state) {
  const BoomConfig boom = default_boom();
  const EnvConfig env_cfg;
  rl::TrainConfig cfg;
  rl::SacAgent agent(cfg, env_cfg.mode.dimension(), kJointCount);
  const rl::Policy policy = agent.policy(rl::make_observation_normalizer(boom, env_cfg),
                                         action_bound(boom), env_cfg.mode);
  HoleSeekingEnv env(boom, env_cfg);
  const Observation obs = env.reset(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy.act(obs, rl::ActMode::deterministic));
  }
}
BENCHMARK(BM_PolicyForward);

static void BM_SacUpdate(benchmark::State& state) {
  rl::TrainConfig cfg;
  rl::SacAgent agent(cfg, 14, kJointCount);
  std::mt19937_64 rng(5);
  rl::ReplayBuffer buffer(1024);
  std::normal_distribution<double> n(0.0, 0.5);
  for (int i = 0; i < 1024; ++i) {
    rl::Transition t;
    t.obs = Eigen::VectorXd::NullaryExpr(14, [&] { return n(rng); });
    t.next_obs = Eigen::VectorXd::NullaryExpr(14, [&] { return n(rng); });
    t.action = Eigen::VectorXd::NullaryExpr(kJointCount, [&] { return std::tanh(n(rng)); });
    t.reward = n(rng);
    buffer.add(t);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(agent.update(buffer.sample(256, rng), rng));
  }
}
BENCHMARK(BM_SacUpdate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
