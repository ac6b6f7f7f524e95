#include <random>

#include <gtest/gtest.h>

#include "drillboom/compare.hpp"
#include "drillboom/csv.hpp"
#include "drillboom/error.hpp"
#include "drillboom/ik_baseline.hpp"

using namespace drillboom;

namespace {

JointVector random_posture(const BoomConfig& boom, std::mt19937_64& rng, double margin = 0.0) {
  JointVector q;
  for (int i = 0; i < kJointCount; ++i) {
    const double span = boom.joints[i].q_max - boom.joints[i].q_min;
    q[i] = std::uniform_real_distribution<double>(boom.joints[i].q_min + margin * span,
                                                  boom.joints[i].q_max - margin * span)(rng);
  }
  return q;
}

}  // namespace

TEST(Ik, FixedPointConvergesImmediately) {
  const BoomConfig boom = default_boom();
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const JointVector q = random_posture(boom, rng, 0.05);
    const DrillEndPose pose = forward_kinematics(boom, q);
    const TargetHole hole{pose.position, pose.position + 3.0 * pose.direction};
    const IkSolution sol = solve_ik(boom, hole, q);
    EXPECT_TRUE(sol.converged);
    EXPECT_LE(sol.iterations, 2);
    EXPECT_LT(sol.residual_pos, 1e-9);
    EXPECT_LT(sol.residual_dir, 1e-9);
  }
}

TEST(Ik, RecoversReachablePoses) {
  const BoomConfig boom = default_boom();
  std::mt19937_64 rng(32);
  int converged = 0;
  for (int k = 0; k < 50; ++k) {
    // Targets produced by a nearby posture are reachable by construction.
    JointVector q_true = boom.nominal();
    for (int i = 0; i < kJointCount; ++i) {
      const double span = boom.joints[i].q_max - boom.joints[i].q_min;
      q_true[i] += std::uniform_real_distribution<double>(-0.15, 0.15)(rng) * span;
    }
    const DrillEndPose pose = forward_kinematics(boom, q_true);
    const TargetHole hole{pose.position, pose.position + 3.0 * pose.direction};
    const IkSolution sol = solve_ik(boom, hole, boom.nominal());
    if (sol.converged) {
      ++converged;
      const DrillEndPose reached = forward_kinematics(boom, sol.q_star);
      EXPECT_LT((reached.position - hole.start).norm(), 1e-4);
      EXPECT_LT((reached.direction - hole.direction()).norm(), 1e-4);
    }
    EXPECT_EQ(sol.converged, sol.residual_pos < 1e-4 && sol.residual_dir < 1e-4);
  }
  EXPECT_GE(converged, 48);
}

TEST(Ik, UnreachableTargetIsReportedNotThrown) {
  const BoomConfig boom = default_boom();
  // Well beyond the 11.8 m sum of link lengths.
  const TargetHole hole{Vec3(20.0, 0.0, 0.0), Vec3(23.0, 0.0, 0.0)};
  const IkSolution sol = solve_ik(boom, hole, boom.nominal());
  EXPECT_FALSE(sol.converged);
  EXPECT_GT(sol.residual_pos, 1.0);
  EXPECT_EQ(sol.iterations, IkParams{}.max_iterations);
  EXPECT_TRUE(clamp_joint_vector(boom, sol.q_star).q == sol.q_star);
}

TEST(Ik, ResidualNeverIncreases) {
  const BoomConfig boom = default_boom();
  const EnvConfig env;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TargetHole hole = sample_target(seed, env.workspace, env.cone_half_angle, env.depth);
    double previous = 1e300;
    for (int iters = 0; iters <= 6; ++iters) {
      IkParams p;
      p.max_iterations = iters;
      const IkSolution sol = solve_ik(boom, hole, boom.nominal(), p);
      const double total = std::hypot(sol.residual_pos, sol.residual_dir);
      EXPECT_LE(total, previous + 1e-15);
      previous = total;
    }
  }
}

TEST(Ik, StartOutsideLimitsThrows) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  q[7] = 10.0;
  const TargetHole hole{Vec3(8.5, 0, 0), Vec3(11.5, 0, 0)};
  EXPECT_THROW(solve_ik(boom, hole, q), OutOfRange);
}

TEST(SequentialPlan, Arithmetic) {
  const BoomConfig boom = default_boom();
  const JointVector q0 = boom.nominal();
  EXPECT_EQ(sequential_plan(boom, q0, q0, 10.0).hierarchical_steps, 0);

  JointVector q1 = q0;
  q1[0] += 0.8;  // 0.8 rad at 0.08 rad/s and 10 Hz
  const StepReport one = sequential_plan(boom, q0, q1, 10.0);
  EXPECT_EQ(one.per_joint_steps[0], 100);
  EXPECT_EQ(one.hierarchical_steps, 100);
  EXPECT_EQ(one.integrated_steps, 100);

  JointVector q2 = q0;
  for (int i = 0; i < kJointCount; ++i) q2[i] += 0.5 * boom.joints[i].rate_max;  // 5 steps each
  const StepReport all = sequential_plan(boom, q0, q2, 10.0);
  EXPECT_EQ(all.integrated_steps, 5);
  EXPECT_EQ(all.hierarchical_steps, 40);
  EXPECT_THROW(sequential_plan(boom, q0, q1, 0.0), InvalidParameter);
}

TEST(SequentialPlan, PartialStepRoundsUp) {
  const BoomConfig boom = default_boom();
  JointVector q1 = boom.nominal();
  q1[7] += 0.0021;  // 1.05 steps of 2 mm
  EXPECT_EQ(sequential_plan(boom, boom.nominal(), q1, 10.0).per_joint_steps[7], 2);
}

TEST(StepReport, SumMaxInvariant) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> d(0, 500);
  for (int k = 0; k < 1000; ++k) {
    std::array<int, kJointCount> steps;
    for (int& s : steps) s = d(rng);
    const StepReport r = make_step_report(steps);
    EXPECT_GE(r.hierarchical_steps, r.integrated_steps);
    EXPECT_EQ(r.integrated_steps, *std::max_element(steps.begin(), steps.end()));
  }
}

TEST(EffectiveSteps, ConstantTrajectoryIsZero) {
  const std::vector<JointVector> traj(10, default_boom().nominal());
  const auto steps = effective_steps(traj, default_effective_step_tolerance());
  for (int s : steps) EXPECT_EQ(s, 0);
  EXPECT_THROW(effective_steps(std::span<const JointVector>(), default_effective_step_tolerance()),
               InvalidParameter);
}

TEST(EffectiveSteps, RampThenHold) {
  std::vector<JointVector> traj;
  JointVector q = JointVector::Zero();
  traj.push_back(q);
  for (int t = 1; t <= 100; ++t) {
    if (t <= 37) q[0] += 0.01;
    traj.push_back(q);
  }
  EXPECT_EQ(effective_steps(traj, default_effective_step_tolerance())[0], 37);
}

TEST(EffectiveSteps, MatchesIndependentScan) {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> settle(0, 60);
  std::normal_distribution<double> jitter(0.0, 1e-4);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<int, kJointCount> settle_at;
    for (int& s : settle_at) s = settle(rng);
    std::vector<JointVector> traj;
    for (int t = 0; t <= 80; ++t) {
      JointVector q;
      for (int j = 0; j < kJointCount; ++j) {
        // Moves 0.01 per step until it settles, then jitters well inside tolerance.
        q[j] = 0.01 * std::min(t, settle_at[j]) + (t > settle_at[j] ? jitter(rng) : 0.0);
      }
      traj.push_back(q);
    }
    const JointVector tol = default_effective_step_tolerance();
    const auto got = effective_steps(traj, tol);
    for (int j = 0; j < kJointCount; ++j) {
      int expected = 0;
      for (int t = 0; t < static_cast<int>(traj.size()); ++t) {
        if (std::abs(traj[t][j] - traj.back()[j]) > tol[j]) expected = t + 1;
      }
      EXPECT_EQ(got[j], expected);
    }
    // Appending settled frames changes nothing.
    for (int extra = 0; extra < 5; ++extra) traj.push_back(traj.back());
    EXPECT_EQ(effective_steps(traj, tol), got);
  }
}

TEST(Compare, TeleportingControllerNeedsOneStep) {
  EnvConfig cfg;
  cfg.horizon = 30;
  // Unlimited rates let a single command land exactly on the IK goal.
  BoomConfig fast = default_boom();
  for (auto& j : fast.joints) j.rate_max = 1e6;
  HoleSeekingEnv env(fast, cfg);
  bool first = true;
  const Controller teleport = [&](const Observation&) -> Action {
    if (!first) return Action::Zero();
    first = false;
    const JointVector goal = solve_ik(fast, env.hole(), env.q()).q_star;
    return (goal - env.q()) * cfg.control_hz;
  };
  for (std::uint64_t s : {1, 2, 3}) {
    first = true;
    const std::uint64_t one[] = {s};
    const ComparisonSummary r = compare_methods(teleport, env, one);
    ASSERT_EQ(r.trials.size(), 1u);
    EXPECT_EQ(r.trials[0].integrated_steps, 1);
    EXPECT_GE(r.trials[0].hierarchical_steps, r.trials[0].integrated_steps);
  }
}

TEST(Compare, SummaryIsConsistentAndCsvParses) {
  const BoomConfig boom = default_boom();
  EnvConfig cfg;
  cfg.horizon = 40;
  HoleSeekingEnv env(boom, cfg);
  const Controller idle = [](const Observation&) { return Action::Zero(); };
  const std::vector<std::uint64_t> seeds{10, 11, 12, 13};
  const ComparisonSummary s = compare_methods(idle, env, seeds);
  ASSERT_EQ(s.trials.size(), 4u);
  for (const auto& t : s.trials) {
    EXPECT_EQ(t.integrated_steps, 0);
    EXPECT_TRUE(t.ik_converged);
    EXPECT_GT(t.hierarchical_steps, 0);
  }
  EXPECT_EQ(s.ratio, 0.0);  // undefined for an idle controller, reported as zero

  std::stringstream rows, summary;
  write_comparison_csv(rows, s);
  write_comparison_summary_csv(summary, s);
  const CsvTable t = read_csv(rows);
  EXPECT_EQ(t.header, (std::vector<std::string>{"trial", "seed", "integrated_steps",
                                                "hierarchical_steps", "ik_iterations",
                                                "ik_converged"}));
  EXPECT_EQ(t.rows.size(), 4u);
  const CsvTable sm = read_csv(summary);
  EXPECT_EQ(sm.numeric_column("hierarchical_mean")[0], s.hierarchical_mean);
}
