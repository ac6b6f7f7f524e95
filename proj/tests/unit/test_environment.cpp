#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "drillboom/csv.hpp"
#include "drillboom/environment.hpp"
#include "drillboom/error.hpp"
#include "oracles.hpp"

using namespace drillboom;

namespace {

TargetHole hole_from_pose(const DrillEndPose& pose, double depth) {
  return {pose.position, pose.position + depth * pose.direction};
}

EnvConfig quiet_env() {
  EnvConfig env;
  env.noise_revolute = 0.0;
  env.noise_prismatic = 0.0;
  return env;
}

}  // namespace

TEST(BoomModel, ReferenceBoomIsValid) {
  const BoomConfig boom = default_boom();
  EXPECT_TRUE(validate(boom).empty());
  EXPECT_EQ(boom.joints[2].kind, JointKind::prismatic);
  EXPECT_EQ(boom.joints[7].kind, JointKind::prismatic);
  for (int i : {0, 1, 3, 4, 5, 6}) EXPECT_EQ(boom.joints[i].kind, JointKind::revolute);
}

TEST(BoomModel, ValidationReportsWrongJointKinds) {
  BoomConfig boom = default_boom();
  boom.joints[2].kind = JointKind::revolute;
  const auto errors = validate(boom);
  ASSERT_FALSE(errors.empty());
  EXPECT_NE(errors.front().find("joint 3"), std::string::npos);
}

TEST(BoomModel, ValidationReportsEmptyRangesAndRates) {
  BoomConfig boom = default_boom();
  boom.joints[4].q_max = boom.joints[4].q_min;
  boom.joints[6].rate_max = 0.0;
  EXPECT_GE(validate(boom).size(), 2u);
}

TEST(BoomModel, DhRowsOverwriteOnlyTheVariableEntry) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  q[0] = 0.3;
  q[2] = 1.7;
  const auto rows = joint_vector_to_dh_rows(boom, q);
  EXPECT_DOUBLE_EQ(rows[0].theta, 0.3);
  EXPECT_DOUBLE_EQ(rows[0].alpha, boom.joints[0].fixed.alpha);
  EXPECT_DOUBLE_EQ(rows[2].d, 1.7);
  EXPECT_DOUBLE_EQ(rows[2].theta, boom.joints[2].fixed.theta);
  EXPECT_EQ(variable_entries(boom, rows), q);
}

TEST(BoomModel, DhRowsRejectWrongLength) {
  const std::vector<double> seven(7, 0.0);
  EXPECT_THROW(joint_vector_to_dh_rows(default_boom(), seven), InvalidParameter);
}

TEST(BoomModel, ClampFlagsOnlyClampedJoints) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  q[1] = 99.0;
  q[7] = -1.0;
  const ClampResult r = clamp_joint_vector(boom, q);
  EXPECT_TRUE(r.any());
  EXPECT_DOUBLE_EQ(r.q[1], boom.joints[1].q_max);
  EXPECT_DOUBLE_EQ(r.q[7], boom.joints[7].q_min);
  for (int i = 0; i < kJointCount; ++i) EXPECT_EQ(r.clamped[i], i == 1 || i == 7);
  EXPECT_FALSE(clamp_joint_vector(boom, boom.nominal()).any());
}

TEST(Hole, SampledTargetsLieInWorkspaceAndCone) {
  const EnvConfig env;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const TargetHole h = sample_target(seed, env.workspace, env.cone_half_angle, env.depth);
    EXPECT_TRUE(env.workspace.contains(h.start));
    EXPECT_NEAR(h.depth(), env.depth, 1e-12);
    EXPECT_LE(std::acos(std::clamp(h.direction().dot(Vec3::UnitX()), -1.0, 1.0)),
              env.cone_half_angle + 1e-12);
  }
}

TEST(Hole, SamplingIsDeterministic) {
  const EnvConfig env;
  EXPECT_EQ(sample_target(42, env.workspace, 0.15, 3.0), sample_target(42, env.workspace, 0.15, 3.0));
  EXPECT_FALSE(sample_target(42, env.workspace, 0.15, 3.0) ==
               sample_target(43, env.workspace, 0.15, 3.0));
}

TEST(Hole, ZeroConeGivesFaceNormal) {
  const EnvConfig env;
  const TargetHole h = sample_target(5, env.workspace, 0.0, 3.0);
  EXPECT_LT((h.direction() - Vec3::UnitX()).norm(), 1e-15);
}

TEST(Hole, PreviewDeviationIsChordOfMisalignment) {
  for (double phi : {0.001, 0.01, 0.1, 0.5}) {
    DrillEndPose pose;
    pose.position = Vec3(8.5, 0.2, -0.3);
    pose.direction = Vec3(std::cos(phi), std::sin(phi), 0.0);
    const TargetHole hole{pose.position, pose.position + 3.0 * Vec3::UnitX()};
    EXPECT_LT(delta_current(pose, hole).norm(), 1e-15);
    EXPECT_NEAR(delta_preview(pose, hole, 3.0).norm(), oracle::preview_chord(3.0, phi), 1e-12);
  }
}

TEST(Environment, ObservationDimensions) {
  for (int g = 1; g <= 4; ++g) {
    const ObservationMode mode = ObservationMode::from_group(g);
    EXPECT_EQ(mode.group(), g);
    EXPECT_EQ(mode.dimension(), g <= 2 ? 14 : 30);
    EnvConfig cfg = quiet_env();
    cfg.mode = mode;
    HoleSeekingEnv env(default_boom(), cfg);
    EXPECT_EQ(env.reset(1).size(), mode.dimension());
  }
  EXPECT_THROW(ObservationMode::from_group(5), InvalidParameter);
  EXPECT_EQ(ObservationMode::from_group(1).label(), "DH+Preview");
}

TEST(Environment, ObservationBlocks) {
  const BoomConfig boom = default_boom();
  const JointVector q = boom.nominal();
  const TargetHole hole{Vec3(8.4, 0.5, 0.1), Vec3(11.4, 0.5, 0.1)};
  const DrillEndPose pose = forward_kinematics(boom, q);

  const Observation dh_p = build_observation({JointRep::dh, TaskRep::preview}, boom, q, hole, 3.0);
  EXPECT_EQ(dh_p.head<8>(), q);
  EXPECT_TRUE(dh_p.segment<3>(8).isApprox(delta_current(pose, hole)));
  EXPECT_TRUE(dh_p.segment<3>(11).isApprox(delta_preview(pose, hole, 3.0)));

  const Observation dh_np =
      build_observation({JointRep::dh, TaskRep::non_preview}, boom, q, hole, 3.0);
  EXPECT_TRUE(dh_np.segment<3>(11).isApprox(delta_angle(pose, hole)));

  const Observation cart =
      build_observation({JointRep::cartesian, TaskRep::preview}, boom, q, hole, 3.0);
  const auto chain = frame_chain(boom, q);
  for (int i = 0; i < kJointCount; ++i) {
    EXPECT_TRUE(cart.segment<3>(3 * i).isApprox(chain[i].translation()));
  }
  EXPECT_TRUE(cart.segment<3>(24).isApprox(delta_current(pose, hole)));
}

TEST(Environment, TransitionIsRateIntegration) {
  const BoomConfig boom = default_boom();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    Action a;
    for (int i = 0; i < kJointCount; ++i) a[i] = u(rng) * boom.joints[i].rate_max;
    const JointVector q = boom.nominal();
    const TransitionResult r = transition(boom, q, a, 10.0);
    EXPECT_LT(((r.q - q) * 10.0 - a).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Environment, TransitionClampsAtLimits) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  q[2] = boom.joints[2].q_max - 0.0005;
  const TransitionResult r = transition(boom, q, action_bound(boom), 10.0);
  EXPECT_DOUBLE_EQ(r.q[2], boom.joints[2].q_max);
  EXPECT_TRUE(r.at_limit[2]);
  EXPECT_FALSE(r.at_limit[0]);
}

TEST(Environment, RewardSpotValuesAndSign) {
  const std::array<double, 3> w{3.0, 3.0, 0.005};
  EXPECT_EQ(reward(Vec3::UnitX(), Vec3::UnitY(), Action::Zero(), w), -6.0);
  EXPECT_EQ(reward(Vec3::Zero(), Vec3::Zero(), Action::Zero(), w), 0.0);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int k = 0; k < 1000; ++k) {
    const Vec3 dc(n(rng), n(rng), n(rng)), dp(n(rng), n(rng), n(rng));
    Action a;
    for (int i = 0; i < kJointCount; ++i) a[i] = n(rng);
    const double r = reward(dc, dp, a, w);
    EXPECT_LE(r, 0.0);
    EXPECT_LE(reward(2.0 * dc, dp, a, w), r);
    EXPECT_LE(reward(dc, dp, 2.0 * a, w), r);
  }
}

TEST(Environment, ResetWithoutNoiseStartsAtNominal) {
  HoleSeekingEnv env(default_boom(), quiet_env());
  env.reset(9);
  EXPECT_EQ(env.q(), default_boom().nominal());
  EXPECT_EQ(env.steps_taken(), 0);
  EXPECT_FALSE(env.done());
}

TEST(Environment, ResetNoiseIsBoundedAndDeterministic) {
  const EnvConfig cfg;
  HoleSeekingEnv a(default_boom(), cfg), b(default_boom(), cfg);
  const JointVector nominal = default_boom().nominal();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(a.reset(seed), b.reset(seed));
    EXPECT_EQ(a.hole(), b.hole());
    const JointVector dq = (a.q() - nominal).cwiseAbs();
    for (int i = 0; i < kJointCount; ++i) {
      const double bound = default_boom().joints[i].kind == JointKind::revolute
                               ? cfg.noise_revolute
                               : cfg.noise_prismatic;
      EXPECT_LE(dq[i], bound + 1e-15);
    }
  }
}

TEST(Environment, EpisodeHasExactlyHorizonSteps) {
  EnvConfig cfg = quiet_env();
  cfg.horizon = 25;
  HoleSeekingEnv env(default_boom(), cfg);
  env.reset(2);
  int n = 0;
  StepResult last;
  while (!env.done()) {
    last = env.step(Action::Zero());
    ++n;
  }
  EXPECT_EQ(n, 25);
  EXPECT_TRUE(last.done);
  EXPECT_THROW(env.step(Action::Zero()), ContractViolation);
}

TEST(Environment, StepBeforeResetIsAContractViolation) {
  HoleSeekingEnv env(default_boom(), quiet_env());
  EXPECT_THROW(env.step(Action::Zero()), ContractViolation);
}

TEST(Environment, ReportedRewardMatchesInfo) {
  const BoomConfig boom = default_boom();
  const EnvConfig cfg;
  HoleSeekingEnv env(boom, cfg);
  env.reset(6);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    Action a;
    for (int i = 0; i < kJointCount; ++i) a[i] = u(rng) * boom.joints[i].rate_max;
    const StepResult r = env.step(a);
    // Out-of-bound commands are clamped to the actuator limits.
    EXPECT_LE((r.info.action.cwiseAbs() - action_bound(boom)).maxCoeff(), 0.0);
    const Action normalized = r.info.action.cwiseQuotient(action_bound(boom));
    EXPECT_DOUBLE_EQ(r.reward,
                     reward(r.info.delta_current, r.info.delta_preview, normalized, cfg.omega));
  }
}

TEST(Environment, RawActionNormFlag) {
  const BoomConfig boom = default_boom();
  EnvConfig cfg = quiet_env();
  cfg.raw_action_norm = true;
  HoleSeekingEnv env(boom, cfg);
  env.reset(6);
  const Action a = 0.5 * action_bound(boom);
  const StepResult r = env.step(a);
  EXPECT_DOUBLE_EQ(r.reward, reward(r.info.delta_current, r.info.delta_preview, a, cfg.omega));
}

TEST(Environment, ConvergedPostureIsAFixedPoint) {
  const BoomConfig boom = default_boom();
  HoleSeekingEnv env(boom, quiet_env());
  JointVector q = boom.nominal();
  q[0] = 0.1;
  q[3] = 1.4;
  const TargetHole hole = hole_from_pose(forward_kinematics(boom, q), 3.0);
  env.reset_to(q, hole);
  const StepResult r = env.step(Action::Zero());
  EXPECT_EQ(r.info.q, q);
  EXPECT_NEAR(r.reward, 0.0, 1e-12);
}

TEST(Environment, MetricsUseTheFinalTenPercent) {
  std::vector<StepInfo> traj(20);
  for (int t = 0; t < 20; ++t) {
    traj[t].delta_current = Vec3(t < 18 ? 5.0 : 0.1 * (t - 17), 0, 0);
    traj[t].delta_preview = Vec3(0, t < 18 ? 5.0 : 0.2, 0);
  }
  const EpisodeMetrics m = episode_metrics(traj);
  EXPECT_NEAR(m.eps_current, 0.15, 1e-15);
  EXPECT_NEAR(m.eps_preview, 0.2, 1e-15);
  EXPECT_THROW(episode_metrics(std::span<const StepInfo>()), InvalidParameter);
  // A one-step episode still has a one-step window.
  EXPECT_NEAR(episode_metrics(std::span<const StepInfo>(traj.data(), 1)).eps_current, 5.0, 0.0);
}

TEST(Environment, TrajectoryCsvRoundTrip) {
  HoleSeekingEnv env(default_boom(), quiet_env());
  env.reset(8);
  std::vector<StepResult> steps;
  for (int k = 0; k < 5; ++k) steps.push_back(env.step(Action::Constant(0.01)));
  std::stringstream ss;
  write_trajectory_csv(ss, steps);
  const CsvTable table = read_csv(ss);
  EXPECT_EQ(table.header.front(), "t");
  EXPECT_EQ(table.header.size(), 1u + 8u + 8u + 1u + 6u + 1u);
  EXPECT_EQ(table.rows.size(), 5u);
  const auto rewards = table.numeric_column("reward");
  for (std::size_t i = 0; i < steps.size(); ++i) EXPECT_EQ(rewards[i], steps[i].reward);
  EXPECT_EQ(table.numeric_column("q3")[4], steps[4].info.q[2]);
}
