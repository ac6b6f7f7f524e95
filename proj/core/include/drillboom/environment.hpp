#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "drillboom/boom_model.hpp"
#include "drillboom/hole.hpp"
#include "drillboom/ik_baseline.hpp"
#include "drillboom/kinematics.hpp"

namespace drillboom {

enum class JointRep { dh, cartesian };
enum class TaskRep { preview, non_preview };

/// Joint block x task block. Groups 1-4 are DH+P, DH+NP, Cart+P, Cart+NP.
struct ObservationMode {
  JointRep joint = JointRep::dh;
  TaskRep task = TaskRep::preview;

  int group() const;
  static ObservationMode from_group(int group);
  /// 14 for the DH joint block, 30 for the Cartesian one.
  int dimension() const;
  int joint_block_size() const { return joint == JointRep::dh ? kJointCount : 3 * kJointCount; }
  std::string label() const;

  bool operator==(const ObservationMode&) const = default;
};

const char* to_string(JointRep rep);
const char* to_string(TaskRep rep);

using Observation = Eigen::VectorXd;
/// Joint rates: rad/s for revolute joints, m/s for prismatic joints.
using Action = Eigen::Matrix<double, kJointCount, 1>;

struct EnvConfig {
  double depth = 3.0;  // m
  int horizon = 400;
  double control_hz = 10.0;
  // 4 m x 4 m face region around the reference boom's nominal drill position.
  WorkspaceBox workspace{Vec3(8.25, -2.0, -1.7), Vec3(8.75, 2.0, 2.3), Vec3::UnitX()};
  double cone_half_angle = 0.15;  // rad
  double noise_revolute = 0.1;    // rad
  double noise_prismatic = 0.05;  // m
  ObservationMode mode;
  std::array<double, 3> omega{3.0, 3.0, 0.005};
  // Penalise the action in physical units instead of a / a_max.
  bool raw_action_norm = false;
  int max_reset_attempts = 100;

  bool operator==(const EnvConfig&) const = default;
};

/// Componentwise action bound a_max (equal to the joint rate limits).
Action action_bound(const BoomConfig& config);

/// [joint block, task block]; see ObservationMode.
Observation build_observation(const ObservationMode& mode, const BoomConfig& config,
                              const JointVector& q, const TargetHole& hole, double depth);

struct TransitionResult {
  JointVector q;
  std::array<bool, kJointCount> at_limit{};
};

/// q' = clamp(q + a / f). The action must already be inside the actuator bounds.
TransitionResult transition(const BoomConfig& config, const JointVector& q, const Action& a,
                            double control_hz);

/// -w1 ||dc|| - w2 ||dp|| - w3 ||a||.
double reward(const Vec3& delta_current, const Vec3& delta_preview, const Action& action_term,
              const std::array<double, 3>& omega);

struct StepInfo {
  Vec3 delta_current = Vec3::Zero();
  Vec3 delta_preview = Vec3::Zero();
  Vec3 delta_angle = Vec3::Zero();
  JointVector q = JointVector::Zero();
  Action action = Action::Zero();  // after clamping to the actuator bounds
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

struct EpisodeMetrics {
  double eps_current = 0.0;  // m
  double eps_preview = 0.0;  // m
};

/// Mean deviation norms over the final `window_fraction` of the steps (at least one step).
EpisodeMetrics episode_metrics(std::span<const StepInfo> trajectory,
                               double window_fraction = 0.1);
EpisodeMetrics episode_metrics(std::span<const StepResult> trajectory,
                               double window_fraction = 0.1);

/// Fixed-horizon hole-seeking episode. Single-threaded; one instance per thread.
class HoleSeekingEnv {
 public:
  HoleSeekingEnv(BoomConfig config, EnvConfig env);

  /// Samples a reachable hole and a perturbed nominal posture from `seed`.
  Observation reset(std::uint64_t seed);
  /// Starts an episode from an explicit posture and hole.
  Observation reset_to(const JointVector& q, const TargetHole& hole);
  /// Throws ContractViolation when called before reset or after the episode ended.
  StepResult step(const Action& action);

  const BoomConfig& config() const { return config_; }
  const EnvConfig& env_config() const { return env_; }
  const JointVector& q() const { return q_; }
  const TargetHole& hole() const { return hole_; }
  int steps_taken() const { return steps_; }
  bool done() const { return done_; }
  Observation observation() const;
  /// Deviations at the current posture without stepping.
  StepInfo current_info() const;

 private:
  BoomConfig config_;
  EnvConfig env_;
  Action a_max_;
  JointVector q_ = JointVector::Zero();
  TargetHole hole_;
  int steps_ = 0;
  bool started_ = false;
  bool done_ = false;
};

/// Columns: t, q1..q8, a1..a8, reward, dcx, dcy, dcz, dpx, dpy, dpz, done.
void write_trajectory_csv(std::ostream& out, std::span<const StepResult> trajectory);

}  // namespace drillboom
