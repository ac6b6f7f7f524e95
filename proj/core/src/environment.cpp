#include "drillboom/environment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "drillboom/csv.hpp"
#include "drillboom/error.hpp"

namespace drillboom {

int ObservationMode::group() const {
  if (joint == JointRep::dh) return task == TaskRep::preview ? 1 : 2;
  return task == TaskRep::preview ? 3 : 4;
}

ObservationMode ObservationMode::from_group(int group) {
  switch (group) {
    case 1: return {JointRep::dh, TaskRep::preview};
    case 2: return {JointRep::dh, TaskRep::non_preview};
    case 3: return {JointRep::cartesian, TaskRep::preview};
    case 4: return {JointRep::cartesian, TaskRep::non_preview};
    default: throw InvalidParameter("observation group must be 1..4");
  }
}

int ObservationMode::dimension() const { return joint_block_size() + 6; }

std::string ObservationMode::label() const {
  return std::string(joint == JointRep::dh ? "DH" : "Cartesian") + "+" +
         (task == TaskRep::preview ? "Preview" : "NonPreview");
}

const char* to_string(JointRep rep) { return rep == JointRep::dh ? "dh" : "cartesian"; }
const char* to_string(TaskRep rep) { return rep == TaskRep::preview ? "preview" : "non_preview"; }

Action action_bound(const BoomConfig& config) { return config.rate_limits(); }

Observation build_observation(const ObservationMode& mode, const BoomConfig& config,
                              const JointVector& q, const TargetHole& hole, double depth) {
  Observation obs(mode.dimension());
  const auto chain = frame_chain(config, q);
  int k = 0;
  if (mode.joint == JointRep::dh) {
    obs.head<kJointCount>() = q;
    k = kJointCount;
  } else {
    for (const auto& frame : chain) {
      obs.segment<3>(k) = frame.translation();
      k += 3;
    }
  }

  DrillEndPose pose;
  pose.position = chain.back().translation();
  pose.direction = chain.back().matrix().block<3, 1>(0, 2).normalized();

  obs.segment<3>(k) = delta_current(pose, hole);
  obs.segment<3>(k + 3) = mode.task == TaskRep::preview ? delta_preview(pose, hole, depth)
                                                        : delta_angle(pose, hole);
  return obs;
}

TransitionResult transition(const BoomConfig& config, const JointVector& q, const Action& a,
                            double control_hz) {
  if (!(control_hz > 0.0)) {
    throw InvalidParameter("transition: control frequency must be positive");
  }
  const ClampResult clamped = clamp_joint_vector(config, q + a / control_hz);
  return TransitionResult{clamped.q, clamped.clamped};
}

double reward(const Vec3& delta_current, const Vec3& delta_preview, const Action& action_term,
              const std::array<double, 3>& omega) {
  return -omega[0] * delta_current.norm() - omega[1] * delta_preview.norm() -
         omega[2] * action_term.norm();
}

EpisodeMetrics episode_metrics(std::span<const StepInfo> trajectory, double window_fraction) {
  if (trajectory.empty()) {
    throw InvalidParameter("episode_metrics: empty trajectory");
  }
  const auto n = trajectory.size();
  const auto window = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(n))), 1, n);
  EpisodeMetrics m;
  for (std::size_t t = n - window; t < n; ++t) {
    m.eps_current += trajectory[t].delta_current.norm();
    m.eps_preview += trajectory[t].delta_preview.norm();
  }
  m.eps_current /= static_cast<double>(window);
  m.eps_preview /= static_cast<double>(window);
  return m;
}

EpisodeMetrics episode_metrics(std::span<const StepResult> trajectory, double window_fraction) {
  std::vector<StepInfo> infos;
  infos.reserve(trajectory.size());
  for (const auto& r : trajectory) infos.push_back(r.info);
  return episode_metrics(std::span<const StepInfo>(infos), window_fraction);
}

HoleSeekingEnv::HoleSeekingEnv(BoomConfig config, EnvConfig env)
    : config_(std::move(config)), env_(env), a_max_(action_bound(config_)) {
  if (auto errors = validate(config_); !errors.empty()) {
    throw InvalidParameter("HoleSeekingEnv: invalid boom config: " + errors.front());
  }
  if (env_.horizon <= 0 || !(env_.control_hz > 0.0) || !(env_.depth > 0.0)) {
    throw InvalidParameter("HoleSeekingEnv: horizon, frequency and depth must be positive");
  }
}

Observation HoleSeekingEnv::reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const JointVector nominal = config_.nominal();

  bool found = false;
  for (int attempt = 0; attempt < env_.max_reset_attempts && !found; ++attempt) {
    const TargetHole candidate =
        sample_target(rng(), env_.workspace, env_.cone_half_angle, env_.depth);
    if (solve_ik(config_, candidate, nominal).converged) {
      hole_ = candidate;
      found = true;
    }
  }
  if (!found) {
    throw std::runtime_error("reset: no reachable target after " +
                             std::to_string(env_.max_reset_attempts) + " attempts");
  }

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  JointVector q = nominal;
  for (int i = 0; i < kJointCount; ++i) {
    const double amplitude = config_.joints[i].kind == JointKind::revolute
                                 ? env_.noise_revolute
                                 : env_.noise_prismatic;
    const double u = unit(rng);
    if (amplitude > 0.0) q[i] += amplitude * u;
  }
  return reset_to(clamp_joint_vector(config_, q).q, hole_);
}

Observation HoleSeekingEnv::reset_to(const JointVector& q, const TargetHole& hole) {
  require_within_limits(config_, q);
  q_ = q;
  hole_ = hole;
  steps_ = 0;
  started_ = true;
  done_ = false;
  return observation();
}

Observation HoleSeekingEnv::observation() const {
  return build_observation(env_.mode, config_, q_, hole_, env_.depth);
}

StepInfo HoleSeekingEnv::current_info() const {
  const DrillEndPose pose = forward_kinematics(config_, q_);
  StepInfo info;
  info.delta_current = delta_current(pose, hole_);
  info.delta_preview = delta_preview(pose, hole_, env_.depth);
  info.delta_angle = delta_angle(pose, hole_);
  info.q = q_;
  return info;
}

StepResult HoleSeekingEnv::step(const Action& action) {
  if (!started_) throw ContractViolation("step called before reset");
  if (done_) throw ContractViolation("step called after the episode finished");

  const Action applied = action.cwiseMax(-a_max_).cwiseMin(a_max_);
  q_ = transition(config_, q_, applied, env_.control_hz).q;
  ++steps_;
  done_ = steps_ >= env_.horizon;

  StepResult result;
  result.info = current_info();
  result.info.action = applied;
  const Action penalty = env_.raw_action_norm ? applied : Action(applied.cwiseQuotient(a_max_));
  result.reward = reward(result.info.delta_current, result.info.delta_preview, penalty, env_.omega);
  result.done = done_;
  result.observation = observation();
  return result;
}

void write_trajectory_csv(std::ostream& out, std::span<const StepResult> trajectory) {
  std::vector<std::string> header{"t"};
  for (int i = 1; i <= kJointCount; ++i) header.push_back("q" + std::to_string(i));
  for (int i = 1; i <= kJointCount; ++i) header.push_back("a" + std::to_string(i));
  for (const char* h : {"reward", "dcx", "dcy", "dcz", "dpx", "dpy", "dpz", "done"}) {
    header.emplace_back(h);
  }
  CsvWriter csv(out, header);
  long long t = 0;
  for (const auto& r : trajectory) {
    std::vector<std::string> row{format_number(++t)};
    for (int i = 0; i < kJointCount; ++i) row.push_back(format_number(r.info.q[i]));
    for (int i = 0; i < kJointCount; ++i) row.push_back(format_number(r.info.action[i]));
    row.push_back(format_number(r.reward));
    for (int k = 0; k < 3; ++k) row.push_back(format_number(r.info.delta_current[k]));
    for (int k = 0; k < 3; ++k) row.push_back(format_number(r.info.delta_preview[k]));
    row.push_back(r.done ? "1" : "0");
    csv.row(row);
  }
}

}  // namespace drillboom
