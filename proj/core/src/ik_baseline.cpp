#include "drillboom/ik_baseline.hpp"

#include <algorithm>
#include <cmath>

#include "drillboom/error.hpp"
#include "drillboom/kinematics.hpp"

namespace drillboom {

namespace {

using PoseError = Eigen::Matrix<double, 6, 1>;

PoseError pose_error(const BoomConfig& config, const TargetHole& hole, const Vec3& hole_dir,
                     const JointVector& q) {
  const DrillEndPose pose = forward_kinematics(config, q);
  PoseError e;
  e << hole.start - pose.position, hole_dir - pose.direction;
  return e;
}

bool within_tolerance(const PoseError& e, const IkParams& params) {
  return e.head<3>().norm() < params.pos_tol && e.tail<3>().norm() < params.dir_tol;
}

}  // namespace

IkSolution solve_ik(const BoomConfig& config, const TargetHole& hole, const JointVector& q0,
                    const IkParams& params) {
  require_within_limits(config, q0);
  const Vec3 hole_dir = hole.direction();

  JointVector q = q0;
  PoseError e = pose_error(config, hole, hole_dir, q);
  double lambda = params.lambda_initial;
  int iterations = 0;
  bool need_jacobian = true;
  PoseJacobian jac;

  while (!within_tolerance(e, params) && iterations < params.max_iterations) {
    ++iterations;
    if (need_jacobian) {
      jac = jacobian_fd(config, q, params.fd_eps).jacobian;
      need_jacobian = false;
    }
    const Eigen::Matrix<double, kJointCount, kJointCount> normal =
        jac.transpose() * jac +
        lambda * lambda * Eigen::Matrix<double, kJointCount, kJointCount>::Identity();
    const JointVector dq = normal.ldlt().solve(jac.transpose() * e);
    const JointVector candidate = clamp_joint_vector(config, q + dq).q;
    const PoseError e_candidate = pose_error(config, hole, hole_dir, candidate);

    if (e_candidate.norm() < e.norm()) {
      q = candidate;
      e = e_candidate;
      lambda = std::max(lambda * 0.5, params.lambda_min);
      need_jacobian = true;
    } else {
      lambda = std::min(lambda * 2.0, params.lambda_max);
    }
  }

  IkSolution sol;
  sol.q_star = q;
  sol.iterations = iterations;
  sol.residual_pos = e.head<3>().norm();
  sol.residual_dir = e.tail<3>().norm();
  sol.converged = within_tolerance(e, params);
  return sol;
}

StepReport make_step_report(const std::array<int, kJointCount>& per_joint_steps) {
  StepReport report;
  report.per_joint_steps = per_joint_steps;
  for (int s : per_joint_steps) {
    report.integrated_steps = std::max(report.integrated_steps, s);
    report.hierarchical_steps += s;
  }
  return report;
}

StepReport sequential_plan(const BoomConfig& config, const JointVector& q0,
                           const JointVector& q_star, double control_hz) {
  if (!(control_hz > 0.0)) {
    throw InvalidParameter("sequential_plan: control frequency must be positive");
  }
  std::array<int, kJointCount> steps{};
  for (int i = 0; i < kJointCount; ++i) {
    const double per_step = config.joints[i].rate_max / control_hz;
    const double ratio = std::abs(q_star[i] - q0[i]) / per_step;
    // Absorb rounding such as 0.8 / 0.008 = 100.00000000000001.
    steps[i] = static_cast<int>(std::max(0.0, std::ceil(ratio - 1e-9)));
  }
  return make_step_report(steps);
}

JointVector default_effective_step_tolerance() { return JointVector::Constant(1e-3); }

std::array<int, kJointCount> effective_steps(std::span<const JointVector> trajectory,
                                             const JointVector& tol) {
  if (trajectory.empty()) {
    throw InvalidParameter("effective_steps: empty trajectory");
  }
  const JointVector& final_q = trajectory.back();
  std::array<int, kJointCount> counts{};
  for (int i = 0; i < kJointCount; ++i) {
    for (std::size_t t = trajectory.size(); t-- > 0;) {
      if (std::abs(trajectory[t][i] - final_q[i]) > tol[i]) {
        counts[i] = static_cast<int>(t) + 1;
        break;
      }
    }
  }
  return counts;
}

}  // namespace drillboom
