#pragma once

#include <array>

#include <Eigen/Dense>

#include "drillboom/boom_model.hpp"
#include "drillboom/transform.hpp"

namespace drillboom {

/// Drill-end position (m) and unit drilling axis, both in the base frame.
struct DrillEndPose {
  Vec3 position = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
};

/// Cumulative transforms T_0^1 ... T_0^8 for posture q. Throws OutOfRange outside limits.
std::array<HomogeneousTransform, kJointCount> frame_chain(const BoomConfig& config,
                                                          const JointVector& q);

/// Drill pose from T_0^8: translation column and the frame-8 z-axis.
DrillEndPose forward_kinematics(const BoomConfig& config, const JointVector& q);

/// pose.position + depth * pose.direction. Throws InvalidParameter for negative depth.
Vec3 preview_point(const DrillEndPose& pose, double depth);

using PoseJacobian = Eigen::Matrix<double, 6, kJointCount>;

struct FiniteDifferenceJacobian {
  /// Rows 0..2: d(position)/dq, rows 3..5: d(direction)/dq.
  PoseJacobian jacobian;
  /// True where q +/- eps touched a joint limit and a one-sided span was used.
  std::array<bool, kJointCount> at_boundary{};
};

inline constexpr double kDefaultJacobianEps = 1e-5;

/// Central-difference Jacobian of [position; direction]. Throws InvalidParameter for eps <= 0.
FiniteDifferenceJacobian jacobian_fd(const BoomConfig& config, const JointVector& q,
                                     double eps = kDefaultJacobianEps);

}  // namespace drillboom
