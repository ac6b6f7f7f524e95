#include "drillboom/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "drillboom/error.hpp"

namespace drillboom {

namespace {

Eigen::Matrix<double, 6, 1> stacked_pose(const DrillEndPose& pose) {
  Eigen::Matrix<double, 6, 1> v;
  v << pose.position, pose.direction;
  return v;
}

}  // namespace

std::array<HomogeneousTransform, kJointCount> frame_chain(const BoomConfig& config,
                                                          const JointVector& q) {
  require_within_limits(config, q);
  const auto rows = joint_vector_to_dh_rows(config, q);
  std::array<HomogeneousTransform, kJointCount> chain;
  HomogeneousTransform acc;
  for (int i = 0; i < kJointCount; ++i) {
    acc = compose(acc, dh_transform(rows[i]));
    chain[i] = acc;
  }
  return chain;
}

DrillEndPose forward_kinematics(const BoomConfig& config, const JointVector& q) {
  const auto chain = frame_chain(config, q);
  const Mat4& t = chain.back().matrix();
  DrillEndPose pose;
  pose.position = t.topRightCorner<3, 1>();
  // Columns of an orthonormal block are unit length up to rounding; renormalise
  // so downstream geometry sees an exact unit axis.
  pose.direction = t.block<3, 1>(0, 2).normalized();
  return pose;
}

Vec3 preview_point(const DrillEndPose& pose, double depth) {
  if (!(depth >= 0.0) || !std::isfinite(depth)) {
    throw InvalidParameter("preview_point: depth must be finite and non-negative");
  }
  return pose.position + depth * pose.direction;
}

FiniteDifferenceJacobian jacobian_fd(const BoomConfig& config, const JointVector& q,
                                     double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidParameter("jacobian_fd: eps must be positive");
  }
  require_within_limits(config, q);

  FiniteDifferenceJacobian out;
  for (int i = 0; i < kJointCount; ++i) {
    const auto& joint = config.joints[i];
    JointVector plus = q;
    JointVector minus = q;
    plus[i] = std::min(q[i] + eps, joint.q_max);
    minus[i] = std::max(q[i] - eps, joint.q_min);
    out.at_boundary[i] = (plus[i] != q[i] + eps) || (minus[i] != q[i] - eps);
    const double span = plus[i] - minus[i];
    out.jacobian.col(i) = (stacked_pose(forward_kinematics(config, plus)) -
                           stacked_pose(forward_kinematics(config, minus))) /
                          span;
  }
  return out;
}

}  // namespace drillboom
