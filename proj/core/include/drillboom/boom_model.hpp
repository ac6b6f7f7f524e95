#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drillboom/transform.hpp"

namespace drillboom {

inline constexpr int kJointCount = 8;

/// Joint posture [theta1, theta2, d3, theta4, theta5, theta6, theta7, d8] (rad / m).
using JointVector = Eigen::Matrix<double, kJointCount, 1>;

enum class JointKind { revolute, prismatic };

const char* to_string(JointKind kind);

struct JointSpec {
  JointKind kind = JointKind::revolute;
  // The variable entry (theta for revolute, d for prismatic) is overwritten by q.
  DhParameters fixed;
  double q_min = 0.0;
  double q_max = 0.0;
  double rate_max = 0.0;  // rad/s or m/s

  double midpoint() const { return 0.5 * (q_min + q_max); }
  bool operator==(const JointSpec&) const = default;
};

struct BoomConfig {
  std::string name;
  std::array<JointSpec, kJointCount> joints;
  double drill_depth_default = 3.0;  // m

  JointVector lower() const;
  JointVector upper() const;
  JointVector rate_limits() const;
  /// Mid-range posture, used as the nominal starting point.
  JointVector nominal() const;

  bool operator==(const BoomConfig&) const = default;
};

/**
 * Reference 8-DOF jumbo boom (joints 3 and 8 prismatic).
 *
 * Layout: 1 boom swing (vertical axis), 2 boom lift, 3 boom telescope,
 * 4 boom roll about its own axis, 5 feed swing, 6 feed tilt, 7 feed roll with
 * a 0.3 m offset, 8 drill feed along the propulsion beam. At the nominal
 * posture the drill end sits at (8.5, 0, 0.3) m pointing along +x. Maximum
 * reach along the boom is 11.5 m.
 */
BoomConfig default_boom();

/// Per-row DH parameters for posture q. Row i copies the fixed entries and overwrites the variable one.
std::array<DhParameters, kJointCount> joint_vector_to_dh_rows(const BoomConfig& config,
                                                             const JointVector& q);
/// Throws InvalidParameter unless q has exactly eight entries.
std::array<DhParameters, kJointCount> joint_vector_to_dh_rows(const BoomConfig& config,
                                                             std::span<const double> q);

/// Inverse projection of joint_vector_to_dh_rows.
JointVector variable_entries(const BoomConfig& config,
                             const std::array<DhParameters, kJointCount>& rows);

struct ClampResult {
  JointVector q;
  std::array<bool, kJointCount> clamped{};

  bool any() const;
};

ClampResult clamp_joint_vector(const BoomConfig& config, const JointVector& q);

/// Lists every invariant violation; an empty result means the config is usable.
std::vector<std::string> validate(const BoomConfig& config);

/// Throws OutOfRange naming the offending joints when q leaves the limit box.
void require_within_limits(const BoomConfig& config, const JointVector& q);

}  // namespace drillboom
