#include "drillboom/boom_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "drillboom/error.hpp"

namespace drillboom {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kRevoluteSpan = 1.2;

JointSpec revolute(double nominal, double alpha, double a, double d, double rate) {
  return JointSpec{JointKind::revolute, DhParameters{0.0, alpha, a, d},
                   nominal - kRevoluteSpan, nominal + kRevoluteSpan, rate};
}

JointSpec prismatic(double theta, double alpha, double a, double d_max, double rate) {
  return JointSpec{JointKind::prismatic, DhParameters{theta, alpha, a, 0.0}, 0.0, d_max, rate};
}

bool expected_prismatic(int index) { return index == 2 || index == 7; }

}  // namespace

const char* to_string(JointKind kind) {
  return kind == JointKind::prismatic ? "prismatic" : "revolute";
}

JointVector BoomConfig::lower() const {
  JointVector v;
  for (int i = 0; i < kJointCount; ++i) v[i] = joints[i].q_min;
  return v;
}

JointVector BoomConfig::upper() const {
  JointVector v;
  for (int i = 0; i < kJointCount; ++i) v[i] = joints[i].q_max;
  return v;
}

JointVector BoomConfig::rate_limits() const {
  JointVector v;
  for (int i = 0; i < kJointCount; ++i) v[i] = joints[i].rate_max;
  return v;
}

JointVector BoomConfig::nominal() const {
  JointVector v;
  for (int i = 0; i < kJointCount; ++i) v[i] = joints[i].midpoint();
  return v;
}

BoomConfig default_boom() {
  BoomConfig config;
  config.name = "reference-jumbo-8dof";
  config.drill_depth_default = 3.0;
  config.joints = {
      revolute(0.0, kHalfPi, 0.0, 0.0, 0.08),       // 1 boom swing
      revolute(kHalfPi, kHalfPi, 0.0, 0.0, 0.08),   // 2 boom lift
      prismatic(0.0, 0.0, 0.0, 2.5, 0.020),         // 3 boom telescope
      revolute(kHalfPi, kHalfPi, 0.0, 4.0, 0.08),   // 4 boom roll, 4 m base boom
      revolute(kHalfPi, kHalfPi, 0.5, 0.0, 0.08),   // 5 feed swing
      revolute(kHalfPi, kHalfPi, 0.0, 0.0, 0.12),   // 6 feed tilt
      revolute(0.0, 0.0, 0.3, 1.0, 0.08),           // 7 feed roll
      prismatic(0.0, 0.0, 0.0, 3.5, 0.020),         // 8 drill feed
  };
  return config;
}

std::array<DhParameters, kJointCount> joint_vector_to_dh_rows(const BoomConfig& config,
                                                             const JointVector& q) {
  std::array<DhParameters, kJointCount> rows;
  for (int i = 0; i < kJointCount; ++i) {
    rows[i] = config.joints[i].fixed;
    if (config.joints[i].kind == JointKind::revolute) {
      rows[i].theta = q[i];
    } else {
      rows[i].d = q[i];
    }
  }
  return rows;
}

std::array<DhParameters, kJointCount> joint_vector_to_dh_rows(const BoomConfig& config,
                                                             std::span<const double> q) {
  if (q.size() != static_cast<std::size_t>(kJointCount)) {
    throw InvalidParameter("joint_vector_to_dh_rows: expected 8 joint values, got " +
                           std::to_string(q.size()));
  }
  JointVector v;
  for (int i = 0; i < kJointCount; ++i) v[i] = q[i];
  return joint_vector_to_dh_rows(config, v);
}

JointVector variable_entries(const BoomConfig& config,
                             const std::array<DhParameters, kJointCount>& rows) {
  JointVector q;
  for (int i = 0; i < kJointCount; ++i) {
    q[i] = config.joints[i].kind == JointKind::revolute ? rows[i].theta : rows[i].d;
  }
  return q;
}

bool ClampResult::any() const {
  for (bool c : clamped) {
    if (c) return true;
  }
  return false;
}

ClampResult clamp_joint_vector(const BoomConfig& config, const JointVector& q) {
  ClampResult out{q, {}};
  for (int i = 0; i < kJointCount; ++i) {
    const auto& j = config.joints[i];
    if (q[i] < j.q_min) {
      out.q[i] = j.q_min;
      out.clamped[i] = true;
    } else if (q[i] > j.q_max) {
      out.q[i] = j.q_max;
      out.clamped[i] = true;
    }
  }
  return out;
}

std::vector<std::string> validate(const BoomConfig& config) {
  std::vector<std::string> errors;
  for (int i = 0; i < kJointCount; ++i) {
    const auto& j = config.joints[i];
    const std::string name = "joint " + std::to_string(i + 1);
    if (expected_prismatic(i) && j.kind != JointKind::prismatic) {
      errors.push_back(name + " must be prismatic");
    }
    if (!expected_prismatic(i) && j.kind != JointKind::revolute) {
      errors.push_back(name + " must be revolute");
    }
    if (!j.fixed.is_finite()) {
      errors.push_back(name + " has non-finite DH parameters");
    }
    if (!std::isfinite(j.q_min) || !std::isfinite(j.q_max) || !(j.q_min < j.q_max)) {
      std::ostringstream os;
      os << name << " requires q_min < q_max (got " << j.q_min << ", " << j.q_max << ")";
      errors.push_back(os.str());
    }
    if (!std::isfinite(j.rate_max) || !(j.rate_max > 0.0)) {
      errors.push_back(name + " requires rate_max > 0");
    }
  }
  if (!std::isfinite(config.drill_depth_default) || !(config.drill_depth_default > 0.0)) {
    errors.push_back("drill_depth_default must be positive");
  }
  return errors;
}

void require_within_limits(const BoomConfig& config, const JointVector& q) {
  std::vector<int> bad;
  for (int i = 0; i < kJointCount; ++i) {
    const auto& j = config.joints[i];
    if (!(q[i] >= j.q_min && q[i] <= j.q_max)) bad.push_back(i + 1);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "joint vector outside limits at joint(s)";
    for (int b : bad) os << ' ' << b;
    throw OutOfRange(os.str(), std::move(bad));
  }
}

}  // namespace drillboom
