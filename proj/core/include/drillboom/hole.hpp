#pragma once

#include <cstdint>

#include "drillboom/kinematics.hpp"

namespace drillboom {

/// Target hole from its collar (start) point to its bottom (end) point.
struct TargetHole {
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::UnitX();

  double depth() const { return (end - start).norm(); }
  Vec3 direction() const { return (end - start).normalized(); }
  bool operator==(const TargetHole&) const = default;
};

/// Axis-aligned region in which hole collars are sampled, plus the face normal.
struct WorkspaceBox {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
  Vec3 face_normal = Vec3::UnitX();

  bool contains(const Vec3& p) const;
  bool operator==(const WorkspaceBox&) const = default;
};

/**
 * Draws a hole deterministically from `seed`: collar uniform in the box,
 * direction uniform on the spherical cap of half-angle `cone_half_angle`
 * around the face normal, end = start + depth * direction.
 */
TargetHole sample_target(std::uint64_t seed, const WorkspaceBox& workspace,
                         double cone_half_angle, double depth);

/// Drill position minus hole collar.
Vec3 delta_current(const DrillEndPose& pose, const TargetHole& hole);

/// Preview point one drilling depth ahead of the drill minus hole end.
Vec3 delta_preview(const DrillEndPose& pose, const TargetHole& hole, double depth);

/// Drill axis minus hole axis (difference of unit vectors, norm <= 2).
Vec3 delta_angle(const DrillEndPose& pose, const TargetHole& hole);

}  // namespace drillboom
