#include "drillboom/hole.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "drillboom/error.hpp"

namespace drillboom {

bool WorkspaceBox::contains(const Vec3& p) const {
  return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
}

TargetHole sample_target(std::uint64_t seed, const WorkspaceBox& workspace,
                         double cone_half_angle, double depth) {
  if (!(workspace.lo.array() <= workspace.hi.array()).all()) {
    throw InvalidParameter("sample_target: empty workspace box");
  }
  if (!(cone_half_angle >= 0.0 && cone_half_angle < std::numbers::pi / 2.0)) {
    throw InvalidParameter("sample_target: cone half-angle must lie in [0, pi/2)");
  }
  if (!(depth > 0.0)) {
    throw InvalidParameter("sample_target: depth must be positive");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Vec3 start;
  for (int k = 0; k < 3; ++k) {
    start[k] = workspace.lo[k] + unit(rng) * (workspace.hi[k] - workspace.lo[k]);
  }

  const Vec3 normal = workspace.face_normal.normalized();
  // Uniform on the cap: cos(polar) uniform in [cos(cone), 1].
  const double cos_min = std::cos(cone_half_angle);
  const double cos_polar = 1.0 - unit(rng) * (1.0 - cos_min);
  const double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
  const double azimuth = 2.0 * std::numbers::pi * unit(rng);

  const Vec3 helper = std::abs(normal.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 u = normal.cross(helper).normalized();
  const Vec3 v = normal.cross(u);
  Vec3 direction = cos_polar * normal;
  if (sin_polar > 0.0) {
    direction += sin_polar * (std::cos(azimuth) * u + std::sin(azimuth) * v);
    direction.normalize();
  }

  return TargetHole{start, start + depth * direction};
}

Vec3 delta_current(const DrillEndPose& pose, const TargetHole& hole) {
  return pose.position - hole.start;
}

Vec3 delta_preview(const DrillEndPose& pose, const TargetHole& hole, double depth) {
  return preview_point(pose, depth) - hole.end;
}

Vec3 delta_angle(const DrillEndPose& pose, const TargetHole& hole) {
  return pose.direction - hole.direction();
}

}  // namespace drillboom
