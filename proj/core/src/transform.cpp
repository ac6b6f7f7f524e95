#include "drillboom/transform.hpp"

#include <cmath>

#include "drillboom/error.hpp"

namespace drillboom {

bool DhParameters::is_finite() const {
  return std::isfinite(theta) && std::isfinite(alpha) && std::isfinite(a) && std::isfinite(d);
}

HomogeneousTransform::HomogeneousTransform(const Mat3& rotation, const Vec3& translation)
    : m_(Mat4::Identity()) {
  m_.topLeftCorner<3, 3>() = rotation;
  m_.topRightCorner<3, 1>() = translation;
}

HomogeneousTransform HomogeneousTransform::inverse() const {
  const Mat3 rt = rotation().transpose();
  return HomogeneousTransform(rt, -rt * translation());
}

double HomogeneousTransform::orthonormality_error() const {
  const Mat3 r = rotation();
  return (r.transpose() * r - Mat3::Identity()).norm();
}

bool HomogeneousTransform::bottom_row_exact() const {
  return m_(3, 0) == 0.0 && m_(3, 1) == 0.0 && m_(3, 2) == 0.0 && m_(3, 3) == 1.0;
}

HomogeneousTransform HomogeneousTransform::operator*(const HomogeneousTransform& rhs) const {
  return compose(*this, rhs);
}

HomogeneousTransform dh_transform(const DhParameters& p) {
  if (!p.is_finite()) {
    throw InvalidParameter("dh_transform: non-finite DH parameter");
  }
  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  const double ca = std::cos(p.alpha);
  const double sa = std::sin(p.alpha);

  Mat4 m;
  m << ct, -st * ca,  st * sa, p.a * ct,
       st,  ct * ca, -ct * sa, p.a * st,
      0.0,       sa,       ca,      p.d,
      0.0,      0.0,      0.0,      1.0;
  return HomogeneousTransform(m);
}

HomogeneousTransform compose(const HomogeneousTransform& a, const HomogeneousTransform& b) {
  // Rigid product; the bottom row is rewritten so it stays exactly [0 0 0 1].
  Mat4 m = a.matrix() * b.matrix();
  m.row(3) << 0.0, 0.0, 0.0, 1.0;
  return HomogeneousTransform(m);
}

}  // namespace drillboom
