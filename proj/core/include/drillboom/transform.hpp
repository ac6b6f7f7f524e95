#pragma once

#include <Eigen/Dense>

namespace drillboom {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/**
 * Denavit-Hartenberg parameters of one link.
 *
 * `a` is the link length that enters the link matrix together with `theta`
 * of the same row, i.e. row i stores the a_{i-1} of the frame (i-1) -> i
 * transform.
 */
struct DhParameters {
  double theta = 0.0;  // rad
  double alpha = 0.0;  // rad
  double a = 0.0;      // m
  double d = 0.0;      // m

  bool is_finite() const;
  bool operator==(const DhParameters&) const = default;
};

/// 4x4 rigid-body transform. Bottom row is [0 0 0 1] and the rotation block is orthonormal.
class HomogeneousTransform {
 public:
  HomogeneousTransform() : m_(Mat4::Identity()) {}
  explicit HomogeneousTransform(const Mat4& m) : m_(m) {}
  HomogeneousTransform(const Mat3& rotation, const Vec3& translation);

  static HomogeneousTransform identity() { return HomogeneousTransform(); }

  const Mat4& matrix() const { return m_; }
  Mat3 rotation() const { return m_.topLeftCorner<3, 3>(); }
  Vec3 translation() const { return m_.topRightCorner<3, 1>(); }

  /// Maps a point expressed in the child frame into the parent frame.
  Vec3 apply(const Vec3& point) const { return rotation() * point + translation(); }

  /// Closed-form rigid inverse [R^T, -R^T p].
  HomogeneousTransform inverse() const;

  /// ||R^T R - I||_F
  double orthonormality_error() const;
  bool bottom_row_exact() const;

  HomogeneousTransform operator*(const HomogeneousTransform& rhs) const;

 private:
  Mat4 m_;
};

/// Link transform from frame i-1 to frame i. Throws InvalidParameter on non-finite input.
HomogeneousTransform dh_transform(const DhParameters& p);

/// A * B
HomogeneousTransform compose(const HomogeneousTransform& a, const HomogeneousTransform& b);

}  // namespace drillboom
