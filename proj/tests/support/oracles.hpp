#pragma once

// Reference computations for tests. Deliberately naive: plain arrays and
// loops, no shared code with the library beyond the input types.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "drillboom/boom_model.hpp"
#include "drillboom/rl/mlp.hpp"

namespace oracle {

using M4 = std::array<std::array<double, 4>, 4>;
using P3 = std::array<double, 3>;

inline M4 eye4() {
  M4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline M4 matmul(const M4& a, const M4& b) {
  M4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline M4 rot_z(double t) {
  M4 m = eye4();
  m[0][0] = std::cos(t);
  m[0][1] = -std::sin(t);
  m[1][0] = std::sin(t);
  m[1][1] = std::cos(t);
  return m;
}

inline M4 rot_x(double t) {
  M4 m = eye4();
  m[1][1] = std::cos(t);
  m[1][2] = -std::sin(t);
  m[2][1] = std::sin(t);
  m[2][2] = std::cos(t);
  return m;
}

inline M4 trans(double x, double y, double z) {
  M4 m = eye4();
  m[0][3] = x;
  m[1][3] = y;
  m[2][3] = z;
  return m;
}

/// Link matrix as the product of its four elementary motions.
inline M4 link_matrix(double theta, double alpha, double a, double d) {
  return matmul(matmul(matmul(rot_z(theta), trans(0, 0, d)), trans(a, 0, 0)), rot_x(alpha));
}

// Point-wise elementary motions.
inline P3 apply_rot_x(double t, const P3& p) {
  return {p[0], std::cos(t) * p[1] - std::sin(t) * p[2], std::sin(t) * p[1] + std::cos(t) * p[2]};
}
inline P3 apply_rot_z(double t, const P3& p) {
  return {std::cos(t) * p[0] - std::sin(t) * p[1], std::sin(t) * p[0] + std::cos(t) * p[1], p[2]};
}

/// Maps a point expressed in link frame i to frame i-1.
inline P3 map_through_link(double theta, double alpha, double a, double d, P3 p) {
  p = apply_rot_x(alpha, p);
  p[0] += a;
  p[2] += d;
  return apply_rot_z(theta, p);
}

struct Pose {
  Eigen::Vector3d position;
  Eigen::Vector3d direction;
};

/**
 * Forward kinematics by carrying the drill-end origin and a unit point on its
 * z axis back through every link, last link first.
 */
inline Pose point_mapping_fk(const drillboom::BoomConfig& boom, const drillboom::JointVector& q) {
  P3 origin{0, 0, 0};
  P3 tip{0, 0, 1};
  for (int i = drillboom::kJointCount - 1; i >= 0; --i) {
    const auto& js = boom.joints[i];
    double theta = js.fixed.theta;
    double d = js.fixed.d;
    if (js.kind == drillboom::JointKind::revolute) {
      theta = q[i];
    } else {
      d = q[i];
    }
    origin = map_through_link(theta, js.fixed.alpha, js.fixed.a, d, origin);
    tip = map_through_link(theta, js.fixed.alpha, js.fixed.a, d, tip);
  }
  Pose pose;
  pose.position = Eigen::Vector3d(origin[0], origin[1], origin[2]);
  pose.direction = Eigen::Vector3d(tip[0] - origin[0], tip[1] - origin[1], tip[2] - origin[2]);
  return pose;
}

/// Chord between two rays of length `depth` separated by angle `phi`.
inline double preview_chord(double depth, double phi) { return 2.0 * depth * std::sin(phi / 2.0); }

inline double activate(drillboom::rl::Activation act, double x) {
  switch (act) {
    case drillboom::rl::Activation::relu: return x > 0.0 ? x : 0.0;
    case drillboom::rl::Activation::tanh: return std::tanh(x);
    case drillboom::rl::Activation::gelu: return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0)));
  }
  return x;
}

/// Scalar-loop forward pass of a single sample.
inline std::vector<double> mlp_forward(const drillboom::rl::Mlp& net, const std::vector<double>& x) {
  std::vector<double> h = x;
  for (int l = 0; l < net.layer_count(); ++l) {
    const auto& w = net.weights()[l];
    const auto& b = net.biases()[l];
    std::vector<double> out(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      double s = b[r];
      for (Eigen::Index c = 0; c < w.cols(); ++c) s += w(r, c) * h[static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(r)] = l + 1 < net.layer_count() ? activate(net.activation(), s) : s;
    }
    h = std::move(out);
  }
  return h;
}

/// Central difference of a scalar function of one coordinate.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
