#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "drillboom/error.hpp"
#include "drillboom/kinematics.hpp"
#include "oracles.hpp"

using namespace drillboom;

namespace {

JointVector random_posture(const BoomConfig& boom, std::mt19937_64& rng) {
  JointVector q;
  for (int i = 0; i < kJointCount; ++i) {
    q[i] = std::uniform_real_distribution<double>(boom.joints[i].q_min, boom.joints[i].q_max)(rng);
  }
  return q;
}

DhParameters random_dh(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> len(-5.0, 5.0);
  return {ang(rng), ang(rng), len(rng), len(rng)};
}

}  // namespace

TEST(Transform, LinkMatrixMatchesElementaryProduct) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const DhParameters p = random_dh(rng);
    const Mat4 m = dh_transform(p).matrix();
    const oracle::M4 ref = oracle::link_matrix(p.theta, p.alpha, p.a, p.d);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(m(i, j), ref[i][j], 1e-12);
  }
}

TEST(Transform, ZeroParametersGiveIdentity) {
  EXPECT_TRUE(dh_transform({0, 0, 0, 0}).matrix().isApprox(Mat4::Identity(), 0.0));
}

TEST(Transform, PureTranslationsAndRotations) {
  const Mat4 tz = dh_transform({0, 0, 0, 2.5}).matrix();
  EXPECT_DOUBLE_EQ(tz(2, 3), 2.5);
  EXPECT_TRUE((tz.topLeftCorner<3, 3>().isIdentity()));
  const Mat4 rz = dh_transform({std::numbers::pi / 2, 0, 0, 0}).matrix();
  EXPECT_NEAR(rz(0, 1), -1.0, 1e-15);
  EXPECT_NEAR(rz(1, 0), 1.0, 1e-15);
}

TEST(Transform, RejectsNonFiniteParameters) {
  EXPECT_THROW(dh_transform({std::nan(""), 0, 0, 0}), InvalidParameter);
  EXPECT_THROW(dh_transform({0, 0, INFINITY, 0}), InvalidParameter);
}

TEST(Transform, OrthonormalWithExactBottomRow) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 2000; ++k) {
    const HomogeneousTransform t = dh_transform(random_dh(rng));
    EXPECT_LT(t.orthonormality_error(), 1e-12);
    EXPECT_TRUE(t.bottom_row_exact());
  }
}

TEST(Transform, CompositionIsAssociative) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    const auto a = dh_transform(random_dh(rng));
    const auto b = dh_transform(random_dh(rng));
    const auto c = dh_transform(random_dh(rng));
    const Mat4 left = ((a * b) * c).matrix();
    const Mat4 right = (a * (b * c)).matrix();
    EXPECT_LT((left - right).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_TRUE((a * b).bottom_row_exact());
  }
}

TEST(Transform, InverseComposesToIdentity) {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 200; ++k) {
    const auto t = dh_transform(random_dh(rng));
    EXPECT_LT(((t * t.inverse()).matrix() - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Transform, ComposeMatchesNaiveMatmul) {
  std::mt19937_64 rng(15);
  const DhParameters p1 = random_dh(rng), p2 = random_dh(rng);
  const Mat4 m = compose(dh_transform(p1), dh_transform(p2)).matrix();
  const oracle::M4 ref = oracle::matmul(oracle::link_matrix(p1.theta, p1.alpha, p1.a, p1.d),
                                        oracle::link_matrix(p2.theta, p2.alpha, p2.a, p2.d));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(m(i, j), ref[i][j], 1e-12);
}

TEST(Kinematics, NominalPoseOfReferenceBoom) {
  const BoomConfig boom = default_boom();
  const DrillEndPose pose = forward_kinematics(boom, boom.nominal());
  EXPECT_NEAR(pose.position.x(), 8.5, 1e-12);
  EXPECT_NEAR(pose.position.y(), 0.0, 1e-12);
  EXPECT_NEAR(pose.position.z(), 0.3, 1e-12);
  EXPECT_NEAR(pose.direction.x(), 1.0, 1e-12);
}

TEST(Kinematics, MatchesPointMappingOracle) {
  const BoomConfig boom = default_boom();
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const JointVector q = random_posture(boom, rng);
    const DrillEndPose pose = forward_kinematics(boom, q);
    const oracle::Pose ref = oracle::point_mapping_fk(boom, q);
    EXPECT_LT((pose.position - ref.position).norm(), 1e-10);
    EXPECT_LT((pose.direction - ref.direction).norm(), 1e-10);
  }
}

TEST(Kinematics, DirectionIsUnit) {
  const BoomConfig boom = default_boom();
  std::mt19937_64 rng(22);
  for (int k = 0; k < 200; ++k) {
    EXPECT_NEAR(forward_kinematics(boom, random_posture(boom, rng)).direction.norm(), 1.0, 1e-14);
  }
}

TEST(Kinematics, FrameChainEndsAtDrillPose) {
  const BoomConfig boom = default_boom();
  const JointVector q = boom.nominal();
  const auto chain = frame_chain(boom, q);
  EXPECT_TRUE(chain.back().translation().isApprox(forward_kinematics(boom, q).position));
}

TEST(Kinematics, DrillFeedMovesAlongAxis) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  const DrillEndPose before = forward_kinematics(boom, q);
  q[7] += 0.4;
  const DrillEndPose after = forward_kinematics(boom, q);
  EXPECT_LT((after.position - before.position - 0.4 * before.direction).norm(), 1e-12);
}

TEST(Kinematics, RejectsPostureOutsideLimits) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  q[2] = boom.joints[2].q_max + 0.1;
  q[5] = boom.joints[5].q_min - 0.1;
  try {
    forward_kinematics(boom, q);
    FAIL() << "expected OutOfRange";
  } catch (const OutOfRange& e) {
    EXPECT_EQ(e.joints(), (std::vector<int>{3, 6}));
  }
}

TEST(Kinematics, PreviewPoint) {
  DrillEndPose pose;
  pose.position = Vec3(1, 2, 3);
  pose.direction = Vec3::UnitX();
  EXPECT_TRUE(preview_point(pose, 3.0).isApprox(Vec3(4, 2, 3)));
  EXPECT_TRUE(preview_point(pose, 0.0).isApprox(pose.position));
  EXPECT_THROW(preview_point(pose, -1.0), InvalidParameter);
}

TEST(Kinematics, JacobianMatchesOracleDifferences) {
  const BoomConfig boom = default_boom();
  std::mt19937_64 rng(23);
  const JointVector q = boom.nominal() + 0.05 * JointVector::Ones();
  const auto fd = jacobian_fd(boom, q);
  for (int j = 0; j < kJointCount; ++j) {
    const double h = 1e-6;
    JointVector qp = q, qm = q;
    qp[j] += h;
    qm[j] -= h;
    const auto p = oracle::point_mapping_fk(boom, qp);
    const auto m = oracle::point_mapping_fk(boom, qm);
    const Eigen::Vector3d dpos = (p.position - m.position) / (2 * h);
    const Eigen::Vector3d ddir = (p.direction - m.direction) / (2 * h);
    EXPECT_LT((fd.jacobian.col(j).head<3>() - dpos).norm(), 1e-6);
    EXPECT_LT((fd.jacobian.col(j).tail<3>() - ddir).norm(), 1e-6);
    EXPECT_FALSE(fd.at_boundary[j]);
  }
}

TEST(Kinematics, JacobianErrorShrinksQuadratically) {
  const BoomConfig boom = default_boom();
  const JointVector q = boom.nominal() + 0.1 * JointVector::Ones();
  // Analytic reference from a much finer Richardson-extrapolated difference.
  auto rich = [&](int j) {
    auto d = [&](double h) {
      JointVector qp = q, qm = q;
      qp[j] += h;
      qm[j] -= h;
      return Eigen::Vector3d((oracle::point_mapping_fk(boom, qp).position -
                              oracle::point_mapping_fk(boom, qm).position) /
                             (2 * h));
    };
    return Eigen::Vector3d((4.0 * d(1e-4) - d(2e-4)) / 3.0);
  };
  for (int j : {0, 1, 4}) {
    const Eigen::Vector3d ref = rich(j);
    const double e1 = (jacobian_fd(boom, q, 1e-2).jacobian.col(j).head<3>() - ref).norm();
    const double e2 = (jacobian_fd(boom, q, 5e-3).jacobian.col(j).head<3>() - ref).norm();
    // Halving eps divides a second-order error by about four.
    EXPECT_GT(e1 / e2, 3.0) << "joint " << j + 1;
    EXPECT_LT(e1 / e2, 5.0) << "joint " << j + 1;
  }
}

TEST(Kinematics, JacobianAtLimitUsesOneSidedSpan) {
  const BoomConfig boom = default_boom();
  JointVector q = boom.nominal();
  q[2] = boom.joints[2].q_min;
  const auto fd = jacobian_fd(boom, q);
  EXPECT_TRUE(fd.at_boundary[2]);
  EXPECT_TRUE(fd.jacobian.allFinite());
  // The telescope moves the drill end by one metre per metre along the boom.
  EXPECT_NEAR(fd.jacobian.col(2).head<3>().norm(), 1.0, 1e-6);
  EXPECT_THROW(jacobian_fd(boom, q, 0.0), InvalidParameter);
}
