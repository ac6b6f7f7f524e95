#pragma once

#include <array>
#include <span>
#include <vector>

#include "drillboom/boom_model.hpp"
#include "drillboom/hole.hpp"

namespace drillboom {

/// Damped-least-squares parameters. Damping adapts within [lambda_min, lambda_max].
struct IkParams {
  double pos_tol = 1e-4;  // m
  double dir_tol = 1e-4;  // ||direction difference||
  int max_iterations = 200;
  double lambda_initial = 1e-2;
  double lambda_min = 1e-4;
  double lambda_max = 1e2;
  double fd_eps = kDefaultJacobianEps;
};

struct IkSolution {
  JointVector q_star = JointVector::Zero();
  int iterations = 0;
  double residual_pos = 0.0;
  double residual_dir = 0.0;
  bool converged = false;
};

/**
 * Guarded damped least squares toward the hole collar and axis.
 *
 * Each iteration proposes q + (J^T J + lambda^2 I)^-1 J^T e, clamped to the
 * limits. A proposal is accepted only when it lowers ||e|| (then lambda is
 * halved); otherwise it is discarded and lambda doubled. Non-convergence is
 * reported through `converged`, never thrown.
 */
IkSolution solve_ik(const BoomConfig& config, const TargetHole& hole, const JointVector& q0,
                    const IkParams& params = {});

struct StepReport {
  std::array<int, kJointCount> per_joint_steps{};
  int integrated_steps = 0;    // max over joints
  int hierarchical_steps = 0;  // sum over joints
};

StepReport make_step_report(const std::array<int, kJointCount>& per_joint_steps);

/// Steps each joint needs at full rate to move from q0 to q_star when moved one at a time.
StepReport sequential_plan(const BoomConfig& config, const JointVector& q0,
                           const JointVector& q_star, double control_hz);

/// Tolerance used by effective_steps: 1e-3 rad (revolute) / 1e-3 m (prismatic).
JointVector default_effective_step_tolerance();

/**
 * Per-joint effective steps of a trajectory [q(0), ..., q(T)]: the last index t
 * with |q_i(t) - q_i(T)| > tol_i, plus one; zero if the joint never leaves the
 * tolerance band. Throws InvalidParameter for an empty trajectory.
 */
std::array<int, kJointCount> effective_steps(std::span<const JointVector> trajectory,
                                             const JointVector& tol);

}  // namespace drillboom
