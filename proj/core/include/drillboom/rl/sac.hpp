#pragma once

#include "drillboom/rl/adam.hpp"
#include "drillboom/rl/agent.hpp"

namespace drillboom::rl {

/// Reparameterised actor loss mean(alpha log pi - min_i Q_i) and its parameter gradient.
struct ActorObjective {
  double loss = 0.0;
  MlpGradients gradients;
  Eigen::VectorXd log_prob;
  Eigen::RowVectorXd q_min;
};

/**
 * Soft actor-critic with twin critics, Polyak-averaged target critics and an
 * automatically tuned temperature.
 *
 * Critic target: y = r + gamma (1 - done) (min_i Q'_i(s', a') - alpha log pi(a'|s')),
 * with a' drawn from the current actor. The actor minimises
 * mean(alpha log pi(a|s) - min_i Q_i(s, a)) through the reparameterised sample.
 */
class SacAgent final : public Agent {
 public:
  SacAgent(const TrainConfig& cfg, int obs_dim, int action_dim);

  Eigen::VectorXd explore(const Eigen::VectorXd& obs_n, std::mt19937_64& rng) const override;
  UpdateDiagnostics update(const Batch& batch, std::mt19937_64& rng) override;
  Policy policy(const ObservationNormalizer& normalizer, const Action& a_max,
                const ObservationMode& mode) const override;
  bool parameters_finite() const override;

  /// Bellman targets for a batch given the standard-normal noise of the next actions.
  Eigen::VectorXd critic_targets(const Batch& batch, const Eigen::MatrixXd& next_noise) const;
  /// One critic regression step toward fixed targets; returns the pre-step loss.
  double critic_step(const Batch& batch, const Eigen::VectorXd& targets);

  /// Actor objective for a fixed standard-normal noise matrix (one column per sample).
  ActorObjective actor_objective(const Batch& batch, const Eigen::MatrixXd& noise) const;

  double alpha() const;
  double log_alpha() const { return log_alpha_; }
  void set_log_alpha(double v) { log_alpha_ = v; }

  Mlp actor;
  Mlp q1, q2;
  Mlp q1_target, q2_target;

 private:
  TrainConfig cfg_;
  int action_dim_;
  double log_alpha_;
  AdamOptimizer actor_opt_, q1_opt_, q2_opt_;
  ScalarAdam alpha_opt_;
};

}  // namespace drillboom::rl
