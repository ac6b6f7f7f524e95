#pragma once

#include "drillboom/rl/adam.hpp"
#include "drillboom/rl/agent.hpp"

namespace drillboom::rl {

/// Deterministic actor tanh(mu(s)) with one critic and target copies of both.
class DdpgAgent final : public Agent {
 public:
  DdpgAgent(const TrainConfig& cfg, int obs_dim, int action_dim);

  Eigen::VectorXd explore(const Eigen::VectorXd& obs_n, std::mt19937_64& rng) const override;
  UpdateDiagnostics update(const Batch& batch, std::mt19937_64& rng) override;
  Policy policy(const ObservationNormalizer& normalizer, const Action& a_max,
                const ObservationMode& mode) const override;
  bool parameters_finite() const override;

  /// r + gamma (1 - done) Q'(s', tanh(mu'(s'))).
  Eigen::VectorXd critic_targets(const Batch& batch) const;
  double critic_step(const Batch& batch, const Eigen::VectorXd& targets);
  /// One actor ascent step on the current critic; returns the pre-step actor loss.
  double actor_step(const Batch& batch);
  /// Mean Q(s, tanh(mu(s))) over the batch.
  double mean_policy_value(const Batch& batch) const;

  Mlp actor, critic;
  Mlp actor_target, critic_target;

 private:
  TrainConfig cfg_;
  int action_dim_;
  AdamOptimizer actor_opt_, critic_opt_;
};

}  // namespace drillboom::rl
