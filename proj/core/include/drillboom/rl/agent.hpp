#pragma once

#include <memory>
#include <random>

#include <Eigen/Dense>

#include "drillboom/rl/policy.hpp"
#include "drillboom/rl/replay_buffer.hpp"
#include "drillboom/rl/train_config.hpp"

namespace drillboom::rl {

struct UpdateDiagnostics {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  double alpha = 0.0;
  double alpha_loss = 0.0;
  double mean_q = 0.0;

  bool finite() const;
};

/// Off-policy learner working in normalised observation / action units.
class Agent {
 public:
  virtual ~Agent() = default;

  /// Behaviour action in [-1, 1] used while collecting data.
  virtual Eigen::VectorXd explore(const Eigen::VectorXd& obs_n, std::mt19937_64& rng) const = 0;
  virtual UpdateDiagnostics update(const Batch& batch, std::mt19937_64& rng) = 0;
  virtual Policy policy(const ObservationNormalizer& normalizer, const Action& a_max,
                        const ObservationMode& mode) const = 0;
  virtual bool parameters_finite() const = 0;
};

std::unique_ptr<Agent> make_agent(const TrainConfig& cfg, int obs_dim, int action_dim);

}  // namespace drillboom::rl
