#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drillboom/rl/mlp.hpp"

namespace drillboom::rl {

enum class Algorithm { sac, ddpg };

const char* to_string(Algorithm algo);
Algorithm algorithm_from_string(const std::string& name);

struct TrainConfig {
  Algorithm algo = Algorithm::sac;
  double gamma = 0.99;
  double lr = 1e-3;
  int batch_size = 256;
  long buffer_capacity = 1'000'000;
  double tau = 0.005;
  /// Gradient updates, each preceded by env_steps_per_update environment steps after warm-up.
  long total_iterations = 50'000;
  /// Behaviour-policy environment steps collected between consecutive updates.
  int env_steps_per_update = 10;
  /// Uniform-random environment steps collected before the first update.
  long warmup_steps = 5'000;
  double entropy_target = -8.0;
  double initial_alpha = 1.0;
  /// Learner-side multiplier on environment rewards; keeps critic targets near unit scale.
  double reward_scale = 1.0;
  double exploration_noise = 0.1;
  std::vector<int> hidden_sizes{256, 256};
  Activation activation = Activation::relu;
  long eval_interval = 2'500;
  int eval_episodes = 10;
  std::uint64_t seed = 0;

  bool operator==(const TrainConfig&) const = default;
};

/// Empty when usable, otherwise one message per violated constraint.
std::vector<std::string> validate(const TrainConfig& cfg);

}  // namespace drillboom::rl
