#include "drillboom/rl/agent.hpp"

#include <cmath>
#include <stdexcept>

#include "drillboom/rl/ddpg.hpp"
#include "drillboom/rl/sac.hpp"

namespace drillboom::rl {

bool UpdateDiagnostics::finite() const {
  return std::isfinite(critic_loss) && std::isfinite(actor_loss) && std::isfinite(alpha) &&
         std::isfinite(alpha_loss) && std::isfinite(mean_q);
}

std::unique_ptr<Agent> make_agent(const TrainConfig& cfg, int obs_dim, int action_dim) {
  switch (cfg.algo) {
    case Algorithm::sac: return std::make_unique<SacAgent>(cfg, obs_dim, action_dim);
    case Algorithm::ddpg: return std::make_unique<DdpgAgent>(cfg, obs_dim, action_dim);
  }
  throw std::invalid_argument("make_agent: unknown algorithm");
}

const char* to_string(Algorithm algo) { return algo == Algorithm::sac ? "sac" : "ddpg"; }

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "sac") return Algorithm::sac;
  if (name == "ddpg") return Algorithm::ddpg;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected sac or ddpg)");
}

std::vector<std::string> validate(const TrainConfig& cfg) {
  std::vector<std::string> errors;
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) errors.emplace_back("gamma must lie in (0, 1]");
  if (!(cfg.lr > 0.0)) errors.emplace_back("lr must be positive");
  if (cfg.batch_size <= 0) errors.emplace_back("batch must be positive");
  if (cfg.buffer_capacity <= 0) errors.emplace_back("buffer must be positive");
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) errors.emplace_back("tau must lie in (0, 1]");
  if (cfg.total_iterations < 0) errors.emplace_back("iterations must be non-negative");
  if (cfg.warmup_steps < 0) errors.emplace_back("warmup must be non-negative");
  if (!(cfg.initial_alpha > 0.0)) errors.emplace_back("initial_alpha must be positive");
  if (!(cfg.reward_scale > 0.0)) errors.emplace_back("reward_scale must be positive");
  if (cfg.env_steps_per_update < 1) errors.emplace_back("env_steps_per_update must be at least 1");
  if (!(cfg.exploration_noise >= 0.0)) errors.emplace_back("exploration_noise must be >= 0");
  if (cfg.eval_interval <= 0) errors.emplace_back("eval_interval must be positive");
  if (cfg.eval_episodes <= 0) errors.emplace_back("eval_episodes must be positive");
  for (int h : cfg.hidden_sizes) {
    if (h <= 0) errors.emplace_back("hidden layer sizes must be positive");
  }
  return errors;
}

}  // namespace drillboom::rl
