#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "drillboom/boom_model.hpp"
#include "drillboom/environment.hpp"
#include "drillboom/rl/train_config.hpp"

namespace drillboom::harness {

/// Malformed or invalid configuration. `line()` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct ExperimentSpec {
  std::string config_path;  // where the spec was loaded from, empty for built-ins
  BoomConfig boom;
  EnvConfig env;  // observation mode lives in env.mode
  rl::TrainConfig train;  // algorithm lives in train.algo
  int n_eval_episodes = 100;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::string output_dir = "out";

  bool operator==(const ExperimentSpec&) const = default;
};

/// Reference boom, default environment and training settings.
ExperimentSpec default_spec();

/**
 * Parses the INI-style experiment config.
 *
 *   [boom]        name, drill_depth, jointN.{kind,theta,alpha,a,d,q_min,q_max,rate_max}
 *   [env]         depth, horizon, f, workspace_lo, workspace_hi, face_normal, cone,
 *                 noise_revolute, noise_prismatic, obs_mode, omega, raw_action_norm,
 *                 max_reset_attempts
 *   [train]       algo, gamma, lr, batch, buffer, tau, iterations, warmup, entropy_target,
 *                 initial_alpha, reward_scale, env_steps_per_update, exploration_noise, hidden, activation, eval_interval,
 *                 eval_episodes, seed
 *   [experiment]  seeds, n_eval_episodes, output_dir
 *
 * All joint keys are required. Every other key falls back to its default.
 * Unknown sections and keys, duplicates and unparsable values are errors
 * carrying the offending line number. Angles accept `pi` forms such as
 * `pi/2`, `-pi/4` or `3*pi/2`.
 */
ExperimentSpec parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentSpec load_config(const std::string& path);

/// Writes every key, so parse_config(save_config(s)) == s up to config_path.
void write_config(std::ostream& out, const ExperimentSpec& spec);
void save_config(const std::string& path, const ExperimentSpec& spec);

/// Boom, environment and training validation messages; empty when usable.
std::vector<std::string> validate(const ExperimentSpec& spec);

}  // namespace drillboom::harness
