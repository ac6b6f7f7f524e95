#pragma once

#include <random>

#include <Eigen/Dense>

#include "drillboom/boom_model.hpp"
#include "drillboom/environment.hpp"
#include "drillboom/rl/mlp.hpp"

namespace drillboom::rl {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

/// Affine observation scaling applied before every network: (x - offset) .* scale.
struct ObservationNormalizer {
  Eigen::VectorXd offset;
  Eigen::VectorXd scale;

  Eigen::VectorXd apply(const Eigen::VectorXd& obs) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& batch) const;
  bool operator==(const ObservationNormalizer&) const = default;
};

/**
 * DH joints map to [-1, 1] through their limits; Cartesian joint coordinates
 * are divided by the boom's maximum reach; the current and preview deviations
 * are divided by the drilling depth.
 */
ObservationNormalizer make_observation_normalizer(const BoomConfig& config,
                                                  const EnvConfig& env);

enum class PolicyKind { gaussian, deterministic };
enum class ActMode { stochastic, deterministic };

/// Squashed-Gaussian draw for a batch of network outputs [mean; log_std].
struct SquashedSample {
  Eigen::MatrixXd action;   // tanh(u), in (-1, 1)
  Eigen::MatrixXd noise;    // standard-normal xi
  Eigen::MatrixXd std;      // exp(clamped log_std)
  Eigen::MatrixXd log_std_active;  // 1 where log_std was not clamped, else 0
  Eigen::VectorXd log_prob;  // per sample, summed over action dimensions
};

/// Evaluates the squashed Gaussian for a given noise matrix (one column per sample).
SquashedSample squashed_gaussian(const Eigen::MatrixXd& net_output, const Eigen::MatrixXd& noise);

/// Deployable policy: network plus the normalisation and scaling it was trained with.
class Policy {
 public:
  Policy() = default;
  Policy(Mlp net, PolicyKind kind, ObservationNormalizer normalizer, Action a_max,
         ObservationMode mode, double exploration_noise = 0.1);

  /// Physical action inside [-a_max, a_max]. Stochastic mode needs an rng.
  Action act(const Observation& obs, ActMode mode, std::mt19937_64* rng = nullptr) const;
  /// Same, in normalised units [-1, 1] and taking an already normalised observation.
  Eigen::VectorXd act_normalized(const Eigen::VectorXd& obs_n, ActMode mode,
                                 std::mt19937_64* rng = nullptr) const;

  const Mlp& net() const { return net_; }
  Mlp& net() { return net_; }
  PolicyKind kind() const { return kind_; }
  const ObservationNormalizer& normalizer() const { return normalizer_; }
  const Action& a_max() const { return a_max_; }
  const ObservationMode& mode() const { return mode_; }
  double exploration_noise() const { return exploration_noise_; }

  bool operator==(const Policy& other) const;

 private:
  Mlp net_;
  PolicyKind kind_ = PolicyKind::gaussian;
  ObservationNormalizer normalizer_;
  Action a_max_ = Action::Ones();
  ObservationMode mode_;
  double exploration_noise_ = 0.1;
};

}  // namespace drillboom::rl
