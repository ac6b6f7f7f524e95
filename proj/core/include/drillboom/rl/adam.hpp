#pragma once

#include <span>

#include "drillboom/rl/mlp.hpp"

namespace drillboom::rl {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/**
 * One bias-corrected Adam step over a flat parameter block.
 * `t` is the 1-based step count; m and v are updated in place.
 */
void adam_step(std::span<double> params, std::span<const double> grads, std::span<double> m,
               std::span<double> v, long t, const AdamConfig& cfg);

/// Adam state for every parameter block of one network.
class AdamOptimizer {
 public:
  AdamOptimizer() = default;
  AdamOptimizer(const Mlp& net, AdamConfig cfg);

  void step(Mlp& net, const MlpGradients& grads);
  long steps() const { return t_; }

 private:
  AdamConfig cfg_;
  MlpGradients m_;
  MlpGradients v_;
  long t_ = 0;
};

/// Adam on a single scalar (SAC log-temperature).
class ScalarAdam {
 public:
  explicit ScalarAdam(AdamConfig cfg = {}) : cfg_(cfg) {}
  void step(double& param, double grad);

 private:
  AdamConfig cfg_;
  double m_ = 0.0;
  double v_ = 0.0;
  long t_ = 0;
};

}  // namespace drillboom::rl
