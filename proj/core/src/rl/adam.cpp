#include "drillboom/rl/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace drillboom::rl {

namespace {

template <typename Dense>
std::span<double> as_span(Dense& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}

template <typename Dense>
std::span<const double> as_const_span(const Dense& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}

}  // namespace

void adam_step(std::span<double> params, std::span<const double> grads, std::span<double> m,
               std::span<double> v, long t, const AdamConfig& cfg) {
  if (t < 1) throw std::invalid_argument("adam_step: t must be >= 1");
  if (grads.size() != params.size() || m.size() != params.size() || v.size() != params.size()) {
    throw std::invalid_argument("adam_step: size mismatch");
  }
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    params[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
  }
}

AdamOptimizer::AdamOptimizer(const Mlp& net, AdamConfig cfg)
    : cfg_(cfg), m_(net.zero_gradients()), v_(net.zero_gradients()) {}

void AdamOptimizer::step(Mlp& net, const MlpGradients& grads) {
  ++t_;
  for (std::size_t l = 0; l < net.weights().size(); ++l) {
    adam_step(as_span(net.weights()[l]), as_const_span(grads.weights[l]), as_span(m_.weights[l]),
              as_span(v_.weights[l]), t_, cfg_);
    adam_step(as_span(net.biases()[l]), as_const_span(grads.biases[l]), as_span(m_.biases[l]),
              as_span(v_.biases[l]), t_, cfg_);
  }
}

void ScalarAdam::step(double& param, double grad) {
  ++t_;
  adam_step({&param, 1}, {&grad, 1}, {&m_, 1}, {&v_, 1}, t_, cfg_);
}

}  // namespace drillboom::rl
