#include "drillboom/rl/mlp.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace drillboom::rl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

Eigen::MatrixXd activate(Activation act, const Eigen::MatrixXd& z) {
  switch (act) {
    case Activation::relu:
      return z.cwiseMax(0.0);
    case Activation::tanh:
      return z.array().tanh().matrix();
    case Activation::gelu:
      return z.unaryExpr([](double v) { return 0.5 * v * (1.0 + std::erf(v * kInvSqrt2)); });
  }
  return z;
}

Eigen::MatrixXd activation_derivative(Activation act, const Eigen::MatrixXd& z) {
  switch (act) {
    case Activation::relu:
      return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    case Activation::tanh:
      return z.unaryExpr([](double v) {
        const double t = std::tanh(v);
        return 1.0 - t * t;
      });
    case Activation::gelu:
      return z.unaryExpr([](double v) {
        return 0.5 * (1.0 + std::erf(v * kInvSqrt2)) + v * kInvSqrt2Pi * std::exp(-0.5 * v * v);
      });
  }
  return Eigen::MatrixXd::Ones(z.rows(), z.cols());
}

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw std::invalid_argument("Mlp needs at least input and output sizes");
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("Mlp layer sizes must be positive");
  }
}

}  // namespace

const char* to_string(Activation act) {
  switch (act) {
    case Activation::relu: return "relu";
    case Activation::gelu: return "gelu";
    case Activation::tanh: return "tanh";
  }
  return "relu";
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::relu;
  if (name == "gelu") return Activation::gelu;
  if (name == "tanh") return Activation::tanh;
  throw std::invalid_argument("unknown activation '" + name + "'");
}

void MlpGradients::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

Mlp::Mlp(std::vector<int> layer_sizes, Activation hidden, std::uint64_t seed)
    : sizes_(std::move(layer_sizes)), activation_(hidden) {
  check_sizes(sizes_);
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd w(out, in);
    for (int c = 0; c < in; ++c) {
      for (int r = 0; r < out; ++r) w(r, c) = dist(rng);
    }
    Eigen::VectorXd b(out);
    for (int r = 0; r < out; ++r) b[r] = dist(rng);
    weights_.push_back(std::move(w));
    biases_.push_back(std::move(b));
  }
}

Mlp Mlp::zeros(std::vector<int> layer_sizes, Activation hidden) {
  check_sizes(layer_sizes);
  Mlp net;
  net.sizes_ = std::move(layer_sizes);
  net.activation_ = hidden;
  for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l) {
    net.weights_.push_back(Eigen::MatrixXd::Zero(net.sizes_[l + 1], net.sizes_[l]));
    net.biases_.push_back(Eigen::VectorXd::Zero(net.sizes_[l + 1]));
  }
  return net;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  }
  return n;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  if (x.rows() != input_size()) {
    throw std::invalid_argument("Mlp::forward: expected input of size " +
                                std::to_string(input_size()) + ", got " +
                                std::to_string(x.rows()));
  }
  Eigen::MatrixXd a = x;
  const int last = layer_count() - 1;
  for (int l = 0; l <= last; ++l) {
    Eigen::MatrixXd z = weights_[l] * a;
    z.colwise() += biases_[l];
    a = l == last ? std::move(z) : activate(activation_, z);
  }
  return a;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, MlpCache& cache) const {
  if (x.rows() != input_size()) {
    throw std::invalid_argument("Mlp::forward: expected input of size " +
                                std::to_string(input_size()) + ", got " +
                                std::to_string(x.rows()));
  }
  cache.inputs.resize(weights_.size());
  cache.preactivations.resize(weights_.size());
  Eigen::MatrixXd a = x;
  const int last = layer_count() - 1;
  for (int l = 0; l <= last; ++l) {
    cache.inputs[l] = a;
    Eigen::MatrixXd z = weights_[l] * a;
    z.colwise() += biases_[l];
    a = l == last ? z : activate(activation_, z);
    cache.preactivations[l] = std::move(z);
  }
  return a;
}

Eigen::VectorXd Mlp::forward_one(const Eigen::VectorXd& x) const {
  return forward(Eigen::MatrixXd(x)).col(0);
}

MlpGradients Mlp::backward(const MlpCache& cache, const Eigen::MatrixXd& upstream,
                           Eigen::MatrixXd* input_gradient) const {
  if (cache.inputs.size() != weights_.size() || upstream.rows() != output_size() ||
      upstream.cols() != cache.inputs.front().cols()) {
    throw std::invalid_argument("Mlp::backward: gradient shape does not match the cached pass");
  }
  MlpGradients grads;
  grads.weights.resize(weights_.size());
  grads.biases.resize(biases_.size());

  Eigen::MatrixXd delta = upstream;
  for (int l = layer_count() - 1; l >= 0; --l) {
    if (l != layer_count() - 1) {
      delta = delta.cwiseProduct(activation_derivative(activation_, cache.preactivations[l]));
    }
    grads.weights[l].noalias() = delta * cache.inputs[l].transpose();
    grads.biases[l] = delta.rowwise().sum();
    if (l > 0 || input_gradient != nullptr) {
      Eigen::MatrixXd next = weights_[l].transpose() * delta;
      delta = std::move(next);
    }
  }
  if (input_gradient != nullptr) *input_gradient = std::move(delta);
  return grads;
}

Eigen::MatrixXd Mlp::input_gradient(const MlpCache& cache, const Eigen::MatrixXd& upstream) const {
  if (cache.inputs.size() != weights_.size() || upstream.rows() != output_size() ||
      upstream.cols() != cache.inputs.front().cols()) {
    throw std::invalid_argument("Mlp::input_gradient: gradient shape does not match the cached pass");
  }
  Eigen::MatrixXd delta = upstream;
  for (int l = layer_count() - 1; l >= 0; --l) {
    if (l != layer_count() - 1) {
      delta = delta.cwiseProduct(activation_derivative(activation_, cache.preactivations[l]));
    }
    Eigen::MatrixXd next = weights_[l].transpose() * delta;
    delta = std::move(next);
  }
  return delta;
}

MlpGradients Mlp::zero_gradients() const {
  MlpGradients g;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    g.weights.push_back(Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(biases_[l].size()));
  }
  return g;
}

bool Mlp::all_finite() const {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (!weights_[l].allFinite() || !biases_[l].allFinite()) return false;
  }
  return true;
}

void Mlp::soft_update_from(const Mlp& source, double tau) {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    weights_[l] = tau * source.weights_[l] + (1.0 - tau) * weights_[l];
    biases_[l] = tau * source.biases_[l] + (1.0 - tau) * biases_[l];
  }
}

bool Mlp::operator==(const Mlp& other) const {
  if (sizes_ != other.sizes_ || activation_ != other.activation_) return false;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    if (weights_[l] != other.weights_[l] || biases_[l] != other.biases_[l]) return false;
  }
  return true;
}

}  // namespace drillboom::rl
