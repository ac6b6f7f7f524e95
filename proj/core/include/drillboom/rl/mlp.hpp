#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace drillboom::rl {

enum class Activation { relu, gelu, tanh };

const char* to_string(Activation act);
Activation activation_from_string(const std::string& name);

/// Intermediate values of a batched forward pass, consumed by backward().
struct MlpCache {
  std::vector<Eigen::MatrixXd> inputs;       // input of each affine layer
  std::vector<Eigen::MatrixXd> preactivations;
};

/// Parameter-shaped gradient (or moment) storage.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  void set_zero();
};

/**
 * Fully connected network: affine layers with a hidden activation between
 * them and a linear output. Batches are column-major: one sample per column.
 */
class Mlp {
 public:
  Mlp() = default;
  /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialisation drawn from `seed`.
  Mlp(std::vector<int> layer_sizes, Activation hidden, std::uint64_t seed);

  static Mlp zeros(std::vector<int> layer_sizes, Activation hidden);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  Activation activation() const { return activation_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  int layer_count() const { return static_cast<int>(weights_.size()); }
  std::size_t parameter_count() const;

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  /// Throws std::invalid_argument on a dimension mismatch.
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, MlpCache& cache) const;
  Eigen::VectorXd forward_one(const Eigen::VectorXd& x) const;

  /// Reverse-mode gradients of sum(upstream .* forward(x)) w.r.t. the parameters.
  MlpGradients backward(const MlpCache& cache, const Eigen::MatrixXd& upstream,
                        Eigen::MatrixXd* input_gradient = nullptr) const;
  /// Gradient w.r.t. the network input only.
  Eigen::MatrixXd input_gradient(const MlpCache& cache, const Eigen::MatrixXd& upstream) const;

  MlpGradients zero_gradients() const;
  bool all_finite() const;

  /// this = tau * source + (1 - tau) * this
  void soft_update_from(const Mlp& source, double tau);

  bool operator==(const Mlp& other) const;

 private:
  std::vector<int> sizes_;
  Activation activation_ = Activation::relu;
  std::vector<Eigen::MatrixXd> weights_;  // out x in
  std::vector<Eigen::VectorXd> biases_;
};

}  // namespace drillboom::rl
