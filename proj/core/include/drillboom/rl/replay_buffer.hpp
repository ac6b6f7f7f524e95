#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace drillboom::rl {

/// One environment interaction in network units (normalised observation, action in [-1, 1]).
struct Transition {
  Eigen::VectorXd obs;
  Eigen::VectorXd action;
  double reward = 0.0;
  Eigen::VectorXd next_obs;
  // True only for genuine terminal states; horizon truncation still bootstraps.
  bool done = false;
};

/// Column-per-sample minibatch.
struct Batch {
  Eigen::MatrixXd obs;
  Eigen::MatrixXd actions;
  Eigen::VectorXd rewards;
  Eigen::MatrixXd next_obs;
  Eigen::VectorXd dones;

  Eigen::Index size() const { return rewards.size(); }
};

Batch make_batch(const std::vector<Transition>& transitions);

/// Fixed-capacity ring buffer with uniform sampling over the filled region.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void add(Transition t);
  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  /// Records in insertion order, oldest first.
  const Transition& at(std::size_t i) const;

  /// Uniform with replacement. Throws std::logic_error on an empty buffer.
  Batch sample(std::size_t batch_size, std::mt19937_64& rng) const;

 private:
  std::size_t capacity_;
  std::size_t cursor_ = 0;  // next slot to overwrite once full
  std::vector<Transition> storage_;
};

}  // namespace drillboom::rl
