#include "drillboom/rl/replay_buffer.hpp"

#include <stdexcept>

namespace drillboom::rl {

Batch make_batch(const std::vector<Transition>& transitions) {
  if (transitions.empty()) throw std::logic_error("make_batch: no transitions");
  const auto n = static_cast<Eigen::Index>(transitions.size());
  const auto obs_dim = transitions.front().obs.size();
  const auto act_dim = transitions.front().action.size();
  Batch b;
  b.obs.resize(obs_dim, n);
  b.actions.resize(act_dim, n);
  b.rewards.resize(n);
  b.next_obs.resize(obs_dim, n);
  b.dones.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& t = transitions[static_cast<std::size_t>(i)];
    b.obs.col(i) = t.obs;
    b.actions.col(i) = t.action;
    b.rewards[i] = t.reward;
    b.next_obs.col(i) = t.next_obs;
    b.dones[i] = t.done ? 1.0 : 0.0;
  }
  return b;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
}

void ReplayBuffer::add(Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
    return;
  }
  storage_[cursor_] = std::move(t);
  cursor_ = (cursor_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= storage_.size()) throw std::out_of_range("ReplayBuffer::at");
  return storage_[(cursor_ + i) % storage_.size()];
}

Batch ReplayBuffer::sample(std::size_t batch_size, std::mt19937_64& rng) const {
  if (storage_.empty()) throw std::logic_error("ReplayBuffer::sample: buffer is empty");
  std::uniform_int_distribution<std::size_t> pick(0, storage_.size() - 1);
  const auto n = static_cast<Eigen::Index>(batch_size);
  const auto& first = storage_.front();
  Batch b;
  b.obs.resize(first.obs.size(), n);
  b.actions.resize(first.action.size(), n);
  b.rewards.resize(n);
  b.next_obs.resize(first.next_obs.size(), n);
  b.dones.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& t = storage_[pick(rng)];
    b.obs.col(i) = t.obs;
    b.actions.col(i) = t.action;
    b.rewards[i] = t.reward;
    b.next_obs.col(i) = t.next_obs;
    b.dones[i] = t.done ? 1.0 : 0.0;
  }
  return b;
}

}  // namespace drillboom::rl
