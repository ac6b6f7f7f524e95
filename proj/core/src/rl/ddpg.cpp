#include "drillboom/rl/ddpg.hpp"

#include <algorithm>

namespace drillboom::rl {

namespace {

std::vector<int> layer_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

Eigen::MatrixXd stack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

DdpgAgent::DdpgAgent(const TrainConfig& cfg, int obs_dim, int action_dim)
    : cfg_(cfg), action_dim_(action_dim) {
  std::mt19937_64 seeder(cfg.seed ^ 0xdd96dd96dd96dd9ULL);
  actor = Mlp(layer_sizes(obs_dim, cfg.hidden_sizes, action_dim), cfg.activation, seeder());
  critic = Mlp(layer_sizes(obs_dim + action_dim, cfg.hidden_sizes, 1), cfg.activation, seeder());
  actor_target = actor;
  critic_target = critic;
  const AdamConfig adam{cfg.lr};
  actor_opt_ = AdamOptimizer(actor, adam);
  critic_opt_ = AdamOptimizer(critic, adam);
}

Eigen::VectorXd DdpgAgent::explore(const Eigen::VectorXd& obs_n, std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, cfg_.exploration_noise);
  Eigen::VectorXd a = actor.forward_one(obs_n).array().tanh();
  for (Eigen::Index j = 0; j < a.size(); ++j) a[j] = std::clamp(a[j] + gauss(rng), -1.0, 1.0);
  return a;
}

Eigen::VectorXd DdpgAgent::critic_targets(const Batch& batch) const {
  const Eigen::MatrixXd next_action = actor_target.forward(batch.next_obs).array().tanh();
  const Eigen::RowVectorXd q_next = critic_target.forward(stack(batch.next_obs, next_action)).row(0);
  Eigen::VectorXd y(batch.size());
  for (Eigen::Index i = 0; i < batch.size(); ++i) {
    y[i] = cfg_.reward_scale * batch.rewards[i] + cfg_.gamma * (1.0 - batch.dones[i]) * q_next[i];
  }
  return y;
}

double DdpgAgent::critic_step(const Batch& batch, const Eigen::VectorXd& targets) {
  const double n = static_cast<double>(batch.size());
  MlpCache cache;
  const Eigen::RowVectorXd diff =
      critic.forward(stack(batch.obs, batch.actions), cache).row(0) - targets.transpose();
  critic_opt_.step(critic, critic.backward(cache, Eigen::MatrixXd(2.0 * diff / n)));
  return diff.squaredNorm() / n;
}

double DdpgAgent::actor_step(const Batch& batch) {
  const Eigen::Index n = batch.size();
  MlpCache actor_cache, critic_cache;
  const Eigen::MatrixXd action = actor.forward(batch.obs, actor_cache).array().tanh();
  const Eigen::RowVectorXd q = critic.forward(stack(batch.obs, action), critic_cache).row(0);
  const Eigen::MatrixXd dq_da =
      critic.input_gradient(critic_cache, Eigen::MatrixXd::Ones(1, n)).bottomRows(action_dim_);
  // L = -mean Q(s, tanh(out))
  const Eigen::MatrixXd d_out =
      -(dq_da.array() * (1.0 - action.array().square())).matrix() / static_cast<double>(n);
  actor_opt_.step(actor, actor.backward(actor_cache, d_out));
  return -q.mean();
}

double DdpgAgent::mean_policy_value(const Batch& batch) const {
  const Eigen::MatrixXd action = actor.forward(batch.obs).array().tanh();
  return critic.forward(stack(batch.obs, action)).mean();
}

UpdateDiagnostics DdpgAgent::update(const Batch& batch, std::mt19937_64& /*rng*/) {
  UpdateDiagnostics diag;
  diag.critic_loss = critic_step(batch, critic_targets(batch));
  diag.actor_loss = actor_step(batch);
  diag.mean_q = -diag.actor_loss;
  actor_target.soft_update_from(actor, cfg_.tau);
  critic_target.soft_update_from(critic, cfg_.tau);
  return diag;
}

Policy DdpgAgent::policy(const ObservationNormalizer& normalizer, const Action& a_max,
                         const ObservationMode& mode) const {
  return Policy(actor, PolicyKind::deterministic, normalizer, a_max, mode, cfg_.exploration_noise);
}

bool DdpgAgent::parameters_finite() const {
  return actor.all_finite() && critic.all_finite() && actor_target.all_finite() &&
         critic_target.all_finite();
}

}  // namespace drillboom::rl
