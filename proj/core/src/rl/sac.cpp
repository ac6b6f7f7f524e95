#include "drillboom/rl/sac.hpp"

#include <cmath>

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

Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = gauss(rng);
  }
  return m;
}

}  // namespace

SacAgent::SacAgent(const TrainConfig& cfg, int obs_dim, int action_dim)
    : cfg_(cfg), action_dim_(action_dim), log_alpha_(std::log(cfg.initial_alpha)) {
  std::mt19937_64 seeder(cfg.seed ^ 0x5ac5ac5ac5ac5acULL);
  actor = Mlp(layer_sizes(obs_dim, cfg.hidden_sizes, 2 * action_dim), cfg.activation, seeder());
  q1 = Mlp(layer_sizes(obs_dim + action_dim, cfg.hidden_sizes, 1), cfg.activation, seeder());
  q2 = Mlp(layer_sizes(obs_dim + action_dim, cfg.hidden_sizes, 1), cfg.activation, seeder());
  q1_target = q1;
  q2_target = q2;
  const AdamConfig adam{cfg.lr};
  actor_opt_ = AdamOptimizer(actor, adam);
  q1_opt_ = AdamOptimizer(q1, adam);
  q2_opt_ = AdamOptimizer(q2, adam);
  alpha_opt_ = ScalarAdam(adam);
}

double SacAgent::alpha() const { return std::exp(log_alpha_); }

Eigen::VectorXd SacAgent::explore(const Eigen::VectorXd& obs_n, std::mt19937_64& rng) const {
  const Eigen::MatrixXd out = actor.forward(Eigen::MatrixXd(obs_n));
  return squashed_gaussian(out, standard_normal(action_dim_, 1, rng)).action.col(0);
}

Eigen::VectorXd SacAgent::critic_targets(const Batch& batch,
                                         const Eigen::MatrixXd& next_noise) const {
  const SquashedSample next = squashed_gaussian(actor.forward(batch.next_obs), next_noise);
  const Eigen::MatrixXd sa = stack(batch.next_obs, next.action);
  const Eigen::RowVectorXd q_min = q1_target.forward(sa).cwiseMin(q2_target.forward(sa)).row(0);
  const double a = alpha();
  Eigen::VectorXd y(batch.size());
  for (Eigen::Index i = 0; i < batch.size(); ++i) {
    const double soft_value = q_min[i] - a * next.log_prob[i];
    y[i] = cfg_.reward_scale * batch.rewards[i] + cfg_.gamma * (1.0 - batch.dones[i]) * soft_value;
  }
  return y;
}

double SacAgent::critic_step(const Batch& batch, const Eigen::VectorXd& targets) {
  const Eigen::MatrixXd sa = stack(batch.obs, batch.actions);
  const double n = static_cast<double>(batch.size());
  double loss = 0.0;
  auto regress = [&](Mlp& q, AdamOptimizer& opt) {
    MlpCache cache;
    const Eigen::RowVectorXd diff = q.forward(sa, cache).row(0) - targets.transpose();
    loss += diff.squaredNorm() / n;
    opt.step(q, q.backward(cache, Eigen::MatrixXd(2.0 * diff / n)));
  };
  regress(q1, q1_opt_);
  regress(q2, q2_opt_);
  return loss;
}

ActorObjective SacAgent::actor_objective(const Batch& batch, const Eigen::MatrixXd& noise) const {
  const Eigen::Index n = batch.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  MlpCache actor_cache;
  const Eigen::MatrixXd out = actor.forward(batch.obs, actor_cache);
  const SquashedSample s = squashed_gaussian(out, noise);

  const Eigen::MatrixXd sa = stack(batch.obs, s.action);
  MlpCache c1, c2;
  const Eigen::RowVectorXd v1 = q1.forward(sa, c1).row(0);
  const Eigen::RowVectorXd v2 = q2.forward(sa, c2).row(0);
  Eigen::MatrixXd m1(1, n), m2(1, n);
  Eigen::RowVectorXd q_min(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool first = v1[i] <= v2[i];
    m1(0, i) = first ? 1.0 : 0.0;
    m2(0, i) = first ? 0.0 : 1.0;
    q_min[i] = first ? v1[i] : v2[i];
  }
  const Eigen::MatrixXd dq_da = (q1.input_gradient(c1, m1) + q2.input_gradient(c2, m2))
                                    .bottomRows(action_dim_);

  const double a = alpha();
  Eigen::MatrixXd d_out(2 * action_dim_, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (int j = 0; j < action_dim_; ++j) {
      const double act = s.action(j, c);
      const double jac = 1.0 - act * act;
      const double sxi = s.std(j, c) * s.noise(j, c);
      const double g = dq_da(j, c);
      d_out(j, c) = (a * 2.0 * act - g * jac) * inv_n;
      d_out(action_dim_ + j, c) =
          (a * (-1.0 + 2.0 * act * sxi) - g * jac * sxi) * inv_n * s.log_std_active(j, c);
    }
  }

  ActorObjective obj;
  obj.gradients = actor.backward(actor_cache, d_out);
  obj.loss = (a * s.log_prob.transpose() - q_min).mean();
  obj.log_prob = s.log_prob;
  obj.q_min = q_min;
  return obj;
}

UpdateDiagnostics SacAgent::update(const Batch& batch, std::mt19937_64& rng) {
  UpdateDiagnostics diag;
  const Eigen::Index n = batch.size();

  diag.critic_loss = critic_step(batch, critic_targets(batch, standard_normal(action_dim_, n, rng)));

  const ActorObjective obj = actor_objective(batch, standard_normal(action_dim_, n, rng));
  actor_opt_.step(actor, obj.gradients);

  diag.actor_loss = obj.loss;
  diag.mean_q = obj.q_min.mean();

  const double entropy_gap = (obj.log_prob.array() + cfg_.entropy_target).mean();
  diag.alpha_loss = -log_alpha_ * entropy_gap;
  alpha_opt_.step(log_alpha_, -entropy_gap);
  diag.alpha = alpha();

  q1_target.soft_update_from(q1, cfg_.tau);
  q2_target.soft_update_from(q2, cfg_.tau);
  return diag;
}

Policy SacAgent::policy(const ObservationNormalizer& normalizer, const Action& a_max,
                        const ObservationMode& mode) const {
  return Policy(actor, PolicyKind::gaussian, normalizer, a_max, mode, cfg_.exploration_noise);
}

bool SacAgent::parameters_finite() const {
  return actor.all_finite() && q1.all_finite() && q2.all_finite() && q1_target.all_finite() &&
         q2_target.all_finite() && std::isfinite(log_alpha_);
}

}  // namespace drillboom::rl
