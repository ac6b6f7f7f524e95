#include "drillboom/rl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace drillboom::rl {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// log(1 - tanh(u)^2) without cancellation for large |u|.
double log_one_minus_tanh_sq(double u) {
  return 2.0 * (std::numbers::ln2 - u - softplus(-2.0 * u));
}

double max_reach(const BoomConfig& config) {
  double reach = 0.0;
  for (const auto& j : config.joints) {
    reach += std::abs(j.fixed.a);
    reach += j.kind == JointKind::prismatic ? std::max(std::abs(j.q_min), std::abs(j.q_max))
                                            : std::abs(j.fixed.d);
  }
  return reach;
}

}  // namespace

Eigen::VectorXd ObservationNormalizer::apply(const Eigen::VectorXd& obs) const {
  if (obs.size() != offset.size()) {
    throw std::invalid_argument("ObservationNormalizer: observation size mismatch");
  }
  return (obs - offset).cwiseProduct(scale);
}

Eigen::MatrixXd ObservationNormalizer::apply(const Eigen::MatrixXd& batch) const {
  if (batch.rows() != offset.size()) {
    throw std::invalid_argument("ObservationNormalizer: observation size mismatch");
  }
  return (batch.colwise() - offset).array().colwise() * scale.array();
}

ObservationNormalizer make_observation_normalizer(const BoomConfig& config,
                                                  const EnvConfig& env) {
  const int dim = env.mode.dimension();
  ObservationNormalizer n{Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
  int k = 0;
  if (env.mode.joint == JointRep::dh) {
    for (int i = 0; i < kJointCount; ++i, ++k) {
      const auto& j = config.joints[i];
      n.offset[k] = j.midpoint();
      n.scale[k] = 2.0 / (j.q_max - j.q_min);
    }
  } else {
    const double reach = max_reach(config);
    for (; k < 3 * kJointCount; ++k) n.scale[k] = 1.0 / reach;
  }
  for (int c = 0; c < 3; ++c) n.scale[k + c] = 1.0 / env.depth;
  if (env.mode.task == TaskRep::preview) {
    for (int c = 3; c < 6; ++c) n.scale[k + c] = 1.0 / env.depth;
  }
  return n;
}

SquashedSample squashed_gaussian(const Eigen::MatrixXd& net_output, const Eigen::MatrixXd& noise) {
  const Eigen::Index dim = net_output.rows() / 2;
  if (net_output.rows() != 2 * dim || noise.rows() != dim || noise.cols() != net_output.cols()) {
    throw std::invalid_argument("squashed_gaussian: shape mismatch");
  }
  const Eigen::Index n = net_output.cols();
  SquashedSample s;
  s.action.resize(dim, n);
  s.noise = noise;
  s.std.resize(dim, n);
  s.log_std_active.resize(dim, n);
  s.log_prob = Eigen::VectorXd::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double raw = net_output(dim + j, c);
      const double log_std = std::clamp(raw, kLogStdMin, kLogStdMax);
      const double sd = std::exp(log_std);
      const double xi = noise(j, c);
      const double u = net_output(j, c) + sd * xi;
      s.action(j, c) = std::tanh(u);
      s.std(j, c) = sd;
      s.log_std_active(j, c) = (raw > kLogStdMin && raw < kLogStdMax) ? 1.0 : 0.0;
      s.log_prob[c] += -0.5 * xi * xi - log_std - kHalfLog2Pi - log_one_minus_tanh_sq(u);
    }
  }
  return s;
}

Policy::Policy(Mlp net, PolicyKind kind, ObservationNormalizer normalizer, Action a_max,
               ObservationMode mode, double exploration_noise)
    : net_(std::move(net)),
      kind_(kind),
      normalizer_(std::move(normalizer)),
      a_max_(a_max),
      mode_(mode),
      exploration_noise_(exploration_noise) {
  const int expected_out = kind_ == PolicyKind::gaussian ? 2 * kJointCount : kJointCount;
  if (net_.output_size() != expected_out) {
    throw std::invalid_argument("Policy: network output size does not match the policy kind");
  }
  if (net_.input_size() != normalizer_.offset.size()) {
    throw std::invalid_argument("Policy: network input size does not match the normaliser");
  }
}

Eigen::VectorXd Policy::act_normalized(const Eigen::VectorXd& obs_n, ActMode mode,
                                       std::mt19937_64* rng) const {
  const Eigen::VectorXd out = net_.forward_one(obs_n);
  if (mode == ActMode::stochastic && rng == nullptr) {
    throw std::invalid_argument("Policy::act: stochastic mode requires an rng");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd a(kJointCount);
  if (kind_ == PolicyKind::gaussian) {
    if (mode == ActMode::deterministic) {
      a = out.head(kJointCount).array().tanh();
    } else {
      Eigen::MatrixXd xi(kJointCount, 1);
      for (int j = 0; j < kJointCount; ++j) xi(j, 0) = gauss(*rng);
      a = squashed_gaussian(out, xi).action.col(0);
    }
  } else {
    a = out.array().tanh();
    if (mode == ActMode::stochastic) {
      for (int j = 0; j < kJointCount; ++j) {
        a[j] = std::clamp(a[j] + exploration_noise_ * gauss(*rng), -1.0, 1.0);
      }
    }
  }
  return a;
}

Action Policy::act(const Observation& obs, ActMode mode, std::mt19937_64* rng) const {
  const Eigen::VectorXd a_n = act_normalized(normalizer_.apply(obs), mode, rng);
  // Saturated tanh gives exactly +/-1; the clamp guards the scaled product.
  return a_n.cwiseProduct(a_max_).cwiseMax(-a_max_).cwiseMin(a_max_);
}

bool Policy::operator==(const Policy& other) const {
  return net_ == other.net_ && kind_ == other.kind_ && normalizer_ == other.normalizer_ &&
         a_max_ == other.a_max_ && mode_ == other.mode_ &&
         exploration_noise_ == other.exploration_noise_;
}

}  // namespace drillboom::rl
