#include "drillboom/rl/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace drillboom::rl {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw std::runtime_error("checkpoint truncated");
  }
  return v;
}

double get_f64(std::istream& in) {
  double v = 0.0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw std::runtime_error("checkpoint truncated");
  }
  return v;
}

std::uint32_t activation_code(Activation a) {
  switch (a) {
    case Activation::relu: return 0;
    case Activation::gelu: return 1;
    case Activation::tanh: return 2;
  }
  return 0;
}

Activation activation_from_code(std::uint32_t c) {
  switch (c) {
    case 0: return Activation::relu;
    case 1: return Activation::gelu;
    case 2: return Activation::tanh;
    default: throw std::runtime_error("checkpoint: unknown activation code");
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const Policy& policy) {
  out.write(kCheckpointMagic, sizeof kCheckpointMagic);
  put_u32(out, kCheckpointVersion);
  put_u32(out, policy.kind() == PolicyKind::gaussian ? 0 : 1);
  put_u32(out, policy.mode().joint == JointRep::dh ? 0 : 1);
  put_u32(out, policy.mode().task == TaskRep::preview ? 0 : 1);
  const Mlp& net = policy.net();
  put_u32(out, activation_code(net.activation()));
  put_u32(out, static_cast<std::uint32_t>(net.layer_sizes().size()));
  for (int s : net.layer_sizes()) put_u32(out, static_cast<std::uint32_t>(s));
  for (int l = 0; l < net.layer_count(); ++l) {
    const Eigen::MatrixXd& w = net.weights()[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) put_f64(out, w(r, c));
    }
    const Eigen::VectorXd& b = net.biases()[l];
    for (Eigen::Index r = 0; r < b.size(); ++r) put_f64(out, b[r]);
  }
  const auto& norm = policy.normalizer();
  put_u32(out, static_cast<std::uint32_t>(norm.offset.size()));
  for (Eigen::Index i = 0; i < norm.offset.size(); ++i) put_f64(out, norm.offset[i]);
  for (Eigen::Index i = 0; i < norm.scale.size(); ++i) put_f64(out, norm.scale[i]);
  for (int i = 0; i < kJointCount; ++i) put_f64(out, policy.a_max()[i]);
  put_f64(out, policy.exploration_noise());
  if (!out) throw std::runtime_error("checkpoint: write failed");
}

Policy read_checkpoint(std::istream& in) {
  char magic[sizeof kCheckpointMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0) {
    throw std::runtime_error("checkpoint: bad magic tag");
  }
  const std::uint32_t version = get_u32(in);
  if (version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }
  const PolicyKind kind = get_u32(in) == 0 ? PolicyKind::gaussian : PolicyKind::deterministic;
  ObservationMode mode;
  mode.joint = get_u32(in) == 0 ? JointRep::dh : JointRep::cartesian;
  mode.task = get_u32(in) == 0 ? TaskRep::preview : TaskRep::non_preview;
  const Activation act = activation_from_code(get_u32(in));
  const std::uint32_t n_sizes = get_u32(in);
  if (n_sizes < 2 || n_sizes > 64) throw std::runtime_error("checkpoint: bad layer count");
  std::vector<int> sizes;
  for (std::uint32_t i = 0; i < n_sizes; ++i) {
    const std::uint32_t s = get_u32(in);
    if (s == 0 || s > (1u << 20)) throw std::runtime_error("checkpoint: bad layer size");
    sizes.push_back(static_cast<int>(s));
  }
  Mlp net = Mlp::zeros(sizes, act);
  for (int l = 0; l < net.layer_count(); ++l) {
    Eigen::MatrixXd& w = net.weights()[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = get_f64(in);
    }
    Eigen::VectorXd& b = net.biases()[l];
    for (Eigen::Index r = 0; r < b.size(); ++r) b[r] = get_f64(in);
  }
  const std::uint32_t m = get_u32(in);
  if (static_cast<int>(m) != sizes.front()) {
    throw std::runtime_error("checkpoint: normaliser size does not match the network input");
  }
  ObservationNormalizer norm{Eigen::VectorXd(m), Eigen::VectorXd(m)};
  for (std::uint32_t i = 0; i < m; ++i) norm.offset[i] = get_f64(in);
  for (std::uint32_t i = 0; i < m; ++i) norm.scale[i] = get_f64(in);
  Action a_max;
  for (int i = 0; i < kJointCount; ++i) a_max[i] = get_f64(in);
  const double noise = get_f64(in);
  return Policy(std::move(net), kind, std::move(norm), a_max, mode, noise);
}

void save_checkpoint(const std::string& path, const Policy& policy) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  write_checkpoint(out, policy);
}

Policy load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path);
  return read_checkpoint(in);
}

}  // namespace drillboom::rl
