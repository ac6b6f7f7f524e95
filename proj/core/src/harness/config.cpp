#include "drillboom/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "drillboom/csv.hpp"

namespace drillboom::harness {

namespace {

constexpr const char* kJointFields[] = {"kind", "theta", "alpha", "a",
                                        "d",    "q_min", "q_max", "rate_max"};

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

// Accepts plain numbers and [-][k*]pi[/n].
double parse_scalar(const std::string& text) {
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string::npos) return parse_number(text);
  std::string head = text.substr(0, pi_pos);
  std::string tail = text.substr(pi_pos + 2);
  double factor = 1.0;
  if (!head.empty() && head.front() == '-') {
    factor = -1.0;
    head.erase(0, 1);
  }
  if (!head.empty()) {
    if (head.back() != '*') throw std::invalid_argument("bad pi expression");
    head.pop_back();
    factor *= parse_number(head);
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("bad pi expression");
    const double denom = parse_number(tail.substr(1));
    if (denom == 0.0) throw std::invalid_argument("division by zero");
    factor /= denom;
  }
  return factor * std::numbers::pi;
}

class Reader {
 public:
  Reader(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string line = raw;
      if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail("unterminated section header", line_no);
        current = trim(line.substr(1, line.size() - 2));
        if (current != "boom" && current != "env" && current != "train" &&
            current != "experiment") {
          fail("unknown section [" + current + "]", line_no);
        }
        if (sections_.count(current) != 0) fail("duplicate section [" + current + "]", line_no);
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected 'key = value'", line_no);
      if (current.empty()) fail("key outside of a section", line_no);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail("empty key", line_no);
      if (value.empty()) fail("empty value for '" + key + "'", line_no);
      auto& sec = sections_[current];
      if (sec.count(key) != 0) fail("duplicate key '" + key + "' in [" + current + "]", line_no);
      sec[key] = Entry{value, line_no, false};
    }
  }

  bool has_section(const std::string& section) const { return sections_.count(section) != 0; }

  const Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  const Entry& require(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) fail("missing required key '" + key + "' in section [" + section + "]", 0);
    return *e;
  }

  double number(const Entry& e, const std::string& key) {
    try {
      const double v = parse_scalar(e.value);
      if (!std::isfinite(v)) throw std::invalid_argument("not finite");
      return v;
    } catch (const std::exception&) {
      fail("'" + key + "' expects a number, got '" + e.value + "'", e.line);
    }
  }

  long integer(const Entry& e, const std::string& key) {
    const double v = number(e, key);
    if (v != std::floor(v) || std::fabs(v) > 9.0e15) {
      fail("'" + key + "' expects an integer, got '" + e.value + "'", e.line);
    }
    return static_cast<long>(v);
  }

  std::vector<double> numbers(const Entry& e, const std::string& key, std::size_t n) {
    const auto toks = split_ws(e.value);
    if (n != 0 && toks.size() != n) {
      fail("'" + key + "' expects " + std::to_string(n) + " numbers", e.line);
    }
    std::vector<double> out;
    for (const auto& t : toks) out.push_back(number(Entry{t, e.line, true}, key));
    return out;
  }

  bool boolean(const Entry& e, const std::string& key) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail("'" + key + "' expects true or false, got '" + e.value + "'", e.line);
  }

  void opt_number(const std::string& sec, const std::string& key, double& out) {
    if (const Entry* e = find(sec, key)) out = number(*e, key);
  }
  template <class Int>
  void opt_integer(const std::string& sec, const std::string& key, Int& out) {
    if (const Entry* e = find(sec, key)) out = static_cast<Int>(integer(*e, key));
  }
  void opt_vec3(const std::string& sec, const std::string& key, Vec3& out) {
    if (const Entry* e = find(sec, key)) {
      const auto v = numbers(*e, key, 3);
      out = Vec3(v[0], v[1], v[2]);
    }
  }

  void reject_unused() const {
    for (const auto& [name, sec] : sections_) {
      for (const auto& [key, entry] : sec) {
        if (!entry.used) fail("unknown key '" + key + "' in section [" + name + "]", entry.line);
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg, int line) const {
    const std::string where = line > 0 ? source_ + ":" + std::to_string(line) + ": " : source_ + ": ";
    throw ConfigError(where + msg, line);
  }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

ObservationMode parse_mode(Reader& r, const Entry& e) {
  static const std::pair<const char*, int> names[] = {
      {"dh+preview", 1}, {"dh+non_preview", 2}, {"cartesian+preview", 3},
      {"cartesian+non_preview", 4}, {"1", 1}, {"2", 2}, {"3", 3}, {"4", 4}};
  for (const auto& [name, group] : names) {
    if (e.value == name) return ObservationMode::from_group(group);
  }
  r.fail("unknown obs_mode '" + e.value +
             "' (use dh+preview, dh+non_preview, cartesian+preview, cartesian+non_preview or 1-4)",
         e.line);
}

std::string mode_name(const ObservationMode& m) {
  return std::string(to_string(m.joint)) + "+" + to_string(m.task);
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + format_number(xs[i]);
  return s;
}

std::string vec3(const Vec3& v) { return join({v.x(), v.y(), v.z()}); }

}  // namespace

ExperimentSpec default_spec() {
  ExperimentSpec spec;
  spec.boom = default_boom();
  return spec;
}

ExperimentSpec parse_config(std::istream& in, const std::string& source) {
  Reader r(in, source);
  ExperimentSpec spec = default_spec();
  spec.config_path = source;

  if (!r.has_section("boom")) r.fail("missing required section [boom]", 0);
  if (const Entry* e = r.find("boom", "name")) spec.boom.name = e->value;
  r.opt_number("boom", "drill_depth", spec.boom.drill_depth_default);
  for (int j = 0; j < kJointCount; ++j) {
    const std::string p = "joint" + std::to_string(j + 1) + ".";
    JointSpec& js = spec.boom.joints[j];
    const Entry& kind = r.require("boom", p + "kind");
    if (kind.value == "revolute") {
      js.kind = JointKind::revolute;
    } else if (kind.value == "prismatic") {
      js.kind = JointKind::prismatic;
    } else {
      r.fail("'" + p + "kind' must be revolute or prismatic, got '" + kind.value + "'", kind.line);
    }
    auto num = [&](const char* f) { return r.number(r.require("boom", p + f), p + f); };
    js.fixed = DhParameters{num("theta"), num("alpha"), num("a"), num("d")};
    js.q_min = num("q_min");
    js.q_max = num("q_max");
    js.rate_max = num("rate_max");
  }

  EnvConfig& env = spec.env;
  r.opt_number("env", "depth", env.depth);
  r.opt_integer("env", "horizon", env.horizon);
  r.opt_number("env", "f", env.control_hz);
  r.opt_vec3("env", "workspace_lo", env.workspace.lo);
  r.opt_vec3("env", "workspace_hi", env.workspace.hi);
  r.opt_vec3("env", "face_normal", env.workspace.face_normal);
  r.opt_number("env", "cone", env.cone_half_angle);
  r.opt_number("env", "noise_revolute", env.noise_revolute);
  r.opt_number("env", "noise_prismatic", env.noise_prismatic);
  if (const Entry* e = r.find("env", "obs_mode")) env.mode = parse_mode(r, *e);
  if (const Entry* e = r.find("env", "omega")) {
    const auto w = r.numbers(*e, "omega", 3);
    env.omega = {w[0], w[1], w[2]};
  }
  if (const Entry* e = r.find("env", "raw_action_norm")) {
    env.raw_action_norm = r.boolean(*e, "raw_action_norm");
  }
  r.opt_integer("env", "max_reset_attempts", env.max_reset_attempts);

  rl::TrainConfig& t = spec.train;
  if (const Entry* e = r.find("train", "algo")) {
    try {
      t.algo = rl::algorithm_from_string(e->value);
    } catch (const std::exception&) {
      r.fail("unknown algo '" + e->value + "' (use sac or ddpg)", e->line);
    }
  }
  r.opt_number("train", "gamma", t.gamma);
  r.opt_number("train", "lr", t.lr);
  r.opt_integer("train", "batch", t.batch_size);
  r.opt_integer("train", "buffer", t.buffer_capacity);
  r.opt_number("train", "tau", t.tau);
  r.opt_integer("train", "iterations", t.total_iterations);
  r.opt_integer("train", "warmup", t.warmup_steps);
  r.opt_number("train", "entropy_target", t.entropy_target);
  r.opt_number("train", "initial_alpha", t.initial_alpha);
  r.opt_number("train", "reward_scale", t.reward_scale);
  r.opt_integer("train", "env_steps_per_update", t.env_steps_per_update);
  r.opt_number("train", "exploration_noise", t.exploration_noise);
  if (const Entry* e = r.find("train", "hidden")) {
    t.hidden_sizes.clear();
    for (double h : r.numbers(*e, "hidden", 0)) {
      if (h != std::floor(h) || h < 1) r.fail("'hidden' expects positive integers", e->line);
      t.hidden_sizes.push_back(static_cast<int>(h));
    }
  }
  if (const Entry* e = r.find("train", "activation")) {
    try {
      t.activation = rl::activation_from_string(e->value);
    } catch (const std::exception&) {
      r.fail("unknown activation '" + e->value + "' (use relu, gelu or tanh)", e->line);
    }
  }
  r.opt_integer("train", "eval_interval", t.eval_interval);
  r.opt_integer("train", "eval_episodes", t.eval_episodes);
  r.opt_integer("train", "seed", t.seed);

  if (const Entry* e = r.find("experiment", "seeds")) {
    spec.seeds.clear();
    for (double s : r.numbers(*e, "seeds", 0)) {
      if (s != std::floor(s) || s < 0) r.fail("'seeds' expects non-negative integers", e->line);
      spec.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  r.opt_integer("experiment", "n_eval_episodes", spec.n_eval_episodes);
  if (const Entry* e = r.find("experiment", "output_dir")) spec.output_dir = e->value;

  r.reject_unused();
  if (auto errors = validate(spec); !errors.empty()) {
    std::string msg = source + ": invalid configuration:";
    for (const auto& m : errors) msg += "\n  " + m;
    throw ConfigError(msg);
  }
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, path);
}

void write_config(std::ostream& out, const ExperimentSpec& spec) {
  out << "[boom]\n";
  out << "name = " << (spec.boom.name.empty() ? "unnamed" : spec.boom.name) << "\n";
  out << "drill_depth = " << format_number(spec.boom.drill_depth_default) << "\n";
  for (int j = 0; j < kJointCount; ++j) {
    const JointSpec& js = spec.boom.joints[j];
    const std::string p = "joint" + std::to_string(j + 1) + ".";
    out << p << "kind = " << to_string(js.kind) << "\n";
    out << p << "theta = " << format_number(js.fixed.theta) << "\n";
    out << p << "alpha = " << format_number(js.fixed.alpha) << "\n";
    out << p << "a = " << format_number(js.fixed.a) << "\n";
    out << p << "d = " << format_number(js.fixed.d) << "\n";
    out << p << "q_min = " << format_number(js.q_min) << "\n";
    out << p << "q_max = " << format_number(js.q_max) << "\n";
    out << p << "rate_max = " << format_number(js.rate_max) << "\n";
  }

  const EnvConfig& env = spec.env;
  out << "\n[env]\n";
  out << "depth = " << format_number(env.depth) << "\n";
  out << "horizon = " << env.horizon << "\n";
  out << "f = " << format_number(env.control_hz) << "\n";
  out << "workspace_lo = " << vec3(env.workspace.lo) << "\n";
  out << "workspace_hi = " << vec3(env.workspace.hi) << "\n";
  out << "face_normal = " << vec3(env.workspace.face_normal) << "\n";
  out << "cone = " << format_number(env.cone_half_angle) << "\n";
  out << "noise_revolute = " << format_number(env.noise_revolute) << "\n";
  out << "noise_prismatic = " << format_number(env.noise_prismatic) << "\n";
  out << "obs_mode = " << mode_name(env.mode) << "\n";
  out << "omega = " << join({env.omega[0], env.omega[1], env.omega[2]}) << "\n";
  out << "raw_action_norm = " << (env.raw_action_norm ? "true" : "false") << "\n";
  out << "max_reset_attempts = " << env.max_reset_attempts << "\n";

  const rl::TrainConfig& t = spec.train;
  out << "\n[train]\n";
  out << "algo = " << rl::to_string(t.algo) << "\n";
  out << "gamma = " << format_number(t.gamma) << "\n";
  out << "lr = " << format_number(t.lr) << "\n";
  out << "batch = " << t.batch_size << "\n";
  out << "buffer = " << t.buffer_capacity << "\n";
  out << "tau = " << format_number(t.tau) << "\n";
  out << "iterations = " << t.total_iterations << "\n";
  out << "warmup = " << t.warmup_steps << "\n";
  out << "entropy_target = " << format_number(t.entropy_target) << "\n";
  out << "initial_alpha = " << format_number(t.initial_alpha) << "\n";
  out << "reward_scale = " << format_number(t.reward_scale) << "\n";
  out << "env_steps_per_update = " << t.env_steps_per_update << "\n";
  out << "exploration_noise = " << format_number(t.exploration_noise) << "\n";
  out << "hidden =";
  for (int h : t.hidden_sizes) out << " " << h;
  out << "\n";
  out << "activation = " << rl::to_string(t.activation) << "\n";
  out << "eval_interval = " << t.eval_interval << "\n";
  out << "eval_episodes = " << t.eval_episodes << "\n";
  out << "seed = " << t.seed << "\n";

  out << "\n[experiment]\n";
  out << "seeds =";
  for (auto s : spec.seeds) out << " " << s;
  out << "\n";
  out << "n_eval_episodes = " << spec.n_eval_episodes << "\n";
  out << "output_dir = " << spec.output_dir << "\n";
}

void save_config(const std::string& path, const ExperimentSpec& spec) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write config file " + path);
  write_config(out, spec);
}

std::vector<std::string> validate(const ExperimentSpec& spec) {
  std::vector<std::string> errors = validate(spec.boom);
  const EnvConfig& env = spec.env;
  if (!(env.depth > 0.0)) errors.push_back("env.depth must be positive");
  if (env.horizon <= 0) errors.push_back("env.horizon must be positive");
  if (!(env.control_hz > 0.0)) errors.push_back("env.f must be positive");
  if (!(env.workspace.lo.array() < env.workspace.hi.array()).all()) {
    errors.push_back("env.workspace_lo must be below env.workspace_hi on every axis");
  }
  if (!(env.workspace.face_normal.norm() > 0.0)) errors.push_back("env.face_normal must be non-zero");
  if (!(env.cone_half_angle >= 0.0 && env.cone_half_angle <= std::numbers::pi)) {
    errors.push_back("env.cone must lie in [0, pi]");
  }
  if (!(env.noise_revolute >= 0.0) || !(env.noise_prismatic >= 0.0)) {
    errors.push_back("env noise amplitudes must be non-negative");
  }
  for (double w : env.omega) {
    if (!(w >= 0.0)) errors.push_back("env.omega entries must be non-negative");
  }
  if (env.max_reset_attempts <= 0) errors.push_back("env.max_reset_attempts must be positive");
  for (const auto& m : rl::validate(spec.train)) errors.push_back("train: " + m);
  if (spec.seeds.empty()) errors.push_back("experiment.seeds must not be empty");
  if (spec.n_eval_episodes <= 0) errors.push_back("experiment.n_eval_episodes must be positive");
  return errors;
}

}  // namespace drillboom::harness
