#include "drillboom/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "drillboom/csv.hpp"
#include "drillboom/rl/checkpoint.hpp"

namespace drillboom::harness {

namespace fs = std::filesystem;

namespace {

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double mean_of(const std::vector<double>& xs) {
  double m = 0.0, s = 0.0;
  mean_std(xs, m, s);
  return m;
}

std::ofstream open_out(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

rl::Policy load_policy(const std::string& checkpoint) {
  if (!fs::exists(checkpoint)) throw ConfigError("checkpoint not found: " + checkpoint);
  try {
    return rl::load_checkpoint(checkpoint);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot load checkpoint: ") + e.what());
  }
}

// The policy dictates the observation layout, whatever the config says.
ExperimentSpec spec_for_policy(const ExperimentSpec& spec, const rl::Policy& policy,
                               std::ostream* log) {
  ExperimentSpec s = spec;
  if (!(s.env.mode == policy.mode())) {
    if (log) {
      *log << "note: using the checkpoint's observation mode " << policy.mode().label()
           << " instead of " << s.env.mode.label() << "\n";
    }
    s.env.mode = policy.mode();
  }
  if (policy.net().layer_sizes().front() != s.env.mode.dimension()) {
    throw ConfigError("checkpoint input size does not match its observation mode");
  }
  return s;
}

Controller deterministic_controller(const rl::Policy& policy) {
  return [&policy](const Observation& obs) { return policy.act(obs, rl::ActMode::deterministic); };
}

std::vector<BandPoint> make_band(const std::vector<SeedRun>& runs) {
  std::vector<BandPoint> band;
  if (runs.empty()) return band;
  const std::size_t n_points = runs.front().result.curve.size();
  for (std::size_t i = 0; i < n_points; ++i) {
    std::vector<double> ret, ec, ep;
    for (const auto& r : runs) {
      const auto& p = r.result.curve.at(i);
      ret.push_back(p.eval_return_mean);
      ec.push_back(p.eps_current);
      ep.push_back(p.eps_preview);
    }
    BandPoint b;
    b.iteration = runs.front().result.curve[i].iteration;
    b.n = static_cast<int>(runs.size());
    b.return_mean = mean_of(ret);
    b.return_ci = ci95_half_width(ret);
    b.eps_current_mean = mean_of(ec);
    b.eps_current_ci = ci95_half_width(ec);
    b.eps_preview_mean = mean_of(ep);
    b.eps_preview_ci = ci95_half_width(ep);
    band.push_back(b);
  }
  return band;
}

void write_band_csv(std::ostream& out, const std::vector<BandPoint>& band) {
  CsvWriter csv(out, {"iteration", "n_seeds", "return_mean", "return_ci95", "eps_current_mean",
                      "eps_current_ci95", "eps_preview_mean", "eps_preview_ci95"});
  for (const auto& b : band) {
    csv.row({format_number(static_cast<long long>(b.iteration)),
             format_number(static_cast<long long>(b.n)), format_number(b.return_mean),
             format_number(b.return_ci), format_number(b.eps_current_mean),
             format_number(b.eps_current_ci), format_number(b.eps_preview_mean),
             format_number(b.eps_preview_ci)});
  }
}

void write_final_csv(std::ostream& out, const std::vector<SeedRun>& runs) {
  CsvWriter csv(out, {"seed", "untrained_eps_current", "untrained_eps_preview", "return_mean",
                      "eps_current", "eps_current_std", "eps_preview", "eps_preview_std"});
  for (const auto& r : runs) {
    csv.row({std::to_string(r.seed), format_number(r.untrained.eps_current_mean),
             format_number(r.untrained.eps_preview_mean), format_number(r.final_eval.return_mean),
             format_number(r.final_eval.eps_current_mean),
             format_number(r.final_eval.eps_current_std),
             format_number(r.final_eval.eps_preview_mean),
             format_number(r.final_eval.eps_preview_std)});
  }
}

std::string train_report(const ExperimentSpec& spec, const TrainSummary& summary) {
  std::ostringstream s;
  s << "Training: " << rl::to_string(spec.train.algo) << ", " << spec.env.mode.label() << ", "
    << spec.train.total_iterations << " iterations, " << summary.runs.size() << " seed(s)\n\n";
  s << "seed   untrained eps_current/eps_preview [m]   final eps_current/eps_preview [m]\n";
  std::vector<double> ec, ep;
  for (const auto& r : summary.runs) {
    s << r.seed << "   " << fixed(r.untrained.eps_current_mean, 4) << " / "
      << fixed(r.untrained.eps_preview_mean, 4) << "   " << fixed(r.final_eval.eps_current_mean, 4)
      << " / " << fixed(r.final_eval.eps_preview_mean, 4) << "\n";
    ec.push_back(r.final_eval.eps_current_mean);
    ep.push_back(r.final_eval.eps_preview_mean);
  }
  s << "\nfinal eps_current " << fixed(mean_of(ec) * 1000.0, 2) << " +/- "
    << fixed(ci95_half_width(ec) * 1000.0, 2) << " mm, eps_preview "
    << fixed(mean_of(ep) * 1000.0, 2) << " +/- " << fixed(ci95_half_width(ep) * 1000.0, 2)
    << " mm (mean +/- 95% half-width over seeds, " << spec.n_eval_episodes
    << " episodes each)\n";
  return s.str();
}

}  // namespace

double ci95_half_width(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0, sd = 0.0;
  mean_std(values, mean, sd);
  const boost::math::students_t dist(static_cast<double>(values.size() - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return t * sd / std::sqrt(static_cast<double>(values.size()));
}

double percentage_reduction(double baseline, double ours) {
  if (baseline == 0.0) throw InvalidParameter("percentage_reduction: zero baseline");
  return (baseline - ours) / baseline * 100.0;
}

rl::EnvFactory env_factory(const ExperimentSpec& spec) {
  return [boom = spec.boom, env = spec.env] { return HoleSeekingEnv(boom, env); };
}

TrainSummary cmd_train(const ExperimentSpec& spec, const std::string& out_dir, std::ostream* log) {
  if (auto errors = validate(spec); !errors.empty()) throw ConfigError(errors.front());
  const fs::path root(out_dir);
  fs::create_directories(root);
  {
    auto out = open_out(root / "config.ini");
    write_config(out, spec);
  }
  const rl::EnvFactory make_env = env_factory(spec);
  const auto eval_seeds = rl::evaluation_seeds(spec.n_eval_episodes);

  TrainSummary summary;
  for (std::uint64_t seed : spec.seeds) {
    rl::TrainConfig cfg = spec.train;
    cfg.seed = seed;
    const fs::path dir = root / ("seed_" + std::to_string(seed));
    fs::create_directories(dir);
    if (log) *log << "[train] seed " << seed << ": " << cfg.total_iterations << " iterations\n";

    rl::TrainCallbacks callbacks;
    callbacks.on_checkpoint = [&](const rl::Policy&, const rl::CurvePoint& p) {
      if (log) {
        *log << "[train] seed " << seed << " it " << p.iteration << " return "
             << fixed(p.eval_return_mean, 2) << " eps_current " << fixed(p.eps_current, 4)
             << " eps_preview " << fixed(p.eps_preview, 4) << std::endl;
      }
    };

    SeedRun run;
    run.seed = seed;
    try {
      run.result = rl::train(make_env, cfg, callbacks);
    } catch (const rl::TrainingDiverged& e) {
      rl::save_checkpoint((dir / "policy.bin").string(), e.last_good());
      throw;
    }
    rl::save_checkpoint((dir / "policy.bin").string(), run.result.policy);
    {
      auto out = open_out(dir / "curve.csv");
      rl::write_curve_csv(out, run.result.curve);
    }
    run.untrained = rl::evaluate_policy(rl::initial_policy(make_env, cfg), make_env, eval_seeds);
    run.final_eval = rl::evaluate_policy(run.result.policy, make_env, eval_seeds);
    {
      auto out = open_out(dir / "eval.csv");
      rl::write_episode_csv(out, run.final_eval);
    }
    if (log) {
      *log << "[train] seed " << seed << " final eps_current "
           << fixed(run.final_eval.eps_current_mean, 4) << " eps_preview "
           << fixed(run.final_eval.eps_preview_mean, 4) << " (untrained "
           << fixed(run.untrained.eps_current_mean, 4) << " / "
           << fixed(run.untrained.eps_preview_mean, 4) << ")\n";
    }
    summary.runs.push_back(std::move(run));
  }

  summary.band = make_band(summary.runs);
  {
    auto out = open_out(root / "summary.csv");
    write_band_csv(out, summary.band);
  }
  {
    auto out = open_out(root / "final.csv");
    write_final_csv(out, summary.runs);
  }
  write_text(root / "report.txt", train_report(spec, summary));
  return summary;
}

rl::EvaluationReport cmd_eval(const ExperimentSpec& spec, const std::string& checkpoint,
                              const std::string& out_dir, std::ostream* log) {
  const rl::Policy policy = load_policy(checkpoint);
  const ExperimentSpec s = spec_for_policy(spec, policy, log);
  const auto seeds = rl::evaluation_seeds(s.n_eval_episodes);
  const rl::EvaluationReport report = rl::evaluate_policy(policy, env_factory(s), seeds);

  const fs::path root(out_dir);
  {
    auto out = open_out(root / "episodes.csv");
    rl::write_episode_csv(out, report);
  }
  {
    auto out = open_out(root / "summary.csv");
    CsvWriter csv(out, {"n_episodes", "return_mean", "return_std", "eps_current_mean",
                        "eps_current_std", "eps_preview_mean", "eps_preview_std"});
    csv.row({std::to_string(report.episodes.size()), format_number(report.return_mean),
             format_number(report.return_std), format_number(report.eps_current_mean),
             format_number(report.eps_current_std), format_number(report.eps_preview_mean),
             format_number(report.eps_preview_std)});
  }
  std::ostringstream text;
  text << "Evaluation of " << checkpoint << " (" << s.env.mode.label() << ", "
       << report.episodes.size() << " episodes)\n"
       << "eps_current " << fixed(report.eps_current_mean * 1000.0, 2) << " +/- "
       << fixed(report.eps_current_std * 1000.0, 2) << " mm\n"
       << "eps_preview " << fixed(report.eps_preview_mean * 1000.0, 2) << " +/- "
       << fixed(report.eps_preview_std * 1000.0, 2) << " mm\n"
       << "return " << fixed(report.return_mean, 2) << " +/- " << fixed(report.return_std, 2)
       << "\n";
  write_text(root / "report.txt", text.str());
  if (log) *log << text.str();
  return report;
}

AblationReport make_ablation_report(const std::array<std::vector<double>, 4>& eps_current,
                                    const std::array<std::vector<double>, 4>& eps_preview) {
  AblationReport report;
  for (int g = 0; g < 4; ++g) {
    GroupResult& r = report.groups[g];
    r.group = g + 1;
    r.label = ObservationMode::from_group(g + 1).label();
    r.eps_current = eps_current[g];
    r.eps_preview = eps_preview[g];
    mean_std(r.eps_current, r.eps_current_mean, r.eps_current_std);
    mean_std(r.eps_preview, r.eps_preview_mean, r.eps_preview_std);
  }
  struct Pair {
    const char* name;
    int baseline, improved;
  };
  static constexpr Pair pairs[] = {
      {"preview vs non-preview (DH joints)", 2, 1},
      {"DH vs Cartesian (preview task)", 3, 1},
      {"preview vs non-preview (Cartesian joints)", 4, 3},
      {"DH vs Cartesian (non-preview task)", 4, 2},
  };
  for (const auto& p : pairs) {
    const GroupResult& base = report.groups[p.baseline - 1];
    const GroupResult& ours = report.groups[p.improved - 1];
    report.reductions.push_back(
        {p.name, p.baseline, p.improved,
         percentage_reduction(base.eps_current_mean, ours.eps_current_mean),
         percentage_reduction(base.eps_preview_mean, ours.eps_preview_mean)});
  }
  return report;
}

AblationReport cmd_ablate(const ExperimentSpec& spec, const std::string& out_dir,
                          std::ostream* log) {
  const fs::path root(out_dir);
  std::array<std::vector<double>, 4> ec, ep;
  for (int g = 1; g <= 4; ++g) {
    ExperimentSpec s = spec;
    s.env.mode = ObservationMode::from_group(g);
    if (log) *log << "[ablate] group " << g << " (" << s.env.mode.label() << ")\n";
    const TrainSummary t = cmd_train(s, (root / ("group" + std::to_string(g))).string(), log);
    for (const auto& r : t.runs) {
      ec[g - 1].push_back(r.final_eval.eps_current_mean);
      ep[g - 1].push_back(r.final_eval.eps_preview_mean);
    }
  }
  const AblationReport report = make_ablation_report(ec, ep);

  {
    auto out = open_out(root / "ablation.csv");
    CsvWriter csv(out, {"group", "label", "n_seeds", "eps_current_mean", "eps_current_std",
                        "eps_preview_mean", "eps_preview_std"});
    for (const auto& g : report.groups) {
      csv.row({std::to_string(g.group), g.label, std::to_string(g.eps_current.size()),
               format_number(g.eps_current_mean), format_number(g.eps_current_std),
               format_number(g.eps_preview_mean), format_number(g.eps_preview_std)});
    }
  }
  {
    auto out = open_out(root / "reductions.csv");
    CsvWriter csv(out, {"comparison", "baseline_group", "improved_group", "eps_current_pct",
                        "eps_preview_pct"});
    for (const auto& r : report.reductions) {
      csv.row({r.comparison, std::to_string(r.baseline_group), std::to_string(r.improved_group),
               format_number(r.eps_current_pct), format_number(r.eps_preview_pct)});
    }
  }
  std::ostringstream text;
  text << "State representation ablation (" << spec.seeds.size() << " seed(s) per group)\n\n"
       << "Group  Representation          eps_current [mm]     eps_preview [mm]\n";
  for (const auto& g : report.groups) {
    text << "  " << g.group << "    " << g.label << std::string(24 - g.label.size(), ' ')
         << fixed(g.eps_current_mean * 1000.0, 2) << " +/- " << fixed(g.eps_current_std * 1000.0, 2)
         << "    " << fixed(g.eps_preview_mean * 1000.0, 2) << " +/- "
         << fixed(g.eps_preview_std * 1000.0, 2) << "\n";
  }
  text << "\nReductions (baseline - ours) / baseline:\n";
  for (const auto& r : report.reductions) {
    text << "  " << r.comparison << " [G" << r.baseline_group << " -> G" << r.improved_group
         << "]: eps_current " << fixed(r.eps_current_pct, 1) << "%, eps_preview "
         << fixed(r.eps_preview_pct, 1) << "%\n";
  }
  write_text(root / "report.txt", text.str());
  if (log) *log << text.str();
  return report;
}

std::vector<std::uint64_t> compare_seeds(int n) { return rl::evaluation_seeds(n, kCompareSeedBase); }

ComparisonSummary cmd_compare(const ExperimentSpec& spec, const std::string& checkpoint,
                              const std::string& out_dir, int trials, std::ostream* log) {
  const rl::Policy policy = load_policy(checkpoint);
  const ExperimentSpec s = spec_for_policy(spec, policy, log);
  HoleSeekingEnv env(s.boom, s.env);
  const auto seeds = compare_seeds(trials);
  const ComparisonSummary summary = compare_methods(deterministic_controller(policy), env, seeds);

  const fs::path root(out_dir);
  {
    auto out = open_out(root / "compare.csv");
    write_comparison_csv(out, summary);
  }
  {
    auto out = open_out(root / "compare_summary.csv");
    write_comparison_summary_csv(out, summary);
  }
  std::ostringstream text;
  text << "Execution steps over " << summary.trials.size() << " paired trials ("
       << summary.n_excluded << " excluded for IK failure)\n"
       << "  integrated   " << fixed(summary.integrated_mean, 3) << " +/- "
       << fixed(summary.integrated_std, 3) << "\n"
       << "  hierarchical " << fixed(summary.hierarchical_mean, 3) << " +/- "
       << fixed(summary.hierarchical_std, 3) << "\n"
       << "  ratio        " << fixed(summary.ratio, 3) << "\n";
  write_text(root / "report.txt", text.str());
  if (log) *log << text.str();
  return summary;
}

BenchReport cmd_bench(const ExperimentSpec& spec, const std::string& checkpoint,
                      const std::string& out_dir, long calls, int step_trials,
                      std::ostream* log) {
  if (calls < 1) throw ConfigError("bench needs at least one call");
  const rl::Policy policy = load_policy(checkpoint);
  const ExperimentSpec s = spec_for_policy(spec, policy, log);
  HoleSeekingEnv env(s.boom, s.env);

  std::vector<Observation> inputs;
  for (std::uint64_t seed : rl::evaluation_seeds(16)) inputs.push_back(env.reset(seed));

  using clock = std::chrono::steady_clock;
  // Keeps the optimiser from discarding the timed calls.
  volatile double sink = 0.0;
  for (long i = 0; i < std::min(calls, 1000L); ++i) {
    sink = sink + policy.act(inputs[i % inputs.size()], rl::ActMode::deterministic)[0];
  }
  std::vector<double> ms(static_cast<std::size_t>(calls));
  for (long i = 0; i < calls; ++i) {
    const auto t0 = clock::now();
    const Action a = policy.act(inputs[i % inputs.size()], rl::ActMode::deterministic);
    const auto t1 = clock::now();
    sink = sink + a[0];
    ms[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }

  BenchReport report;
  report.calls = calls;
  double total = 0.0;
  for (double v : ms) total += v;
  report.mean_ms = total / static_cast<double>(calls);
  std::sort(ms.begin(), ms.end());
  auto pct = [&](double p) {
    const auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(calls))) - 1;
    return ms[std::min(idx, ms.size() - 1)];
  };
  report.p50_ms = pct(0.50);
  report.p99_ms = pct(0.99);

  if (step_trials > 0) {
    const auto seeds = compare_seeds(step_trials);
    const ComparisonSummary steps = compare_methods(deterministic_controller(policy), env, seeds);
    report.mean_integrated_steps = steps.integrated_mean;
  }
  report.projected_total_ms = report.mean_ms * report.mean_integrated_steps;

  const fs::path root(out_dir);
  {
    auto out = open_out(root / "bench.csv");
    CsvWriter csv(out, {"calls", "mean_ms", "p50_ms", "p99_ms", "mean_integrated_steps",
                        "projected_total_ms"});
    csv.row({format_number(static_cast<long long>(report.calls)), format_number(report.mean_ms),
             format_number(report.p50_ms), format_number(report.p99_ms),
             format_number(report.mean_integrated_steps),
             format_number(report.projected_total_ms)});
  }
  std::ostringstream text;
  text << "Policy forward pass over " << report.calls << " calls\n"
       << "  mean " << fixed(report.mean_ms, 4) << " ms, p50 " << fixed(report.p50_ms, 4)
       << " ms, p99 " << fixed(report.p99_ms, 4) << " ms\n"
       << "  mean integrated steps " << fixed(report.mean_integrated_steps, 3) << " -> projected "
       << "decision total " << fixed(report.projected_total_ms, 3) << " ms\n";
  write_text(root / "report.txt", text.str());
  if (log) *log << text.str();
  return report;
}

}  // namespace drillboom::harness
