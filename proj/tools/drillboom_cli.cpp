// Command-line entry point: drillboom <train|eval|ablate|compare|bench|validate-config>.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 training divergence.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drillboom/harness/config.hpp"
#include "drillboom/harness/experiments.hpp"

namespace {

constexpr int kExitUser = 2;
constexpr int kExitDivergence = 3;

struct Options {
  std::string config;
  std::string out;
  std::vector<std::uint64_t> seeds;
  std::string checkpoint;
  long iterations = -1;
  long calls = 100'000;
  int trials = drillboom::harness::kCompareTrials;
};

drillboom::harness::ExperimentSpec resolve(const Options& opt) {
  using namespace drillboom::harness;
  ExperimentSpec spec = opt.config.empty() ? default_spec() : load_config(opt.config);
  if (!opt.seeds.empty()) spec.seeds = opt.seeds;
  if (opt.iterations >= 0) spec.train.total_iterations = opt.iterations;
  // Output directory precedence: --out, then DRILLBOOM_OUT, then the config.
  if (!opt.out.empty()) {
    spec.output_dir = opt.out;
  } else if (const char* env = std::getenv("DRILLBOOM_OUT"); env != nullptr && *env != '\0') {
    spec.output_dir = env;
  }
  if (auto errors = validate(spec); !errors.empty()) throw ConfigError(errors.front());
  return spec;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Experiment config (INI)");
  cmd->add_option("--out", opt.out, "Output directory (overrides DRILLBOOM_OUT)");
  cmd->add_option("--seed,--seeds", opt.seeds, "Seed list, overrides [experiment] seeds")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  using namespace drillboom::harness;
  CLI::App app{"Drill-boom hole-seeking toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto* train = app.add_subcommand("train", "Train one policy per seed");
  add_common(train, opt);
  train->add_option("--iterations", opt.iterations, "Override [train] iterations");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  add_common(eval, opt);
  eval->add_option("--checkpoint", opt.checkpoint, "Policy checkpoint")->required();

  auto* ablate = app.add_subcommand("ablate", "Train and compare all four state representations");
  add_common(ablate, opt);
  ablate->add_option("--iterations", opt.iterations, "Override [train] iterations");

  auto* compare = app.add_subcommand("compare", "Integrated vs hierarchical execution steps");
  add_common(compare, opt);
  compare->add_option("--checkpoint", opt.checkpoint, "Policy checkpoint")->required();
  compare->add_option("--trials", opt.trials, "Number of paired trials")->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Policy forward-pass latency");
  add_common(bench, opt);
  bench->add_option("--checkpoint", opt.checkpoint, "Policy checkpoint")->required();
  bench->add_option("--calls", opt.calls, "Timed forward passes")->check(CLI::PositiveNumber);
  bench->add_option("--trials", opt.trials, "Trials used for the mean step count")
      ->check(CLI::NonNegativeNumber);

  auto* validate_cmd = app.add_subcommand("validate-config", "Parse and validate a config");
  add_common(validate_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUser;
  }

  try {
    const ExperimentSpec spec = resolve(opt);
    const std::string& out = spec.output_dir;
    if (train->parsed()) {
      cmd_train(spec, out + "/train", &std::cerr);
    } else if (eval->parsed()) {
      cmd_eval(spec, opt.checkpoint, out + "/eval", &std::cout);
    } else if (ablate->parsed()) {
      cmd_ablate(spec, out + "/ablate", &std::cerr);
    } else if (compare->parsed()) {
      cmd_compare(spec, opt.checkpoint, out + "/compare", opt.trials, &std::cout);
    } else if (bench->parsed()) {
      cmd_bench(spec, opt.checkpoint, out + "/bench", opt.calls, opt.trials, &std::cout);
    } else if (validate_cmd->parsed()) {
      std::cout << (opt.config.empty() ? std::string("built-in defaults") : opt.config)
                << ": ok\n";
    }
  } catch (const drillboom::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
