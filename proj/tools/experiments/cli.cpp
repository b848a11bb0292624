#include "experiments/cli.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "abstain/harness.hpp"
#include "abstain/regret.hpp"
#include "experiments/grid.hpp"
#include "experiments/instances.hpp"
#include "experiments/results_csv.hpp"

namespace abstain::experiments {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CommonOptions {
  std::string setting;
  std::string instance = "mu_dagger";
  std::vector<std::string> algos;
  std::uint64_t horizon = 10000;
  std::uint64_t trials = 200;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string checkpoints;
  std::size_t checkpoint_count = 20;
  std::string out;
  std::string config;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_horizon) {
  cmd.add_option("--setting", o.setting, "Abstention setting: rg (fixed regret) or rw (fixed reward)")
      ->required()
      ->check(CLI::IsMember({"rg", "rw"}));
  cmd.add_option("--instance", o.instance, "Instance spec (see `instances list`)");
  cmd.add_option("--algo", o.algos, "Algorithms, comma separated: les-ts, kl-ucb-pp, frg-tswa, frw-tswa, frw-ucbwa")
      ->required()
      ->delimiter(',');
  if (with_horizon) cmd.add_option("--horizon", o.horizon, "Horizon T")->check(CLI::PositiveNumber);
  cmd.add_option("--trials", o.trials, "Independent trials per configuration")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", o.seed, "Master seed");
  cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores); never changes results");
  if (with_horizon) {
    cmd.add_option("--checkpoints", o.checkpoints, "Comma-separated checkpoint times ending at T");
    cmd.add_option("--checkpoint-count", o.checkpoint_count, "Size of the default geometric checkpoint grid")
        ->check(CLI::PositiveNumber);
  }
  cmd.add_option("--out", o.out, "Output CSV path ('-' for stdout); relative paths resolve under $" +
                                     std::string(kOutputDirEnv) + " when set");
  cmd.add_option("--config", o.config, "Read option values from a key = value file; flags override it");
}

AbstentionSetting make_setting(const std::string& name, double c) {
  try {
    if (name == "rg") return FixedRegret{c};
    return FixedReward{c};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<PolicyKind> parse_algos(const std::vector<std::string>& names) {
  std::vector<PolicyKind> out;
  for (const auto& name : names) {
    try {
      out.push_back(parse_policy_kind(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct Instance {
  std::string id;
  BanditInstance instance;
};

Instance resolve_instance(const std::string& text) {
  try {
    auto spec = parse_instance_spec(text);
    return {spec.id, materialize(spec)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::uint64_t> resolve_checkpoints(const CommonOptions& o, std::uint64_t horizon) {
  if (o.checkpoints.empty()) return default_checkpoints(horizon, o.checkpoint_count);
  try {
    return parse_time_list(o.checkpoints);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

class CsvSink {
 public:
  CsvSink(const std::string& requested, const std::string& command, std::ostream& stdout_stream) {
    namespace fs = std::filesystem;
    const char* env_dir = std::getenv(kOutputDirEnv);
    std::optional<fs::path> path;
    if (requested == "-") {
    } else if (!requested.empty()) {
      path = fs::path(requested);
      if (path->is_relative() && env_dir && *env_dir) path = fs::path(env_dir) / *path;
    } else if (env_dir && *env_dir) {
      path = fs::path(env_dir) / (command + ".csv");
    }
    if (!path) {
      stream_ = &stdout_stream;
      return;
    }
    if (path->has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path->parent_path(), ec);
    }
    file_.open(*path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot open '" + path->string() + "' for writing");
    stream_ = &file_;
    path_ = path->string();
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write failed" + (path_.empty() ? "" : " for '" + path_ + "'"));
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
  std::string path_;
};

void emit(std::ostream& out, const CommonOptions& o, const std::string& instance_id, PolicyKind algo,
          const AbstentionSetting& setting, double lb_constant, const ExperimentSummary& summary) {
  for (std::size_t j = 0; j < summary.checkpoints.size(); ++j) {
    ResultRow row;
    row.setting = o.setting;
    row.algorithm = std::string(to_string(algo));
    row.instance = instance_id;
    row.c = setting.c();
    row.t = summary.checkpoints[j];
    row.mean_pseudo_regret = summary.pseudo[j].mean;
    row.std_pseudo_regret = summary.pseudo[j].stddev();
    row.mean_realized_regret = summary.realized[j].mean;
    row.std_realized_regret = summary.realized[j].stddev();
    row.trials = summary.trials;
    row.master_seed = o.seed;
    row.lb_constant = lb_constant;
    write_row(out, row);
  }
}

ExperimentConfig make_config(const Instance& inst, const AbstentionSetting& setting, PolicyKind algo,
                             std::uint64_t horizon, const CommonOptions& o, std::vector<std::uint64_t> grid) {
  ExperimentConfig config{inst.instance, setting, algo, horizon, o.trials, o.seed, std::move(grid)};
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

void command_run(const CommonOptions& o, double c, std::ostream& stdout_stream) {
  const auto setting = make_setting(o.setting, c);
  const auto algos = parse_algos(o.algos);
  const auto inst = resolve_instance(o.instance);
  const auto grid = resolve_checkpoints(o, o.horizon);
  std::vector<ExperimentConfig> configs;
  for (auto algo : algos) configs.push_back(make_config(inst, setting, algo, o.horizon, o, grid));

  CsvSink sink(o.out, "run", stdout_stream);
  write_header(sink.stream());
  const double lb = asymptotic_constant(inst.instance, setting);
  for (const auto& config : configs) {
    emit(sink.stream(), o, inst.id, config.algorithm, setting, lb, run_experiment(config, o.threads));
  }
  sink.finish();
}

void command_sweep_c(const CommonOptions& o, const std::string& c_grid, std::ostream& stdout_stream) {
  std::vector<double> cs;
  try {
    cs = parse_grid(c_grid, Spacing::kLinear);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto algos = parse_algos(o.algos);
  const auto inst = resolve_instance(o.instance);
  const auto grid = resolve_checkpoints(o, o.horizon);
  std::vector<std::pair<ExperimentConfig, double>> configs;
  for (auto algo : algos) {
    for (double c : cs) {
      const auto setting = make_setting(o.setting, c);
      configs.emplace_back(make_config(inst, setting, algo, o.horizon, o, grid), asymptotic_constant(inst.instance, setting));
    }
  }

  CsvSink sink(o.out, "sweep-c", stdout_stream);
  write_header(sink.stream());
  for (const auto& [config, lb] : configs) {
    emit(sink.stream(), o, inst.id, config.algorithm, config.setting, lb, run_experiment(config, o.threads));
  }
  sink.finish();
}

void command_sweep_t(const CommonOptions& o, double c, const std::string& t_grid, const std::string& spacing,
                     std::ostream& stdout_stream) {
  const auto setting = make_setting(o.setting, c);
  const auto algos = parse_algos(o.algos);
  const auto inst = resolve_instance(o.instance);
  std::vector<std::uint64_t> ts;
  try {
    ts = parse_time_grid(t_grid, spacing == "lin" ? Spacing::kLinear : Spacing::kGeometric);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double lb = asymptotic_constant(inst.instance, setting);

  // Anytime policies: one run to max T, checkpointed at every grid time.
  // Horizon-dependent policies: a fresh run per grid time.
  std::vector<ExperimentConfig> configs;
  for (auto algo : algos) {
    if (needs_horizon(algo)) {
      for (auto t : ts) configs.push_back(make_config(inst, setting, algo, t, o, {t}));
    } else {
      configs.push_back(make_config(inst, setting, algo, ts.back(), o, ts));
    }
  }

  CsvSink sink(o.out, "sweep-t", stdout_stream);
  write_header(sink.stream());
  for (const auto& config : configs) {
    emit(sink.stream(), o, inst.id, config.algorithm, setting, lb, run_experiment(config, o.threads));
  }
  sink.finish();
}

void command_instances_show(const std::string& text, std::optional<double> c, std::ostream& out) {
  const auto inst = resolve_instance(text);
  const auto gaps = suboptimality_gaps(inst.instance);
  out << "instance " << inst.id << "\nK " << inst.instance.num_arms() << "\nbest_arm " << inst.instance.best_arm() + 1
      << "\narm,mean,gap\n";
  for (std::size_t i = 0; i < inst.instance.num_arms(); ++i) {
    out << i + 1 << ',' << format_double(inst.instance.mean(i)) << ',' << format_double(gaps.gaps[i]) << '\n';
  }
  if (inst.instance.num_arms() > 1) out << "canonical_constant " << format_double(canonical_constant(inst.instance)) << '\n';
  if (c) {
    if (*c > 0.0) out << "lb_constant_rg " << format_double(asymptotic_constant_rg(inst.instance, *c)) << '\n';
    out << "lb_constant_rw " << format_double(asymptotic_constant_rw(inst.instance, *c)) << '\n';
  }
}

// CLI11 only honours config files attached to the root app, so a subcommand's
// --config file is expanded into ordinary flags here. Keys already given on the
// command line are skipped, which lets explicit flags win.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (!path || args.empty()) return args;

  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
  };
  std::vector<std::string> out = args;
  for (const auto& item : CLI::ConfigINI().from_file(*path)) {
    if (item.name == "++" || item.name == "--") continue;  // section open/close markers
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == args[0])) continue;
    const std::string flag = "--" + item.name;
    if (flag == "--config" || given(flag)) continue;
    out.push_back(flag);
    out.insert(out.end(), item.inputs.begin(), item.inputs.end());
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-armed bandits with abstention: simulation and experiment runner", "abstain"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  CommonOptions run_opts;
  double run_c = 0.0;
  auto* run = app.add_subcommand("run", "Run algorithms on one instance at one c; one row per checkpoint");
  add_common(*run, run_opts, true);
  run->add_option("--c", run_c, "Abstention regret (rg, > 0) or reward (rw)")->required();

  CommonOptions sweep_c_opts;
  std::string c_grid = "0.05:1.0:20";
  auto* sweep_c = app.add_subcommand("sweep-c", "Sweep the abstention value c at a fixed horizon");
  add_common(*sweep_c, sweep_c_opts, true);
  sweep_c->add_option("--c-grid", c_grid, "Linear grid start:stop:count");

  CommonOptions sweep_t_opts;
  double sweep_t_c = 0.0;
  std::string t_grid = "100:10000:10";
  std::string t_spacing = "geom";
  auto* sweep_t = app.add_subcommand("sweep-t", "Sweep the horizon T at a fixed c");
  add_common(*sweep_t, sweep_t_opts, false);
  sweep_t->add_option("--c", sweep_t_c, "Abstention regret (rg, > 0) or reward (rw)")->required();
  sweep_t->add_option("--t-grid", t_grid, "Horizon grid start:stop:count");
  sweep_t->add_option("--t-spacing", t_spacing, "Grid spacing: geom or lin")->check(CLI::IsMember({"geom", "lin"}));

  auto* instances = app.add_subcommand("instances", "Inspect built-in instances");
  instances->require_subcommand(1);
  instances->add_subcommand("list", "List instance families");
  std::string show_spec;
  std::optional<double> show_c;
  auto* show = instances->add_subcommand("show", "Print an instance's means, gaps and lower-bound constants");
  show->add_option("spec", show_spec, "Instance spec")->required();
  show->add_option("--c", show_c, "Also print lower-bound constants at this c");

  try {
    const auto expanded = expand_config_file(args);
    app.parse(std::vector<std::string>(expanded.rbegin(), expanded.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      command_run(run_opts, run_c, out);
    } else if (*sweep_c) {
      command_sweep_c(sweep_c_opts, c_grid, out);
    } else if (*sweep_t) {
      command_sweep_t(sweep_t_opts, sweep_t_c, t_grid, t_spacing, out);
    } else if (*instances) {
      if (instances->got_subcommand("list")) {
        for (const auto& [name, description] : instance_catalog()) out << name << "\t" << description << '\n';
      } else {
        command_instances_show(show_spec, show_c, out);
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace abstain::experiments
