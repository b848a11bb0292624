#include "abstain/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "abstain/regret.hpp"

namespace abstain {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPolicyStreamTag = 0x706F6C6963790000ULL;
constexpr std::uint64_t kEnvStreamTag = 0x656E760000000000ULL;

template <class OnRound>
TrialResult play(const ExperimentConfig& config, std::uint64_t trial_index, OnRound&& on_round) {
  const auto grid = checkpoints_of(config);
  const std::uint64_t seed = derive_seed(config.master_seed, trial_index);
  RandomStream policy_rng(mix64(seed ^ kPolicyStreamTag));
  RandomStream env_rng(mix64(seed ^ kEnvStreamTag));

  Policy policy(config.algorithm, config.instance.num_arms(), config.setting,
                needs_horizon(config.algorithm) ? std::optional(config.horizon) : std::nullopt);
  RegretLedger ledger(config.instance, config.setting);

  TrialResult out;
  out.pseudo.reserve(grid.size());
  out.realized.reserve(grid.size());
  std::size_t next = 0;
  for (std::uint64_t t = 1; t <= config.horizon; ++t) {
    const Action action = policy.step(policy_rng);
    const Observation obs = sample_reward(config.instance, action.arm, env_rng);
    ledger.record(action, obs);
    policy.update(action, obs);
    on_round(action);
    if (next < grid.size() && grid[next] == t) {
      out.pseudo.push_back(ledger.cumulative_pseudo());
      out.realized.push_back(ledger.cumulative_realized());
      ++next;
    }
  }
  out.final_counters = policy.stats().all_counters();
  return out;
}

}  // namespace

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon, std::size_t count) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  const std::uint64_t start = std::min<std::uint64_t>(100, horizon);
  std::vector<std::uint64_t> out;
  if (count <= 1 || start == horizon) return {horizon};
  const double ratio = std::log(static_cast<double>(horizon) / static_cast<double>(start));
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const double x = static_cast<double>(start) * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
    const auto t = static_cast<std::uint64_t>(std::llround(x));
    if (t < horizon && (out.empty() || out.back() < t)) out.push_back(t);
  }
  out.push_back(horizon);
  return out;
}

void validate(const ExperimentConfig& config) {
  if (config.horizon == 0) throw std::invalid_argument("horizon must be positive");
  if (config.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (!compatible(config.algorithm, config.setting)) {
    throw std::invalid_argument(std::string(to_string(config.algorithm)) + " does not run in the " +
                                (config.setting.is_fixed_regret() ? "fixed-regret" : "fixed-reward") + " setting");
  }
  if (needs_horizon(config.algorithm) && config.horizon < config.instance.num_arms()) {
    throw std::invalid_argument("horizon must be at least the number of arms for " +
                                std::string(to_string(config.algorithm)));
  }
  const auto& grid = config.checkpoints;
  if (grid.empty()) return;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0) throw std::invalid_argument("checkpoints start at 1");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("checkpoints must be strictly increasing");
  }
  if (grid.back() != config.horizon) throw std::invalid_argument("last checkpoint must equal the horizon");
}

std::vector<std::uint64_t> checkpoints_of(const ExperimentConfig& config) {
  return config.checkpoints.empty() ? default_checkpoints(config.horizon) : config.checkpoints;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index) {
  return mix64(mix64(master) + (trial_index + 1) * kGolden);
}

TrialResult run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  validate(config);
  return play(config, trial_index, [](const Action&) {});
}

std::vector<Action> trace_actions(const ExperimentConfig& config, std::uint64_t trial_index) {
  validate(config);
  std::vector<Action> actions;
  actions.reserve(config.horizon);
  play(config, trial_index, [&](const Action& a) { actions.push_back(a); });
  return actions;
}

void Moments::push(double x) {
  ++count;
  if (count == 1) {
    min = max = x;
  } else {
    min = std::min(min, x);
    max = std::max(max, x);
  }
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

double Moments::stddev() const {
  if (count < 2) return 0.0;
  return std::sqrt(std::max(m2, 0.0) / static_cast<double>(count - 1));
}

double Moments::std_error() const {
  if (count == 0) return 0.0;
  return stddev() / std::sqrt(static_cast<double>(count));
}

ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads) {
  return run_experiment(config, threads, nullptr);
}

ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads,
                                 std::vector<TrialResult>* trials_out) {
  validate(config);
  const auto grid = checkpoints_of(config);
  std::vector<TrialResult> results(config.trials);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.trials));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        results[i] = play(config, i, [](const Action&) {});
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  ExperimentSummary summary;
  summary.checkpoints = grid;
  summary.trials = config.trials;
  summary.pseudo.resize(grid.size());
  summary.realized.resize(grid.size());
  for (const auto& trial : results) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      summary.pseudo[j].push(trial.pseudo[j]);
      summary.realized[j].push(trial.realized[j]);
    }
  }
  if (trials_out) *trials_out = std::move(results);
  return summary;
}

}  // namespace abstain
