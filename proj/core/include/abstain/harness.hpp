#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "abstain/arm_stats.hpp"
#include "abstain/instance.hpp"
#include "abstain/policies.hpp"

namespace abstain {

struct ExperimentConfig {
  BanditInstance instance;
  AbstentionSetting setting;
  PolicyKind algorithm;
  std::uint64_t horizon = 0;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  /// Sorted, unique, all <= horizon, ending at horizon. Empty means
  /// default_checkpoints(horizon).
  std::vector<std::uint64_t> checkpoints;
};

/// About `count` geometrically spaced times from min(100, horizon) up to
/// horizon, rounded to integers and deduplicated. Always ends at horizon.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon, std::size_t count = 20);

/// Throws std::invalid_argument describing the first violated invariant.
void validate(const ExperimentConfig& config);

/// The effective checkpoint grid of a valid config.
std::vector<std::uint64_t> checkpoints_of(const ExperimentConfig& config);

/// Seed of trial `trial_index`: mix64(mix64(master) + (trial_index + 1) * phi64)
/// where phi64 = 0x9E3779B97F4A7C15. Injective in each argument with the other
/// fixed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index);

struct TrialResult {
  std::vector<double> pseudo;    ///< cumulative pseudo regret per checkpoint
  std::vector<double> realized;  ///< cumulative realized regret per checkpoint
  std::vector<ArmCounters> final_counters;
};

/// Plays one trial. The policy and the environment draw from two separate
/// streams seeded from derive_seed(master_seed, trial_index), so rewards for
/// a given round do not depend on how much randomness the policy consumed.
TrialResult run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

/// Same trial as run_trial, returning the action taken at every round.
std::vector<Action> trace_actions(const ExperimentConfig& config, std::uint64_t trial_index);

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = 0.0;
  double max = 0.0;

  void push(double x);
  /// Sample standard deviation; 0 for fewer than two values.
  double stddev() const;
  /// stddev / sqrt(count).
  double std_error() const;
};

struct ExperimentSummary {
  std::vector<std::uint64_t> checkpoints;
  std::vector<Moments> pseudo;
  std::vector<Moments> realized;
  std::uint64_t trials = 0;
};

/// Runs trials 0..trials-1 on up to `threads` workers (0 = hardware
/// concurrency) and folds them in trial-index order, so the summary is
/// bit-identical for any thread count. The first trial error aborts the run
/// and is rethrown.
ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Same as run_experiment but also hands back every trial.
ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads,
                                 std::vector<TrialResult>* trials_out);

}  // namespace abstain
