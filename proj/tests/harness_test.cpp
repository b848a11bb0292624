#include <gtest/gtest.h>

#include <set>

#include "abstain/harness.hpp"

namespace abstain {
namespace {

const BanditInstance kMuDagger({1.0, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7});

ExperimentConfig config_for(PolicyKind kind, AbstentionSetting setting, std::uint64_t horizon,
                            std::uint64_t trials = 1, std::uint64_t seed = 42) {
  return ExperimentConfig{kMuDagger, setting, kind, horizon, trials, seed, {}};
}

TEST(DeriveSeed, Deterministic) { EXPECT_EQ(derive_seed(17, 3), derive_seed(17, 3)); }

TEST(DeriveSeed, NoCollisionsAcrossTrialsOrMasters) {
  RandomStream rng(1);
  std::set<std::uint64_t> seen;
  for (int n = 0; n < 10000; ++n) {
    const std::uint64_t s = static_cast<std::uint64_t>(rng.uniform() * 0x1.0p53);
    std::uint64_t s2 = static_cast<std::uint64_t>(rng.uniform() * 0x1.0p53);
    if (s2 == s) ++s2;
    const auto i = static_cast<std::uint64_t>(rng.uniform() * 5000);
    EXPECT_NE(derive_seed(s, 0), derive_seed(s, 1));
    EXPECT_NE(derive_seed(s, i), derive_seed(s2, i));
    seen.insert(derive_seed(s, 0));
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(DefaultCheckpoints, GeometricAndEndingAtHorizon) {
  const auto grid = default_checkpoints(10000);
  ASSERT_GE(grid.size(), 15u);
  EXPECT_LE(grid.size(), 20u);
  EXPECT_EQ(grid.front(), 100u);
  EXPECT_EQ(grid.back(), 10000u);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(grid[i - 1], grid[i]);
  EXPECT_EQ(default_checkpoints(50), std::vector<std::uint64_t>{50});
  EXPECT_EQ(default_checkpoints(1), std::vector<std::uint64_t>{1});
}

TEST(Validate, RejectsBadConfigs) {
  auto bad_grid = config_for(PolicyKind::kLesTs, FixedRegret{0.1}, 100);
  bad_grid.checkpoints = {10, 10, 100};
  EXPECT_THROW(validate(bad_grid), std::invalid_argument);
  bad_grid.checkpoints = {10, 50};
  EXPECT_THROW(validate(bad_grid), std::invalid_argument);
  bad_grid.checkpoints = {0, 100};
  EXPECT_THROW(validate(bad_grid), std::invalid_argument);
  auto no_trials = config_for(PolicyKind::kLesTs, FixedRegret{0.1}, 100, 0);
  EXPECT_THROW(validate(no_trials), std::invalid_argument);
  EXPECT_THROW(validate(config_for(PolicyKind::kFrgTswa, FixedReward{0.1}, 100)), std::invalid_argument);
  EXPECT_THROW(validate(config_for(PolicyKind::kKlUcbPp, FixedReward{0.1}, 5)), std::invalid_argument);
  EXPECT_THROW(run_experiment(config_for(PolicyKind::kFrwTswa, FixedRegret{0.1}, 100)), std::invalid_argument);
}

TEST(RunTrial, AlwaysAbstainRegimeIsExact) {
  auto config = config_for(PolicyKind::kFrgTswa, FixedRegret{0.1}, 700);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto result = run_trial(config, trial);
    EXPECT_EQ(result.pseudo.back(), 70.0);
    EXPECT_EQ(result.realized.back(), 70.0);
  }
}

TEST(RunTrial, InitialisationOnlyRunCostsTheGapSum) {
  auto config = config_for(PolicyKind::kFrgTswa, FixedRegret{1e9}, 7);
  const auto result = run_trial(config, 0);
  EXPECT_DOUBLE_EQ(result.pseudo.back(), 1.8);
  for (const auto& c : result.final_counters) EXPECT_EQ(c, (ArmCounters{1, 1, 0}));
}

TEST(RunTrial, SingleArmFixedRewardStopsAbstaining) {
  ExperimentConfig config{BanditInstance({1.0}), FixedReward{0.0}, PolicyKind::kFrwTswa, 5000, 1, 9, {2500, 5000}};
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const auto result = run_trial(config, trial);
    const auto& c = result.final_counters[0];
    EXPECT_EQ(result.pseudo.back(), 1.0 * static_cast<double>(c.pulls_abstain));
    EXPECT_EQ(result.pseudo[0], result.pseudo[1]);
  }
}

TEST(RunTrial, TrajectoriesAndCountersAreConsistent) {
  for (auto kind : {PolicyKind::kLesTs, PolicyKind::kFrgTswa, PolicyKind::kKlUcbPp}) {
    const auto config = config_for(kind, FixedRegret{0.2}, 3000);
    const auto result = run_trial(config, 4);
    for (std::size_t j = 1; j < result.pseudo.size(); ++j) EXPECT_GE(result.pseudo[j], result.pseudo[j - 1]);
    std::uint64_t total = 0;
    for (const auto& c : result.final_counters) {
      EXPECT_EQ(c.pulls_abstain + c.pulls_no_abstain, c.pulls);
      total += c.pulls;
    }
    EXPECT_EQ(total, 3000u);

    const auto actions = trace_actions(config, 4);
    ASSERT_EQ(actions.size(), 3000u);
    std::vector<ArmCounters> counted(kMuDagger.num_arms());
    for (const auto& a : actions) {
      ++counted[a.arm].pulls;
      ++(a.abstain ? counted[a.arm].pulls_abstain : counted[a.arm].pulls_no_abstain);
    }
    EXPECT_EQ(counted, result.final_counters);
  }
}

TEST(RunExperiment, SingleTrialSummary) {
  const auto config = config_for(PolicyKind::kFrgTswa, FixedRegret{0.3}, 2000);
  const auto summary = run_experiment(config, 1);
  const auto trial = run_trial(config, 0);
  ASSERT_EQ(summary.pseudo.size(), trial.pseudo.size());
  for (std::size_t j = 0; j < trial.pseudo.size(); ++j) {
    EXPECT_EQ(summary.pseudo[j].mean, trial.pseudo[j]);
    EXPECT_EQ(summary.pseudo[j].stddev(), 0.0);
    EXPECT_EQ(summary.realized[j].mean, trial.realized[j]);
  }
}

bool same_summary(const ExperimentSummary& a, const ExperimentSummary& b) {
  if (a.checkpoints != b.checkpoints || a.trials != b.trials) return false;
  for (std::size_t j = 0; j < a.checkpoints.size(); ++j) {
    if (a.pseudo[j].mean != b.pseudo[j].mean || a.pseudo[j].m2 != b.pseudo[j].m2) return false;
    if (a.realized[j].mean != b.realized[j].mean || a.realized[j].m2 != b.realized[j].m2) return false;
  }
  return true;
}

TEST(RunExperiment, ThreadCountDoesNotChangeResults) {
  const auto config = config_for(PolicyKind::kFrgTswa, FixedRegret{0.2}, 2000, 37);
  const auto one = run_experiment(config, 1);
  EXPECT_TRUE(same_summary(one, run_experiment(config, 4)));
  EXPECT_TRUE(same_summary(one, run_experiment(config, 13)));
}

TEST(RunExperiment, AlwaysAbstainRegimeIsDeterministic) {
  const auto summary = run_experiment(config_for(PolicyKind::kFrgTswa, FixedRegret{0.1}, 700, 50));
  EXPECT_EQ(summary.pseudo.back().mean, 70.0);
  EXPECT_EQ(summary.pseudo.back().stddev(), 0.0);
}

TEST(RunExperiment, SummaryMeansLieWithinTrialRange) {
  std::vector<TrialResult> trials;
  const auto summary = run_experiment(config_for(PolicyKind::kLesTs, FixedRegret{0.2}, 1000, 25), 3, &trials);
  ASSERT_EQ(trials.size(), 25u);
  for (std::size_t j = 0; j < summary.checkpoints.size(); ++j) {
    const auto& m = summary.pseudo[j];
    EXPECT_GE(m.mean, m.min);
    EXPECT_LE(m.mean, m.max);
    EXPECT_GE(m.stddev(), 0.0);
  }
}

TEST(RunExperiment, FrgWithHugeCostMatchesLesTsExactly) {
  const auto frg = run_experiment(config_for(PolicyKind::kFrgTswa, FixedRegret{1e9}, 3000, 20));
  const auto les = run_experiment(config_for(PolicyKind::kLesTs, FixedRegret{1e9}, 3000, 20));
  EXPECT_TRUE(same_summary(frg, les));
}

}  // namespace
}  // namespace abstain
