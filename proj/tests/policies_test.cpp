#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "abstain/policies.hpp"

namespace abstain {
namespace {

// Hands out pre-scripted variates and logs the order they were asked for.
struct ScriptedStream {
  std::deque<bool> bernoullis;
  std::deque<double> gaussians;
  std::string log;

  bool bernoulli(double) {
    log += 'B';
    const bool b = bernoullis.front();
    bernoullis.pop_front();
    return b;
  }
  double gaussian() {
    log += 'G';
    const double z = gaussians.front();
    gaussians.pop_front();
    return z;
  }
};
static_assert(VariateSource<ScriptedStream>);
static_assert(VariateSource<RandomStream>);

// Every arm pulled `pulls[i]` times with reward exactly means[i].
ArmStats stats_with(const std::vector<double>& means, const std::vector<std::uint64_t>& pulls) {
  ArmStats stats(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::uint64_t n = 0; n < pulls[i]; ++n) stats.record(i, false, means[i]);
  }
  return stats;
}

// ---------------------------------------------------------------- les_ts_select

TEST(LesTsSelect, SingleArmAlwaysWins) {
  const auto stats = stats_with({0.3}, {4});
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(les_ts_select(stats, rng), 0u);
}

TEST(LesTsSelect, AllEmpiricalBranchesPickLargestMean) {
  const auto stats = stats_with({0.1, 0.2, 0.9, 0.4}, {3, 3, 3, 3});
  ScriptedStream s{{false, false, false, false}, {}, {}};
  EXPECT_EQ(les_ts_select(stats, s), 2u);
  EXPECT_EQ(s.log, "BBBB");
}

TEST(LesTsSelect, TiesGoToLowestIndex) {
  const auto stats = stats_with({0.5, 0.5, 0.1}, {2, 2, 2});
  ScriptedStream s{{false, false, false}, {}, {}};
  EXPECT_EQ(les_ts_select(stats, s), 0u);
}

TEST(LesTsSelect, PosteriorDrawScaledByInverseRootPulls) {
  // Arm 2 (mean 0.2, N = 4) draws z = 2 -> 0.2 + 2 / 2 = 1.2 > 0.9.
  const auto stats = stats_with({0.9, 0.2, 0.5}, {1, 4, 1});
  ScriptedStream s{{false, true, false}, {2.0}, {}};
  EXPECT_EQ(les_ts_select(stats, s), 1u);
  EXPECT_EQ(s.log, "BBGB");
}

TEST(LesTsSelect, StreamOrderInterleavesBernoulliAndGaussianPerArm) {
  const auto stats = stats_with({0.0, 0.0, 0.0}, {1, 1, 1});
  ScriptedStream s{{true, false, true}, {-1.0, 3.0}, {}};
  EXPECT_EQ(les_ts_select(stats, s), 2u);
  EXPECT_EQ(s.log, "BGBBG");
}

TEST(LesTsSelect, RejectsUnpulledArm) {
  const auto stats = stats_with({0.5, 0.1}, {1, 0});
  RandomStream rng(1);
  EXPECT_THROW(les_ts_select(stats, rng), std::logic_error);
}

// ---------------------------------------------------------------- lcb

TEST(Lcb, BothLogsVanish) { EXPECT_EQ(lcb(stats_with({0.0}, {1}), 0, 1, 0.5), 0.0); }

TEST(Lcb, OracleValues) {
  // Reference values from a 30-digit evaluation of the formula.
  EXPECT_NEAR(lcb(stats_with({1.0}, {4}), 0, 10, 0.5), -0.858461094424919223, 1e-12);
  EXPECT_NEAR(lcb(stats_with({2.0}, {100}), 0, 100, std::exp(1.0)), 1.45565616458043223, 1e-12);
}

TEST(Lcb, RejectsUnpulledArm) { EXPECT_THROW(lcb(ArmStats(2), 1, 5, 1.0), std::logic_error); }

TEST(Lcb, DecreasingInTimeIncreasingInPulls) {
  RandomStream rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const double mean = 4.0 * rng.uniform() - 2.0;
    const double c = 0.01 + 5.0 * rng.uniform();
    const auto n = 1 + static_cast<std::uint64_t>(50 * rng.uniform());
    const auto t = 2 + static_cast<std::uint64_t>(1000 * rng.uniform());
    const auto base = stats_with({mean}, {n});
    const auto more = stats_with({mean}, {n + 1});
    EXPECT_LT(lcb(base, 0, t + 1, c), lcb(base, 0, t, c));
    EXPECT_GT(lcb(more, 0, t, c), lcb(base, 0, t, c));
  }
}

// Deviation frequency of the first-s-pulls mean above its LCB radius is at
// most t^-3 / max(c, 1) (sub-Gaussian Hoeffding), up to Monte Carlo error.
void check_hoeffding_tail(int s, std::uint64_t t, double c, std::uint64_t seed) {
  constexpr int reps = 1'000'000;
  const double mu = 0.3;
  const double radius = std::sqrt((6.0 * std::log(static_cast<double>(t)) + 2.0 * std::log(std::max(c, 1.0))) / s);
  RandomStream rng(seed);
  int hits = 0;
  for (int r = 0; r < reps; ++r) {
    double sum = 0.0;
    for (int k = 0; k < s; ++k) sum += mu + rng.gaussian();
    if (sum / s - radius >= mu) ++hits;
  }
  const double bound = std::pow(static_cast<double>(t), -3.0) / std::max(c, 1.0);
  const double se = std::sqrt(bound * (1.0 - bound) / reps);
  EXPECT_LE(static_cast<double>(hits) / reps, bound + 5.0 * se) << "s=" << s << " t=" << t << " c=" << c;
}

TEST(Lcb, HoeffdingTailCoverage) {
  check_hoeffding_tail(5, 10, 1.0, 11);
  check_hoeffding_tail(1, 3, 2.0, 12);
  check_hoeffding_tail(20, 4, 0.5, 13);
}

// ---------------------------------------------------------------- frg rules

TEST(FrgInitAbstain, Examples) {
  EXPECT_TRUE(frg_init_abstain(1, 4, 1.5));
  EXPECT_FALSE(frg_init_abstain(4, 4, 1.5));
  EXPECT_TRUE(frg_init_abstain(7, 7, 1.0));  // boundary is inclusive
}

TEST(FrgAbstain, NeitherCriterionFires) {
  const auto stats = stats_with({1.0, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7}, {10000, 10000, 10000, 10000, 10000, 10000, 10000});
  EXPECT_FALSE(frg_abstain(stats, 1, 70000, 0.5, 7));
}

TEST(FrgAbstain, GapIndependentCriterionIgnoresStats) {
  const auto stats = stats_with({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1, 1, 1, 1});
  EXPECT_TRUE(frg_abstain(stats, 0, 7, 0.9, 7));
}

TEST(FrgAbstain, LcbCriterionFires) {
  // lcb of arm 2 = 5 - sqrt(6 ln 100 / 100) ~ 4.4743 >= 0 + 1.
  const auto stats = stats_with({0.0, 5.0}, {100, 100});
  EXPECT_NEAR(lcb(stats, 1, 100, 1.0), 4.47434782302430680, 1e-12);
  EXPECT_TRUE(frg_abstain(stats, 0, 100, 1.0, 2));
  EXPECT_FALSE(frg_abstain(stats, 1, 100, 1.0, 2));
}

TEST(FrgAbstain, LcbBoundaryIsInclusive) {
  // With t = 1 and c <= 1 the radius is zero, so lcb equals the mean.
  const auto stats = stats_with({0.25, 1.0}, {1, 1});
  EXPECT_TRUE(frg_abstain(stats, 0, 1, 0.75, 0));  // K = 0 keeps sqrt(K/t) out of play
}

// ---------------------------------------------------------------- frw rule

TEST(FrwAbstain, UnpulledArmNeverAbstains) {
  ArmStats stats(2);
  EXPECT_FALSE(frw_abstain(stats, 0, 1e6));
  EXPECT_FALSE(frw_abstain(stats, 0, std::numeric_limits<double>::max()));
}

TEST(FrwAbstain, BoundaryIsInclusive) {
  EXPECT_TRUE(frw_abstain(stats_with({0.5}, {3}), 0, 0.5));
  EXPECT_FALSE(frw_abstain(stats_with({0.7}, {3}), 0, 0.5));
}

// ---------------------------------------------------------------- kl-ucb++

TEST(KlUcbPp, ExplorationVanishesAtTOverK) {
  EXPECT_EQ(kl_ucb_pp_index(stats_with({0.5}, {10}), 0, 100, 10), 0.5);
}

TEST(KlUcbPp, OracleValue) {
  EXPECT_NEAR(kl_ucb_pp_index(stats_with({0.0}, {1}), 0, 100, 10), 2.82465413342674010, 1e-12);
}

TEST(KlUcbPp, ClampsBeyondTOverK) {
  EXPECT_EQ(kl_ucb_pp_index(stats_with({0.25}, {50}), 0, 100, 10), 0.25);
}

TEST(KlUcbPp, UnpulledIsInfiniteAndShortHorizonThrows) {
  EXPECT_EQ(kl_ucb_pp_index(ArmStats(3), 0, 100, 3), std::numeric_limits<double>::infinity());
  EXPECT_THROW(kl_ucb_pp_index(stats_with({0.4}, {1}), 0, 2, 3), std::invalid_argument);
}

// ---------------------------------------------------------------- Policy

TEST(PolicyKindNames, RoundTrip) {
  for (auto kind : {PolicyKind::kLesTs, PolicyKind::kKlUcbPp, PolicyKind::kFrgTswa, PolicyKind::kFrwTswa,
                    PolicyKind::kFrwUcbwa}) {
    EXPECT_EQ(parse_policy_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_policy_kind("ucb1"), std::invalid_argument);
}

TEST(Policy, RejectsIncompatibleSettingsAndMissingHorizon) {
  EXPECT_THROW(Policy(PolicyKind::kFrgTswa, 3, FixedReward{0.5}), std::invalid_argument);
  EXPECT_THROW(Policy(PolicyKind::kFrwTswa, 3, FixedRegret{0.5}), std::invalid_argument);
  EXPECT_THROW(Policy(PolicyKind::kKlUcbPp, 3, FixedRegret{0.5}), std::invalid_argument);
  EXPECT_THROW(Policy(PolicyKind::kKlUcbPp, 3, FixedRegret{0.5}, 2), std::invalid_argument);
  EXPECT_NO_THROW(Policy(PolicyKind::kLesTs, 3, FixedReward{0.5}));
}

TEST(Policy, FrgInitialisationIsRoundRobin) {
  Policy policy(PolicyKind::kFrgTswa, 7, FixedRegret{0.5});
  RandomStream rng(3);
  for (std::size_t t = 1; t <= 7; ++t) {
    const auto action = policy.step(rng);
    EXPECT_EQ(action.arm, t - 1);
    EXPECT_EQ(action.abstain, std::sqrt(7.0 / static_cast<double>(t)) >= 0.5);
    policy.update(action, Observation{0.1 * static_cast<double>(t)});
  }
}

TEST(Policy, StepAndUpdateMustAlternate) {
  Policy policy(PolicyKind::kLesTs, 2, FixedRegret{0.5});
  RandomStream rng(3);
  EXPECT_THROW(policy.update(Action{0, false}, Observation{1.0}), std::logic_error);
  const auto a = policy.step(rng);
  EXPECT_THROW(policy.step(rng), std::logic_error);
  EXPECT_THROW(policy.update(Action{a.arm, !a.abstain}, Observation{1.0}), std::logic_error);
  policy.update(a, Observation{1.0});
  EXPECT_EQ(policy.time(), 1u);
}

TEST(Policy, HorizonDependentPolicyStopsAtHorizon) {
  Policy policy(PolicyKind::kKlUcbPp, 2, FixedRegret{0.5}, 3);
  RandomStream rng(3);
  for (int i = 0; i < 3; ++i) policy.update(policy.step(rng), Observation{0.0});
  EXPECT_THROW(policy.step(rng), std::logic_error);
}

TEST(Policy, UpdateFoldsRewardEvenWhenAbstaining) {
  Policy policy(PolicyKind::kFrwTswa, 2, FixedReward{5.0});
  RandomStream rng(8);
  auto a = policy.step(rng);  // arm 1, unpulled: no abstention
  EXPECT_EQ(a, (Action{0, false}));
  policy.update(a, Observation{1.0});
  EXPECT_EQ(*policy.stats().mean(0), 1.0);  // sentinel replaced by the first reward
  a = policy.step(rng);
  policy.update(a, Observation{1.0});
  a = policy.step(rng);  // both arms at 1.0 <= 5: abstain
  ASSERT_TRUE(a.abstain);
  const std::size_t arm = a.arm;
  const auto before = policy.stats().counters(arm);
  policy.update(a, Observation{4.0});
  const auto& after = policy.stats().counters(arm);
  EXPECT_EQ(after.pulls, before.pulls + 1);
  EXPECT_EQ(after.pulls_abstain, before.pulls_abstain + 1);
  EXPECT_EQ(after.pulls_no_abstain, before.pulls_no_abstain);
  EXPECT_EQ(*policy.stats().mean(arm), 2.5);
}

TEST(ArmStats, RunningMean) {
  ArmStats stats(1);
  EXPECT_FALSE(stats.mean(0).has_value());
  stats.record(0, false, 0.5);
  stats.record(0, false, 1.5);
  EXPECT_EQ(*stats.mean(0), 1.0);
  stats.record(0, true, 4.0);
  EXPECT_EQ(stats.pulls(0), 3u);
  EXPECT_EQ(*stats.mean(0), 2.0);
}

std::vector<Action> drive(PolicyKind kind, const std::vector<double>& means, AbstentionSetting setting,
                          std::uint64_t horizon, std::uint64_t seed) {
  const auto inst = make_instance(means);
  Policy policy(kind, means.size(), setting, needs_horizon(kind) ? std::optional(horizon) : std::nullopt);
  RandomStream policy_rng(seed), env_rng(seed ^ 0xABCDEFULL);
  std::vector<Action> out;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const auto a = policy.step(policy_rng);
    policy.update(a, sample_reward(inst, a.arm, env_rng));
    out.push_back(a);
  }
  return out;
}

std::vector<std::size_t> arms_of(const std::vector<Action>& actions) {
  std::vector<std::size_t> out;
  for (const auto& a : actions) out.push_back(a.arm);
  return out;
}

const std::vector<double> kMuDagger = {1.0, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7};

TEST(Policy, FrgWithHugeCostReducesToLesTs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto frg = drive(PolicyKind::kFrgTswa, kMuDagger, FixedRegret{1e9}, 2000, seed);
    const auto les = drive(PolicyKind::kLesTs, kMuDagger, FixedRegret{1e9}, 2000, seed);
    EXPECT_EQ(arms_of(frg), arms_of(les));
    for (const auto& a : frg) ASSERT_FALSE(a.abstain);
  }
}

TEST(Policy, FrwWrapperNeverChangesArmChoice) {
  for (double c : {-1e9, 0.0, 0.75, 1.1}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto ts = drive(PolicyKind::kFrwTswa, kMuDagger, FixedReward{c}, 1500, seed);
      EXPECT_EQ(arms_of(ts), arms_of(drive(PolicyKind::kLesTs, kMuDagger, FixedReward{c}, 1500, seed)));
      const auto ucb = drive(PolicyKind::kFrwUcbwa, kMuDagger, FixedReward{c}, 1500, seed);
      EXPECT_EQ(arms_of(ucb), arms_of(drive(PolicyKind::kKlUcbPp, kMuDagger, FixedReward{c}, 1500, seed)));
      if (c == -1e9) {
        for (const auto& a : ts) ASSERT_FALSE(a.abstain);
        for (const auto& a : ucb) ASSERT_FALSE(a.abstain);
      }
    }
  }
}

TEST(Policy, AlwaysAbstainRegime) {
  // c <= sqrt(K / T): the gap-independent criterion holds at every t <= T.
  const auto actions = drive(PolicyKind::kFrgTswa, kMuDagger, FixedRegret{0.1}, 700, 17);
  for (const auto& a : actions) ASSERT_TRUE(a.abstain);
}

TEST(Policy, CounterIdentitiesHoldEveryStep) {
  RandomStream gen(404);
  for (auto kind : {PolicyKind::kLesTs, PolicyKind::kKlUcbPp, PolicyKind::kFrgTswa, PolicyKind::kFrwTswa,
                    PolicyKind::kFrwUcbwa}) {
    const std::size_t k = 2 + static_cast<std::size_t>(6 * gen.uniform());
    std::vector<double> means(k);
    for (std::size_t i = 0; i < k; ++i) means[i] = gen.uniform() - static_cast<double>(i) * 1e-3;
    means[0] += 1.0;
    const auto inst = make_instance(means);
    const AbstentionSetting setting =
        kind == PolicyKind::kFrwTswa || kind == PolicyKind::kFrwUcbwa ? AbstentionSetting(FixedReward{0.5})
                                                                      : AbstentionSetting(FixedRegret{0.2});
    Policy policy(kind, k, setting, std::uint64_t{600});
    RandomStream rng(9);
    for (std::uint64_t t = 1; t <= 600; ++t) {
      const auto a = policy.step(rng);
      policy.update(a, sample_reward(inst, a.arm, rng));
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& c = policy.stats().counters(i);
        ASSERT_EQ(c.pulls_abstain + c.pulls_no_abstain, c.pulls);
        total += c.pulls;
        if (c.pulls > 0) {
          ASSERT_NEAR(*policy.stats().mean(i) * static_cast<double>(c.pulls), policy.stats().sum_rewards(i), 1e-9 * t);
        }
      }
      ASSERT_EQ(total, t);
      ASSERT_EQ(policy.time(), t);
    }
  }
}

}  // namespace
}  // namespace abstain
