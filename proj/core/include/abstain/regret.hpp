#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abstain/arm_stats.hpp"
#include "abstain/instance.hpp"

namespace abstain {

/// One round's regret. `pseudo` uses the true mean of the pulled arm, `realized`
/// the observed reward; they agree in expectation.
struct InstantRegret {
  double pseudo = 0.0;
  double realized = 0.0;
};

/// Fixed-regret round: c if abstained, else gap (pseudo) / best mean - reward
/// (realized).
InstantRegret instant_regret_rg(const BanditInstance& instance, std::size_t arm, bool abstain, double c,
                                double reward);

/// Fixed-reward round with m = max(best mean, c): m - c if abstained, else
/// m - mean (pseudo) / m - reward (realized).
InstantRegret instant_regret_rw(const BanditInstance& instance, std::size_t arm, bool abstain, double c,
                                double reward);

InstantRegret instant_regret(const BanditInstance& instance, const AbstentionSetting& setting, const Action& action,
                             double reward);

/// Coefficient of log T in the fixed-regret asymptotic lower bound:
/// 2 * sum over suboptimal i of min(gap_i, c) / gap_i^2.
double asymptotic_constant_rg(const BanditInstance& instance, double c);

/// Coefficient of log T in the fixed-reward asymptotic lower bound:
/// 2 * sum over suboptimal i of (max(best, c) - max(mean_i, c)) / gap_i^2.
double asymptotic_constant_rw(const BanditInstance& instance, double c);

/// The constant matching the setting's regret definition.
double asymptotic_constant(const BanditInstance& instance, const AbstentionSetting& setting);

/// Classical bandit constant, sum over suboptimal i of 2 / gap_i.
double canonical_constant(const BanditInstance& instance);

/// constant * ln t for each t in the grid.
std::vector<double> lb_curve(double constant, std::span<const std::uint64_t> t_grid);

/// Minimax rate shapes without their universal constants. Reference curves only.
double minimax_rate_rg(std::size_t num_arms, std::uint64_t horizon, double c);
double minimax_rate_rw(std::size_t num_arms, std::uint64_t horizon);

/// Per-trial cumulative regret under one setting, plus the canonical
/// (abstention-blind) pseudo regret.
///
/// Pseudo regret is reconstructed from per-arm counters rather than summed
/// round by round, so it is exact in the count domain:
///   fixed-regret  c * sum_i N1_i + sum_i gap_i * N0_i
///   fixed-reward  (m - c) * sum_i N1_i + sum_i (m - mean_i) * N0_i
/// Realized regret is the same abstention term plus a running sum over the
/// rounds that did not abstain.
class RegretLedger {
 public:
  RegretLedger(const BanditInstance& instance, AbstentionSetting setting);

  void record(const Action& action, const Observation& obs);

  double cumulative_pseudo() const noexcept;
  double cumulative_realized() const noexcept;
  double canonical_pseudo() const noexcept;

  std::uint64_t rounds() const noexcept { return rounds_; }
  const std::vector<ArmCounters>& counters() const noexcept { return counters_; }
  const AbstentionSetting& setting() const noexcept { return setting_; }

 private:
  double abstention_cost() const noexcept;

  std::vector<double> means_;
  std::vector<double> gaps_;
  double best_mean_;
  AbstentionSetting setting_;
  std::vector<ArmCounters> counters_;
  std::uint64_t abstentions_ = 0;
  std::uint64_t rounds_ = 0;
  double realized_ = 0.0;
};

}  // namespace abstain
