#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abstain/arm_stats.hpp"
#include "abstain/instance.hpp"
#include "abstain/random.hpp"

namespace abstain {

/// Anything that can hand out Bernoulli and standard-normal variates.
/// RandomStream is the production model; tests script their own.
template <class S>
concept VariateSource = requires(S s, double p) {
  { s.bernoulli(p) } -> std::convertible_to<bool>;
  { s.gaussian() } -> std::convertible_to<double>;
};

// ---------------------------------------------------------------------------
// Arm sampling rules

/// Less-Exploring Thompson Sampling selection. For each arm in ascending
/// order draw Bernoulli(1/K); on success also draw z and score the arm
/// mean + z / sqrt(N), else score it with its empirical mean. Returns the
/// highest score, lowest index on ties. Every arm must have been pulled.
template <VariateSource S>
std::size_t les_ts_select(const ArmStats& stats, S& rng) {
  const std::size_t k = stats.num_arms();
  const double explore_prob = 1.0 / static_cast<double>(k);
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto mean = stats.mean(i);
    if (!mean) throw std::logic_error("les_ts_select: arm " + std::to_string(i + 1) + " has no pulls");
    double score = *mean;
    if (rng.bernoulli(explore_prob)) {
      score += rng.gaussian() / std::sqrt(static_cast<double>(stats.pulls(i)));
    }
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

/// KL-UCB++ index for unit-variance Gaussian rewards:
///   mean + sqrt(2 f(N) / N),  f(N) = log+( (T/(K N)) * log+(T/(K N))^2 + 1 ),
/// with log+(x) = max(ln x, 0). Unpulled arms have an infinite index.
/// Throws std::invalid_argument if horizon < K.
double kl_ucb_pp_index(const ArmStats& stats, std::size_t arm, std::uint64_t horizon, std::size_t num_arms);

// ---------------------------------------------------------------------------
// Abstention rules. None of these consume randomness.

/// mean - sqrt((6 ln t + 2 ln max(c, 1)) / N). Throws std::logic_error on an
/// unpulled arm.
double lcb(const ArmStats& stats, std::size_t arm, std::uint64_t t, double c);

/// Initialization phase (t <= K): abstain iff sqrt(K / t) >= c.
bool frg_init_abstain(std::uint64_t t, std::size_t num_arms, double c);

/// Abstain iff some other arm's lcb exceeds the chosen arm's empirical mean by
/// at least c, or sqrt(K / t) >= c.
bool frg_abstain(const ArmStats& stats, std::size_t chosen, std::uint64_t t, double c, std::size_t num_arms);

/// Abstain iff the chosen arm's empirical mean is <= c. An unpulled arm is
/// never abstained on.
bool frw_abstain(const ArmStats& stats, std::size_t chosen, double c);

// ---------------------------------------------------------------------------
// Policies

enum class PolicyKind {
  kLesTs,     ///< Less-Exploring Thompson Sampling, never abstains.
  kKlUcbPp,   ///< KL-UCB++, never abstains. Needs the horizon.
  kFrgTswa,   ///< Fixed-regret TS with abstention.
  kFrwTswa,   ///< Fixed-reward wrapper over Less-Exploring TS.
  kFrwUcbwa,  ///< Fixed-reward wrapper over KL-UCB++. Needs the horizon.
};

std::string_view to_string(PolicyKind kind) noexcept;
/// Accepts the names printed by to_string: les-ts, kl-ucb-pp, frg-tswa,
/// frw-tswa, frw-ucbwa. Throws std::invalid_argument otherwise.
PolicyKind parse_policy_kind(std::string_view name);
bool needs_horizon(PolicyKind kind) noexcept;
/// False for the two baselines.
bool abstains(PolicyKind kind) noexcept;
/// Which settings a policy is defined for: FRG needs fixed-regret, the FRW
/// wrappers need fixed-reward, baselines run under either.
bool compatible(PolicyKind kind, const AbstentionSetting& setting) noexcept;

/// A policy's full mutable state. Drive it with step() then update() once per
/// round. The first K rounds pull arms 1..K in order for every kind.
class Policy {
 public:
  /// Throws std::invalid_argument if the kind is incompatible with the
  /// setting, or if a horizon-dependent kind gets no horizon or one below K.
  Policy(PolicyKind kind, std::size_t num_arms, AbstentionSetting setting,
         std::optional<std::uint64_t> horizon = std::nullopt);

  /// Chooses the next action. Throws std::logic_error if an action is already
  /// pending or a horizon-dependent policy is stepped past its horizon.
  Action step(RandomStream& rng);

  /// Folds the observation into the statistics of the pending action's arm.
  /// Throws std::logic_error without a pending action or on a mismatched
  /// action.
  void update(const Action& action, const Observation& obs);

  PolicyKind kind() const noexcept { return kind_; }
  std::size_t num_arms() const noexcept { return stats_.num_arms(); }
  /// Number of completed rounds.
  std::uint64_t time() const noexcept { return stats_.total_pulls(); }
  const ArmStats& stats() const noexcept { return stats_; }
  const AbstentionSetting& setting() const noexcept { return setting_; }

 private:
  std::size_t select_arm(std::uint64_t t, RandomStream& rng) const;
  bool decide_abstain(std::uint64_t t, std::size_t arm) const;

  PolicyKind kind_;
  AbstentionSetting setting_;
  std::optional<std::uint64_t> horizon_;
  ArmStats stats_;
  std::optional<Action> pending_;
};

}  // namespace abstain
