#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "abstain/random.hpp"

namespace abstain {

/// Ground truth of a Gaussian bandit: arm means with a strictly unique maximum.
/// Rewards are N(mean, 1). Arms are 0-based here; the CLI and CSV are 1-based.
class BanditInstance {
 public:
  /// Throws std::invalid_argument on an empty vector, a non-finite mean or a
  /// tied maximum.
  explicit BanditInstance(std::vector<double> means);

  std::size_t num_arms() const noexcept { return means_.size(); }
  std::size_t best_arm() const noexcept { return best_arm_; }
  double best_mean() const noexcept { return means_[best_arm_]; }
  double mean(std::size_t arm) const { return means_.at(arm); }
  std::span<const double> means() const noexcept { return means_; }

 private:
  std::vector<double> means_;
  std::size_t best_arm_ = 0;
};

BanditInstance make_instance(std::vector<double> means);

/// gaps[i] = best mean - means[i]; zero exactly at the best arm.
struct GapVector {
  std::vector<double> gaps;
};

GapVector suboptimality_gaps(const BanditInstance& instance);

/// Abstaining costs a fixed regret c > 0.
struct FixedRegret {
  double c;
};

/// Abstaining pays a fixed reward c (any finite real).
struct FixedReward {
  double c;
};

class AbstentionSetting {
 public:
  /// Throws std::invalid_argument unless c is finite (and positive for
  /// FixedRegret).
  AbstentionSetting(FixedRegret s);
  AbstentionSetting(FixedReward s);

  bool is_fixed_regret() const noexcept { return std::holds_alternative<FixedRegret>(variant_); }
  bool is_fixed_reward() const noexcept { return std::holds_alternative<FixedReward>(variant_); }
  double c() const noexcept;

  const std::variant<FixedRegret, FixedReward>& variant() const noexcept { return variant_; }

 private:
  std::variant<FixedRegret, FixedReward> variant_;
};

struct Action {
  std::size_t arm = 0;
  bool abstain = false;

  friend bool operator==(const Action&, const Action&) = default;
};

/// The reward sample is observed whether or not the agent abstained.
struct Observation {
  double reward = 0.0;
};

/// mean[arm] + z with z drawn by one RandomStream::gaussian() call.
Observation sample_reward(const BanditInstance& instance, std::size_t arm, RandomStream& rng);

}  // namespace abstain
