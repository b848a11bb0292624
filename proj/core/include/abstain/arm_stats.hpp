#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace abstain {

struct ArmCounters {
  std::uint64_t pulls = 0;
  std::uint64_t pulls_no_abstain = 0;
  std::uint64_t pulls_abstain = 0;

  friend bool operator==(const ArmCounters&, const ArmCounters&) = default;
};

/// Per-arm pull counts and reward sums.
///
/// An arm that has never been pulled has an unbounded empirical mean; mean()
/// reports that as std::nullopt and callers order it above every finite value.
class ArmStats {
 public:
  explicit ArmStats(std::size_t num_arms) : counters_(num_arms), sums_(num_arms, 0.0) {}

  std::size_t num_arms() const noexcept { return counters_.size(); }
  std::uint64_t total_pulls() const noexcept { return total_; }

  const ArmCounters& counters(std::size_t arm) const { return counters_.at(arm); }
  const std::vector<ArmCounters>& all_counters() const noexcept { return counters_; }
  std::uint64_t pulls(std::size_t arm) const { return counters_.at(arm).pulls; }
  double sum_rewards(std::size_t arm) const { return sums_.at(arm); }

  std::optional<double> mean(std::size_t arm) const {
    const auto n = pulls(arm);
    if (n == 0) return std::nullopt;
    return sums_[arm] / static_cast<double>(n);
  }

  bool all_pulled() const noexcept {
    for (const auto& c : counters_) {
      if (c.pulls == 0) return false;
    }
    return true;
  }

  void record(std::size_t arm, bool abstained, double reward) {
    auto& c = counters_.at(arm);
    ++c.pulls;
    ++(abstained ? c.pulls_abstain : c.pulls_no_abstain);
    sums_[arm] += reward;
    ++total_;
  }

 private:
  std::vector<ArmCounters> counters_;
  std::vector<double> sums_;
  std::uint64_t total_ = 0;
};

}  // namespace abstain
