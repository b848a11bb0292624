#include "abstain/instance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace abstain {

BanditInstance::BanditInstance(std::vector<double> means) : means_(std::move(means)) {
  if (means_.empty()) {
    throw std::invalid_argument("bandit instance needs at least one arm");
  }
  for (std::size_t i = 0; i < means_.size(); ++i) {
    if (!std::isfinite(means_[i])) {
      throw std::invalid_argument("arm " + std::to_string(i + 1) + " has a non-finite mean");
    }
    if (means_[i] > means_[best_arm_]) best_arm_ = i;
  }
  for (std::size_t i = 0; i < means_.size(); ++i) {
    if (i != best_arm_ && means_[i] == means_[best_arm_]) {
      throw std::invalid_argument("maximum mean is tied between arms " + std::to_string(best_arm_ + 1) +
                                  " and " + std::to_string(i + 1));
    }
  }
}

BanditInstance make_instance(std::vector<double> means) { return BanditInstance(std::move(means)); }

GapVector suboptimality_gaps(const BanditInstance& instance) {
  GapVector out;
  out.gaps.reserve(instance.num_arms());
  for (double m : instance.means()) out.gaps.push_back(instance.best_mean() - m);
  return out;
}

AbstentionSetting::AbstentionSetting(FixedRegret s) : variant_(s) {
  if (!std::isfinite(s.c) || s.c <= 0.0) {
    throw std::invalid_argument("fixed-regret abstention cost must be finite and positive");
  }
}

AbstentionSetting::AbstentionSetting(FixedReward s) : variant_(s) {
  if (!std::isfinite(s.c)) throw std::invalid_argument("fixed-reward abstention value must be finite");
}

double AbstentionSetting::c() const noexcept {
  return std::visit([](const auto& s) { return s.c; }, variant_);
}

Observation sample_reward(const BanditInstance& instance, std::size_t arm, RandomStream& rng) {
  if (arm >= instance.num_arms()) throw std::out_of_range("arm index out of range");
  return Observation{instance.mean(arm) + rng.gaussian()};
}

}  // namespace abstain
