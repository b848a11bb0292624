#include "abstain/regret.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abstain {

InstantRegret instant_regret_rg(const BanditInstance& instance, std::size_t arm, bool abstain, double c,
                                double reward) {
  if (abstain) return {c, c};
  return {instance.best_mean() - instance.mean(arm), instance.best_mean() - reward};
}

InstantRegret instant_regret_rw(const BanditInstance& instance, std::size_t arm, bool abstain, double c,
                                double reward) {
  const double m = std::max(instance.best_mean(), c);
  if (abstain) return {m - c, m - c};
  return {m - instance.mean(arm), m - reward};
}

InstantRegret instant_regret(const BanditInstance& instance, const AbstentionSetting& setting, const Action& action,
                             double reward) {
  return setting.is_fixed_regret() ? instant_regret_rg(instance, action.arm, action.abstain, setting.c(), reward)
                                   : instant_regret_rw(instance, action.arm, action.abstain, setting.c(), reward);
}

double asymptotic_constant_rg(const BanditInstance& instance, double c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best_arm()) continue;
    const double gap = instance.best_mean() - instance.mean(i);
    sum += std::min(gap, c) / (gap * gap);
  }
  return 2.0 * sum;
}

double asymptotic_constant_rw(const BanditInstance& instance, double c) {
  const double top = std::max(instance.best_mean(), c);
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best_arm()) continue;
    const double gap = instance.best_mean() - instance.mean(i);
    sum += (top - std::max(instance.mean(i), c)) / (gap * gap);
  }
  return 2.0 * sum;
}

double asymptotic_constant(const BanditInstance& instance, const AbstentionSetting& setting) {
  return setting.is_fixed_regret() ? asymptotic_constant_rg(instance, setting.c())
                                   : asymptotic_constant_rw(instance, setting.c());
}

double canonical_constant(const BanditInstance& instance) {
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.num_arms(); ++i) {
    if (i != instance.best_arm()) sum += 2.0 / (instance.best_mean() - instance.mean(i));
  }
  return sum;
}

std::vector<double> lb_curve(double constant, std::span<const std::uint64_t> t_grid) {
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (auto t : t_grid) {
    if (t == 0) throw std::invalid_argument("lb_curve: times start at 1");
    out.push_back(constant * std::log(static_cast<double>(t)));
  }
  return out;
}

double minimax_rate_rg(std::size_t num_arms, std::uint64_t horizon, double c) {
  const double t = static_cast<double>(horizon);
  return std::min(std::sqrt(static_cast<double>(num_arms) * t), c * t);
}

double minimax_rate_rw(std::size_t num_arms, std::uint64_t horizon) {
  return std::sqrt(static_cast<double>(num_arms) * static_cast<double>(horizon));
}

RegretLedger::RegretLedger(const BanditInstance& instance, AbstentionSetting setting)
    : means_(instance.means().begin(), instance.means().end()),
      gaps_(suboptimality_gaps(instance).gaps),
      best_mean_(instance.best_mean()),
      setting_(setting),
      counters_(instance.num_arms()) {}

void RegretLedger::record(const Action& action, const Observation& obs) {
  auto& c = counters_.at(action.arm);
  ++c.pulls;
  if (action.abstain) {
    ++c.pulls_abstain;
    ++abstentions_;
  } else {
    ++c.pulls_no_abstain;
  }
  ++rounds_;

  if (!action.abstain) {
    const double top = setting_.is_fixed_regret() ? best_mean_ : std::max(best_mean_, setting_.c());
    realized_ += top - obs.reward;
  }
}

double RegretLedger::abstention_cost() const noexcept {
  const double cost = setting_.c();
  return setting_.is_fixed_regret() ? cost : std::max(best_mean_, cost) - cost;
}

double RegretLedger::cumulative_realized() const noexcept {
  return abstention_cost() * static_cast<double>(abstentions_) + realized_;
}

double RegretLedger::cumulative_pseudo() const noexcept {
  double sum = abstention_cost() * static_cast<double>(abstentions_);
  if (setting_.is_fixed_regret()) {
    for (std::size_t i = 0; i < counters_.size(); ++i) {
      sum += gaps_[i] * static_cast<double>(counters_[i].pulls_no_abstain);
    }
  } else {
    const double top = std::max(best_mean_, setting_.c());
    for (std::size_t i = 0; i < counters_.size(); ++i) {
      sum += (top - means_[i]) * static_cast<double>(counters_[i].pulls_no_abstain);
    }
  }
  return sum;
}

double RegretLedger::canonical_pseudo() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < counters_.size(); ++i) sum += gaps_[i] * static_cast<double>(counters_[i].pulls);
  return sum;
}

}  // namespace abstain
