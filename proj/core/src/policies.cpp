#include "abstain/policies.hpp"

#include <algorithm>
#include <limits>

namespace abstain {
namespace {

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double require_mean(const ArmStats& stats, std::size_t arm, const char* who) {
  const auto mean = stats.mean(arm);
  if (!mean) throw std::logic_error(std::string(who) + ": arm " + std::to_string(arm + 1) + " has no pulls");
  return *mean;
}

}  // namespace

double kl_ucb_pp_index(const ArmStats& stats, std::size_t arm, std::uint64_t horizon, std::size_t num_arms) {
  if (horizon < num_arms) throw std::invalid_argument("kl_ucb_pp_index: horizon below the number of arms");
  const auto mean = stats.mean(arm);
  if (!mean) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(stats.pulls(arm));
  const double ratio = static_cast<double>(horizon) / (static_cast<double>(num_arms) * n);
  const double lp = log_plus(ratio);
  const double f = log_plus(ratio * lp * lp + 1.0);
  return *mean + std::sqrt(2.0 * f / n);
}

double lcb(const ArmStats& stats, std::size_t arm, std::uint64_t t, double c) {
  const double mean = require_mean(stats, arm, "lcb");
  const double n = static_cast<double>(stats.pulls(arm));
  const double radius = std::sqrt((6.0 * std::log(static_cast<double>(t)) + 2.0 * std::log(std::max(c, 1.0))) / n);
  return mean - radius;
}

bool frg_init_abstain(std::uint64_t t, std::size_t num_arms, double c) {
  return std::sqrt(static_cast<double>(num_arms) / static_cast<double>(t)) >= c;
}

bool frg_abstain(const ArmStats& stats, std::size_t chosen, std::uint64_t t, double c, std::size_t num_arms) {
  if (std::sqrt(static_cast<double>(num_arms) / static_cast<double>(t)) >= c) return true;
  const double chosen_mean = require_mean(stats, chosen, "frg_abstain");
  for (std::size_t i = 0; i < stats.num_arms(); ++i) {
    if (i == chosen) continue;
    if (lcb(stats, i, t, c) - chosen_mean >= c) return true;
  }
  return false;
}

bool frw_abstain(const ArmStats& stats, std::size_t chosen, double c) {
  const auto mean = stats.mean(chosen);
  return mean.has_value() && *mean <= c;
}

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::kLesTs:
      return "les-ts";
    case PolicyKind::kKlUcbPp:
      return "kl-ucb-pp";
    case PolicyKind::kFrgTswa:
      return "frg-tswa";
    case PolicyKind::kFrwTswa:
      return "frw-tswa";
    case PolicyKind::kFrwUcbwa:
      return "frw-ucbwa";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (auto kind : {PolicyKind::kLesTs, PolicyKind::kKlUcbPp, PolicyKind::kFrgTswa, PolicyKind::kFrwTswa,
                    PolicyKind::kFrwUcbwa}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

bool needs_horizon(PolicyKind kind) noexcept {
  return kind == PolicyKind::kKlUcbPp || kind == PolicyKind::kFrwUcbwa;
}

bool abstains(PolicyKind kind) noexcept { return kind != PolicyKind::kLesTs && kind != PolicyKind::kKlUcbPp; }

bool compatible(PolicyKind kind, const AbstentionSetting& setting) noexcept {
  switch (kind) {
    case PolicyKind::kFrgTswa:
      return setting.is_fixed_regret();
    case PolicyKind::kFrwTswa:
    case PolicyKind::kFrwUcbwa:
      return setting.is_fixed_reward();
    default:
      return true;
  }
}

Policy::Policy(PolicyKind kind, std::size_t num_arms, AbstentionSetting setting,
               std::optional<std::uint64_t> horizon)
    : kind_(kind), setting_(setting), horizon_(horizon), stats_(num_arms) {
  if (num_arms == 0) throw std::invalid_argument("policy needs at least one arm");
  if (!compatible(kind, setting)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " is not defined for the " +
                                (setting.is_fixed_regret() ? "fixed-regret" : "fixed-reward") + " setting");
  }
  if (needs_horizon(kind)) {
    if (!horizon) throw std::invalid_argument(std::string(to_string(kind)) + " requires the horizon");
    if (*horizon < num_arms) throw std::invalid_argument("horizon must be at least the number of arms");
  }
}

std::size_t Policy::select_arm(std::uint64_t t, RandomStream& rng) const {
  const std::size_t k = num_arms();
  if (t <= k) return static_cast<std::size_t>(t - 1);
  switch (kind_) {
    case PolicyKind::kLesTs:
    case PolicyKind::kFrgTswa:
    case PolicyKind::kFrwTswa:
      return les_ts_select(stats_, rng);
    case PolicyKind::kKlUcbPp:
    case PolicyKind::kFrwUcbwa: {
      std::size_t best = 0;
      double best_index = kl_ucb_pp_index(stats_, 0, *horizon_, k);
      for (std::size_t i = 1; i < k; ++i) {
        const double index = kl_ucb_pp_index(stats_, i, *horizon_, k);
        if (index > best_index) {
          best = i;
          best_index = index;
        }
      }
      return best;
    }
  }
  return 0;
}

bool Policy::decide_abstain(std::uint64_t t, std::size_t arm) const {
  const double c = setting_.c();
  switch (kind_) {
    case PolicyKind::kFrgTswa:
      return t <= num_arms() ? frg_init_abstain(t, num_arms(), c) : frg_abstain(stats_, arm, t, c, num_arms());
    case PolicyKind::kFrwTswa:
    case PolicyKind::kFrwUcbwa:
      return frw_abstain(stats_, arm, c);
    default:
      return false;
  }
}

Action Policy::step(RandomStream& rng) {
  if (pending_) throw std::logic_error("step called twice without update");
  const std::uint64_t t = time() + 1;
  if (horizon_ && needs_horizon(kind_) && t > *horizon_) {
    throw std::logic_error(std::string(to_string(kind_)) + " stepped past its horizon");
  }
  const std::size_t arm = select_arm(t, rng);
  pending_ = Action{arm, decide_abstain(t, arm)};
  return *pending_;
}

void Policy::update(const Action& action, const Observation& obs) {
  if (!pending_) throw std::logic_error("update called without a pending step");
  if (action != *pending_) throw std::logic_error("update action does not match the pending step");
  stats_.record(action.arm, action.abstain, obs.reward);
  pending_.reset();
}

}  // namespace abstain
