#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "abstain/instance.hpp"
#include "abstain/random.hpp"

namespace abstain::experiments {

/// K = 7: [1.0, 0.7 x 6].
BanditInstance instance_mu_dagger();

/// K = 10: [1.0, 0.7 x 3, 0.5 x 3, 0.3 x 3].
BanditInstance instance_mu_ddagger();

/// K >= 10: arm 1 at 1.0, arms 2..10 at 0.7, the rest uniform on [0.3, 0.5].
BanditInstance instance_random(std::size_t num_arms, RandomStream& rng);

/// The two-instance family behind the fixed-regret minimax lower bound, with
/// delta = min(sqrt(K / T), c):
///   base       arm 1 at delta, all others 0
///   perturbed  base with arm `perturbed_arm` (0-based) raised to 2 delta
/// Requires T >= K >= 2, c > 0 and perturbed_arm in [1, K).
std::pair<BanditInstance, BanditInstance> instance_minimax_hard(std::size_t num_arms, std::uint64_t horizon,
                                                                double c, std::size_t perturbed_arm = 1);

struct MuDagger {};
struct MuDdagger {};
struct RandomInstance {
  std::size_t num_arms;
  std::uint64_t seed;
};
struct MinimaxHard {
  std::size_t num_arms;
  std::uint64_t horizon;
  double c;
  /// 1-based arm raised to 2 delta; empty selects the base instance.
  std::optional<std::size_t> perturbed_arm;
};
struct ExplicitMeans {
  std::vector<double> means;
};

/// Textual forms:
///   mu_dagger | mu_ddagger
///   random:K:SEED
///   minimax_hard:K:T:C        base instance
///   minimax_hard:K:T:C:J      perturbed at 1-based arm J
///   explicit:M1;M2;...        means separated by ';'
///   file:PATH                 one mean per line, '#' starts a comment
struct InstanceSpec {
  std::variant<MuDagger, MuDdagger, RandomInstance, MinimaxHard, ExplicitMeans> kind;
  /// The text the spec was parsed from; used as the CSV instance id.
  std::string id;
};

/// Throws std::invalid_argument on malformed text or violated family
/// constraints, std::runtime_error if a file cannot be read.
InstanceSpec parse_instance_spec(std::string_view text);

BanditInstance materialize(const InstanceSpec& spec);

/// Reads one mean per line; blank lines and '#' comments are skipped.
std::vector<double> load_means_file(const std::string& path);

/// Names and descriptions of the built-in families, for `instances list`.
std::vector<std::pair<std::string, std::string>> instance_catalog();

}  // namespace abstain::experiments
