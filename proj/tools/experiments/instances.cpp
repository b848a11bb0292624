#include "experiments/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace abstain::experiments {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

BanditInstance instance_mu_dagger() { return BanditInstance({1.0, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7}); }

BanditInstance instance_mu_ddagger() {
  return BanditInstance({1.0, 0.7, 0.7, 0.7, 0.5, 0.5, 0.5, 0.3, 0.3, 0.3});
}

BanditInstance instance_random(std::size_t num_arms, RandomStream& rng) {
  if (num_arms < 10) throw std::invalid_argument("random instances need K >= 10");
  std::vector<double> means(num_arms);
  means[0] = 1.0;
  std::fill(means.begin() + 1, means.begin() + 10, 0.7);
  for (std::size_t i = 10; i < num_arms; ++i) means[i] = 0.3 + 0.2 * rng.uniform();
  return BanditInstance(std::move(means));
}

std::pair<BanditInstance, BanditInstance> instance_minimax_hard(std::size_t num_arms, std::uint64_t horizon,
                                                                double c, std::size_t perturbed_arm) {
  if (num_arms < 2) throw std::invalid_argument("minimax_hard needs K >= 2");
  if (horizon < num_arms) throw std::invalid_argument("minimax_hard needs T >= K");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("minimax_hard needs a finite c > 0");
  if (perturbed_arm == 0 || perturbed_arm >= num_arms) {
    throw std::invalid_argument("minimax_hard perturbed arm must be a suboptimal arm");
  }
  const double delta = std::min(std::sqrt(static_cast<double>(num_arms) / static_cast<double>(horizon)), c);
  std::vector<double> base(num_arms, 0.0);
  base[0] = delta;
  auto perturbed = base;
  perturbed[perturbed_arm] = 2.0 * delta;
  return {BanditInstance(std::move(base)), BanditInstance(std::move(perturbed))};
}

InstanceSpec parse_instance_spec(std::string_view text) {
  text = trim(text);
  InstanceSpec spec{MuDagger{}, std::string(text)};
  const auto parts = split(text, ':');
  const auto head = parts[0];
  const auto want = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw std::invalid_argument("malformed instance spec '" + std::string(text) + "'");
    }
  };

  if (head == "mu_dagger") {
    want(1, 1);
  } else if (head == "mu_ddagger") {
    want(1, 1);
    spec.kind = MuDdagger{};
  } else if (head == "random") {
    want(3, 3);
    RandomInstance r{parse_number<std::size_t>(parts[1], "K"), parse_number<std::uint64_t>(parts[2], "seed")};
    if (r.num_arms < 10) throw std::invalid_argument("random instances need K >= 10");
    spec.kind = r;
  } else if (head == "minimax_hard") {
    want(4, 5);
    MinimaxHard m{parse_number<std::size_t>(parts[1], "K"), parse_number<std::uint64_t>(parts[2], "T"),
                  parse_number<double>(parts[3], "c"), std::nullopt};
    if (parts.size() == 5) m.perturbed_arm = parse_number<std::size_t>(parts[4], "perturbed arm");
    if (m.num_arms < 2 || m.horizon < m.num_arms) throw std::invalid_argument("minimax_hard needs T >= K >= 2");
    if (!(m.c > 0.0)) throw std::invalid_argument("minimax_hard needs c > 0");
    if (m.perturbed_arm && (*m.perturbed_arm < 2 || *m.perturbed_arm > m.num_arms)) {
      throw std::invalid_argument("minimax_hard perturbed arm must be in 2..K");
    }
    spec.kind = m;
  } else if (head == "explicit") {
    if (parts.size() != 2) throw std::invalid_argument("malformed instance spec '" + std::string(text) + "'");
    ExplicitMeans e;
    for (auto piece : split(parts[1], ';')) e.means.push_back(parse_number<double>(piece, "mean"));
    spec.kind = std::move(e);
  } else if (head == "file") {
    if (text.size() <= 5) throw std::invalid_argument("file: needs a path");
    spec.kind = ExplicitMeans{load_means_file(std::string(text.substr(5)))};
  } else {
    throw std::invalid_argument("unknown instance '" + std::string(text) + "'");
  }
  return spec;
}

BanditInstance materialize(const InstanceSpec& spec) {
  struct Visitor {
    BanditInstance operator()(const MuDagger&) const { return instance_mu_dagger(); }
    BanditInstance operator()(const MuDdagger&) const { return instance_mu_ddagger(); }
    BanditInstance operator()(const RandomInstance& r) const {
      RandomStream rng(r.seed);
      return instance_random(r.num_arms, rng);
    }
    BanditInstance operator()(const MinimaxHard& m) const {
      auto pair = instance_minimax_hard(m.num_arms, m.horizon, m.c, m.perturbed_arm ? *m.perturbed_arm - 1 : 1);
      return m.perturbed_arm ? std::move(pair.second) : std::move(pair.first);
    }
    BanditInstance operator()(const ExplicitMeans& e) const { return BanditInstance(e.means); }
  };
  return std::visit(Visitor{}, spec.kind);
}

std::vector<double> load_means_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read instance file '" + path + "'");
  std::vector<double> means;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    means.push_back(parse_number<double>(view, "mean"));
  }
  return means;
}

std::vector<std::pair<std::string, std::string>> instance_catalog() {
  return {
      {"mu_dagger", "K=7, means [1.0, 0.7 x6]; uniform gaps of 0.3"},
      {"mu_ddagger", "K=10, means [1.0, 0.7 x3, 0.5 x3, 0.3 x3]"},
      {"random:K:SEED", "K>=10, arm 1 at 1.0, arms 2..10 at 0.7, rest Unif[0.3, 0.5]"},
      {"minimax_hard:K:T:C[:J]", "arm 1 at min(sqrt(K/T), C), rest 0; J raises arm J to twice that"},
      {"explicit:M1;M2;...", "means given inline"},
      {"file:PATH", "one mean per line"},
  };
}

}  // namespace abstain::experiments
