#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace abstain::experiments {

enum class Spacing { kLinear, kGeometric };

/// Parses "start:stop:count" into `count` points from start to stop inclusive.
/// count = 1 yields {start}. Geometric spacing needs start, stop > 0.
/// Throws std::invalid_argument on malformed text.
std::vector<double> parse_grid(std::string_view text, Spacing spacing = Spacing::kLinear);

/// Integer time grid: the real grid rounded to the nearest integer, then
/// deduplicated. Every time must be >= 1.
std::vector<std::uint64_t> parse_time_grid(std::string_view text, Spacing spacing = Spacing::kGeometric);

/// Comma-separated list of times, e.g. "100,1000,10000".
std::vector<std::uint64_t> parse_time_list(std::string_view text);

}  // namespace abstain::experiments
