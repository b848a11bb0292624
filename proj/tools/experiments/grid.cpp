#include "experiments/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace abstain::experiments {
namespace {

template <class T>
T parse_field(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("bad grid field '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text, Spacing spacing) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
    throw std::invalid_argument("grid must look like start:stop:count, got '" + std::string(text) + "'");
  }
  const double start = parse_field<double>(text.substr(0, a));
  const double stop = parse_field<double>(text.substr(a + 1, b - a - 1));
  const auto count = parse_field<std::size_t>(text.substr(b + 1));
  if (count == 0) throw std::invalid_argument("grid count must be positive");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw std::invalid_argument("grid bounds must be finite");
  if (spacing == Spacing::kGeometric && (start <= 0.0 || stop <= 0.0)) {
    throw std::invalid_argument("geometric grid bounds must be positive");
  }

  std::vector<double> out;
  out.reserve(count);
  if (count == 1) return {start};
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
    if (i + 1 == count) {
      out.push_back(stop);
    } else if (spacing == Spacing::kLinear) {
      out.push_back(start + (stop - start) * frac);
    } else {
      out.push_back(start * std::exp(std::log(stop / start) * frac));
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_time_grid(std::string_view text, Spacing spacing) {
  std::vector<std::uint64_t> out;
  for (double x : parse_grid(text, spacing)) {
    if (x < 0.5) throw std::invalid_argument("time grid points must be >= 1");
    out.push_back(static_cast<std::uint64_t>(std::llround(x)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> parse_time_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(',', start);
    if (pos == std::string_view::npos) pos = text.size();
    out.push_back(parse_field<std::uint64_t>(text.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

}  // namespace abstain::experiments
