#include "abstain/random.hpp"

#include <cmath>
#include <numbers>

namespace abstain {

double RandomStream::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  // 1 - u1 lies in (0, 1], so the log is finite.
  const double radius = std::sqrt(-2.0 * std::log1p(-u1));
  return radius * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace abstain
