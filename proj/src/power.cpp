#include "lullslew/power.hpp"

#include <cmath>
#include <string>

#include "lullslew/error.hpp"

namespace lullslew {

double quantize_power(double gw) {
  if (!std::isfinite(gw) || std::fabs(gw) >= kPowerLimit) {
    throw DomainError("power value out of representable range: " + std::to_string(gw));
  }
  // Scaling by powers of two is exact, so only the rounding step changes gw.
  return std::nearbyint(gw / kPowerQuantum) * kPowerQuantum;
}

bool is_quantized(double gw) noexcept {
  if (!std::isfinite(gw) || std::fabs(gw) >= kPowerLimit) return false;
  const double scaled = gw / kPowerQuantum;
  return scaled == std::nearbyint(scaled);
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace lullslew
