#pragma once

#include <span>

namespace lullslew {

/// Resolution of every stored power sample, in GW (about 0.23 W).
///
/// Samples and headroom live on a dyadic grid so that the sum or difference
/// of any two of them is exactly representable in a double. That is what lets
/// the per-interval dispatch identities hold bit-for-bit.
inline constexpr double kPowerQuantum = 0x1p-32;

/// Largest magnitude (GW, exclusive) a quantized sample may take.
inline constexpr double kPowerLimit = 0x1p20;

/// Rounds a power reading (GW) to the nearest multiple of kPowerQuantum.
/// Throws DomainError for non-finite values or |gw| >= kPowerLimit.
double quantize_power(double gw);

bool is_quantized(double gw) noexcept;

/// Arithmetic mean. Sequential left-to-right summation, so results are
/// reproducible bit-for-bit.
double mean(std::span<const double> values);

}  // namespace lullslew
