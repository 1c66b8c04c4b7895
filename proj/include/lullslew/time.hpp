#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace lullslew {

using Timestamp = std::chrono::sys_seconds;

inline constexpr std::chrono::seconds kStep{300};
inline constexpr std::size_t kStepsPerHour = 12;
inline constexpr double kStepHours = 1.0 / 12.0;

/// Accepts "YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z|+00:00]". Offsets other than
/// UTC are applied. Returns nullopt on anything else.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Integer or fractional seconds since the Unix epoch.
std::optional<Timestamp> parse_epoch_seconds(std::string_view text);

bool looks_like_epoch(std::string_view text) noexcept;

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(Timestamp t);

Timestamp start_of_year(int year);
int year_of(Timestamp t);

/// Rounds to the nearest 5-minute boundary of the UTC epoch grid.
Timestamp snap_to_step(Timestamp t);

}  // namespace lullslew
