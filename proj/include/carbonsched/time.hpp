#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace carbonsched {

/// Calendar date in the proleptic Gregorian calendar, UTC.
struct CivilDate {
  int year;
  int month;  // 1..12
  int day;    // 1..31
};

/// Days since 1970-01-01 for a civil date (negative before the epoch).
std::int64_t days_from_civil(int year, int month, int day);

/// Inverse of days_from_civil.
CivilDate civil_from_days(std::int64_t days);

int days_in_month(int year, int month);

/// Parses an ISO-8601 UTC timestamp: `YYYY-MM-DD[T ]HH:MM[:SS][Z]`.
/// Throws Error(parse_error) on anything else; offsets other than Z are rejected.
std::int64_t parse_iso8601_utc(std::string_view text);

/// Formats epoch seconds as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601_utc(std::int64_t epoch_s);

/// Uniform UTC time axis shared by every series in a data set.
///
/// Timestamp of step i is start_epoch_s + i * step_minutes * 60 for
/// 0 <= i < n_steps.
struct TimeGrid {
  std::int64_t start_epoch_s = 0;
  int step_minutes = 5;
  std::int64_t n_steps = 1;

  /// Validates the invariants (step divides 60, n_steps >= 1).
  static TimeGrid make(std::int64_t start_epoch_s, int step_minutes, std::int64_t n_steps);

  std::int64_t step_seconds() const { return static_cast<std::int64_t>(step_minutes) * 60; }
  std::int64_t instant_at(std::int64_t index) const { return start_epoch_s + index * step_seconds(); }
  std::int64_t end_epoch_s() const { return instant_at(n_steps); }

  /// Grid index of an instant; throws Error(coverage_error) when the instant
  /// is off the step lattice or outside [start, end).
  std::int64_t index_of(std::int64_t epoch_s) const;

  bool same_axis(const TimeGrid& other) const {
    return start_epoch_s == other.start_epoch_s && step_minutes == other.step_minutes &&
           n_steps == other.n_steps;
  }
};

}  // namespace carbonsched
