#include "carbonsched/time.hpp"

#include <cstdio>

#include "carbonsched/error.hpp"

namespace carbonsched {

std::int64_t days_from_civil(int y, int m, int d) {
  // Howard Hinnant's algorithm, valid far beyond any trace we handle.
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                       static_cast<unsigned>(d) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int days_in_month(int year, int month) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) fail(Errc::invalid_argument, "month out of range");
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

std::int64_t parse_iso8601_utc(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  int consumed = 0;
  const std::string buf(text);
  int fields = std::sscanf(buf.c_str(), "%4d-%2d-%2d%c%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi,
                           &consumed);
  if (fields != 6 || (sep != 'T' && sep != ' '))
    fail(Errc::parse_error, "unparseable timestamp: \"" + buf + "\"");
  const char* rest = buf.c_str() + consumed;
  if (*rest == ':') {
    int n = 0;
    if (std::sscanf(rest, ":%2d%n", &s, &n) != 1)
      fail(Errc::parse_error, "unparseable seconds in \"" + buf + "\"");
    rest += n;
  }
  if (*rest == 'Z') ++rest;
  if (*rest != '\0') fail(Errc::parse_error, "trailing garbage in timestamp \"" + buf + "\"");
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || s < 0 || s > 59)
    fail(Errc::parse_error, "timestamp field out of range in \"" + buf + "\"");
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601_utc(std::int64_t epoch_s) {
  std::int64_t days = epoch_s / 86400;
  std::int64_t rem = epoch_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const CivilDate date = civil_from_days(days);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", date.year, date.month,
                date.day, static_cast<int>(rem / 3600), static_cast<int>(rem % 3600 / 60),
                static_cast<int>(rem % 60));
  return buf;
}

TimeGrid TimeGrid::make(std::int64_t start_epoch_s, int step_minutes, std::int64_t n_steps) {
  if (step_minutes <= 0 || 60 % step_minutes != 0)
    fail(Errc::invalid_argument, "grid step must be a positive divisor of 60 minutes");
  if (n_steps < 1) fail(Errc::invalid_argument, "grid needs at least one step");
  return TimeGrid{start_epoch_s, step_minutes, n_steps};
}

std::int64_t TimeGrid::index_of(std::int64_t epoch_s) const {
  const std::int64_t delta = epoch_s - start_epoch_s;
  if (delta % step_seconds() != 0)
    fail(Errc::coverage_error,
         "instant " + format_iso8601_utc(epoch_s) + " is off the " +
             std::to_string(step_minutes) + "-minute grid");
  const std::int64_t index = delta / step_seconds();
  if (index < 0 || index >= n_steps)
    fail(Errc::coverage_error,
         "instant " + format_iso8601_utc(epoch_s) + " lies outside the trace (" +
             format_iso8601_utc(start_epoch_s) + " .. " + format_iso8601_utc(end_epoch_s()) + ")");
  return index;
}

}  // namespace carbonsched
