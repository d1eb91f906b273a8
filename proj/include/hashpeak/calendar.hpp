#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "hashpeak/error.hpp"

namespace hashpeak {

// Day 0 of the model clock is 2009-01-03 00:00 UTC, the day the genesis
// block was mined. All date arithmetic is proleptic-Gregorian UTC.
inline constexpr std::int64_t kGenesisUnixSeconds = 1230940800;

// Days since 1970-01-01 (Howard Hinnant's days_from_civil).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) noexcept {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) noexcept {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2), m, d};
}

inline constexpr std::int64_t kGenesisCivilDays = days_from_civil(2009, 1, 3);
static_assert(kGenesisCivilDays * 86400 == kGenesisUnixSeconds);

constexpr double day_from_unix_seconds(double unix_seconds) noexcept {
  return (unix_seconds - static_cast<double>(kGenesisUnixSeconds)) / 86400.0;
}

/// Parses a strict "YYYY-MM-DD" date into a model day index.
inline double day_from_date(std::string_view date) {
  const auto all_digits = [](std::string_view s) {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return !s.empty();
  };
  if (date.size() != 10 || date[4] != '-' || date[7] != '-' ||
      !all_digits(date.substr(0, 4)) || !all_digits(date.substr(5, 2)) ||
      !all_digits(date.substr(8, 2))) {
    throw Error("invalid date '" + std::string(date) + "' (expected YYYY-MM-DD)");
  }
  const auto to_int = [](std::string_view s) {
    std::int64_t v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
  };
  const std::int64_t y = to_int(date.substr(0, 4));
  const auto m = static_cast<unsigned>(to_int(date.substr(5, 2)));
  const auto d = static_cast<unsigned>(to_int(date.substr(8, 2)));
  const std::int64_t z = days_from_civil(y, m, d);
  const CivilDate round_trip = civil_from_days(z);
  if (round_trip.year != y || round_trip.month != m || round_trip.day != d) {
    throw Error("invalid calendar date '" + std::string(date) + "'");
  }
  return static_cast<double>(z - kGenesisCivilDays);
}

/// Civil date (UTC) of a model day, truncated toward the containing day.
inline std::string date_from_day(double day) {
  const auto z = static_cast<std::int64_t>(day >= 0 ? day : day - 1) + kGenesisCivilDays;
  const CivilDate c = civil_from_days(z);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u", static_cast<long long>(c.year), c.month, c.day);
  return buf;
}

}  // namespace hashpeak
