#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hashpeak/calendar.hpp"
#include "hashpeak/error.hpp"

namespace hashpeak {

struct SeriesPoint {
  double day;
  double value;
};

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

/// Day-indexed real-valued time series (day 0 = 2009-01-03). Immutable after
/// construction and safe to share across threads. Non-default-constructed
/// series always hold at least two points with strictly increasing days and
/// non-negative values.
class ExogenousSeries {
 public:
  ExogenousSeries() = default;

  ExogenousSeries(std::string name, std::string unit, std::vector<SeriesPoint> points)
      : name_(std::move(name)), unit_(std::move(unit)), points_(std::move(points)) {
    if (points_.size() < 2) {
      throw Error(name_ + ": a series needs at least 2 points, got " +
                  std::to_string(points_.size()));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (!std::isfinite(p.day) || !std::isfinite(p.value)) {
        throw Error(name_ + ": non-finite point at index " + std::to_string(i));
      }
      if (p.value < 0.0) {
        throw Error(name_ + ": negative value " + format_double(p.value) + " at day " +
                    format_double(p.day));
      }
      if (i > 0 && p.day <= points_[i - 1].day) {
        throw Error(name_ + ": days not strictly increasing at day " + format_double(p.day));
      }
    }
  }

  const std::string& name() const { return name_; }
  const std::string& unit() const { return unit_; }
  std::span<const SeriesPoint> points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  double first_day() const { return points_.front().day; }
  double last_day() const { return points_.back().day; }

  /// Linear interpolation between bracketing points; exact at knots.
  /// Lookups outside [first_day, last_day] are an error, never extrapolation.
  double value_at(double t) const {
    if (points_.size() < 2) throw Error(name_ + ": lookup on an empty series");
    if (t < first_day() || t > last_day()) {
      throw Error(name_ + ": day " + format_double(t) + " outside data range [" +
                  format_double(first_day()) + ", " + format_double(last_day()) + "]");
    }
    const auto it = std::lower_bound(
        points_.begin(), points_.end(), t,
        [](const SeriesPoint& p, double day) { return p.day < day; });
    if (it != points_.end() && it->day == t) return it->value;
    const SeriesPoint& hi = *it;
    const SeriesPoint& lo = *(it - 1);
    const double w = (t - lo.day) / (hi.day - lo.day);
    return lo.value + w * (hi.value - lo.value);
  }

 private:
  std::string name_;
  std::string unit_;
  std::vector<SeriesPoint> points_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool looks_like_date(std::string_view s) {
  return s.size() == 10 && s[4] == '-' && s[7] == '-';
}

}  // namespace detail

/// Loads a `day,value` or `date,value` CSV (header optional). Date rows use
/// YYYY-MM-DD and are converted against the 2009-01-03 epoch. Mixing date and
/// day rows in one file is rejected.
inline ExogenousSeries load_csv(const std::filesystem::path& path, std::string unit) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());

  enum class RowKind { unknown, day, date };
  RowKind kind = RowKind::unknown;
  std::vector<SeriesPoint> pts;
  std::string line;
  int lineno = 0;
  const auto fail = [&](const std::string& msg) -> Error {
    return Error(path.string() + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = detail::trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) throw fail("expected 'day,value' or 'date,value'");
    const std::string_view lhs = detail::trim(row.substr(0, comma));
    const std::string_view rhs = detail::trim(row.substr(comma + 1));
    if (pts.empty() && kind == RowKind::unknown && (lhs == "day" || lhs == "date") &&
        rhs == "value") {
      continue;  // header
    }

    double day = 0.0;
    if (detail::looks_like_date(lhs)) {
      if (kind == RowKind::day) throw fail("mixed date and day rows");
      kind = RowKind::date;
      try {
        day = day_from_date(lhs);
      } catch (const Error& e) {
        throw fail(e.what());
      }
    } else {
      if (kind == RowKind::date) throw fail("mixed date and day rows");
      if (!parse_double(lhs, day)) throw fail("malformed day '" + std::string(lhs) + "'");
      kind = RowKind::day;
    }

    double value = 0.0;
    if (!parse_double(rhs, value)) throw fail("malformed value '" + std::string(rhs) + "'");
    if (value < 0.0) throw fail("negative value " + std::string(rhs));
    if (!pts.empty() && day <= pts.back().day) {
      throw fail("day " + format_double(day) + " does not increase past " +
                 format_double(pts.back().day));
    }
    pts.push_back({day, value});
  }
  if (pts.size() < 2) {
    throw Error(path.string() + ": a series needs at least 2 data rows, got " +
                std::to_string(pts.size()));
  }
  return ExogenousSeries(path.stem().string(), std::move(unit), std::move(pts));
}

/// Writes the CSV form read back by load_csv; values round-trip bit-identically.
inline void write_csv(const ExogenousSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "day,value\n";
  for (const auto& p : series.points()) {
    out << format_double(p.day) << ',' << format_double(p.value) << '\n';
  }
}

/// Concatenates a generated future onto a historical series. The future must
/// start at or past the end of the historical data; at an equal boundary day
/// the historical value is kept.
inline ExogenousSeries splice(const ExogenousSeries& historical, const ExogenousSeries& future) {
  if (future.empty()) return historical;
  if (historical.empty()) return future;
  if (!future.unit().empty() && !historical.unit().empty() &&
      future.unit() != historical.unit()) {
    throw Error("splice: unit mismatch (" + historical.unit() + " vs " + future.unit() + ")");
  }
  if (future.first_day() < historical.last_day()) {
    throw Error("splice: future series starts at day " + format_double(future.first_day()) +
                ", inside historical data ending at day " + format_double(historical.last_day()));
  }
  std::vector<SeriesPoint> merged(historical.points().begin(), historical.points().end());
  for (const auto& p : future.points()) {
    if (p.day == historical.last_day()) continue;
    merged.push_back(p);
  }
  return ExogenousSeries(historical.name(), historical.unit(), std::move(merged));
}

}  // namespace hashpeak
