#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <vector>

#include "hashpeak/calendar.hpp"
#include "hashpeak/series.hpp"

using namespace hashpeak;
using Catch::Matchers::ContainsSubstring;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hashpeak-series-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p);
  out << body;
}

}  // namespace

TEST_CASE("series constructor validates points") {
  REQUIRE_NOTHROW(ExogenousSeries("s", "USD/BTC", {{0, 0.0}, {4100, 7300.0}}));

  REQUIRE_THROWS_WITH((ExogenousSeries{"s", "", {{0, 1.0}}}), ContainsSubstring("at least 2"));
  REQUIRE_THROWS_WITH((ExogenousSeries{"s", "", {{5, 1.0}, {5, 2.0}}}),
                      ContainsSubstring("strictly increasing"));
  REQUIRE_THROWS_WITH((ExogenousSeries{"s", "", {{0, 1.0}, {-1, 2.0}}}),
                      ContainsSubstring("strictly increasing"));
  REQUIRE_THROWS_WITH((ExogenousSeries{"s", "", {{0, 1.0}, {1, -0.5}}}),
                      ContainsSubstring("negative"));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_WITH((ExogenousSeries{"s", "", {{0, 1.0}, {1, nan}}}),
                      ContainsSubstring("non-finite"));
}

TEST_CASE("value_at interpolates linearly and is exact at knots") {
  const ExogenousSeries s("s", "", {{0, 10.0}, {10, 20.0}});
  CHECK(s.value_at(5) == 15.0);
  CHECK(s.value_at(10) == 20.0);
  CHECK(s.value_at(0) == 10.0);
  REQUIRE_THROWS_WITH(s.value_at(11), ContainsSubstring("outside data range"));
  REQUIRE_THROWS_WITH(s.value_at(-0.5), ContainsSubstring("outside data range"));
}

TEST_CASE("value_at returns stored values exactly at every knot") {
  std::vector<SeriesPoint> pts;
  for (int i = 0; i < 50; ++i) {
    pts.push_back({i * 3.7, 0.1 + 1e9 * i + (i % 7) * 0.0123});
  }
  const ExogenousSeries s("s", "", pts);
  for (const auto& p : pts) CHECK(s.value_at(p.day) == p.value);
}

TEST_CASE("load_csv accepts day rows with or without header") {
  const auto p = temp_file("days.csv");
  write_file(p, "day,value\n0,0.0\n4100,7300.0\n");
  const auto s = load_csv(p, "USD/BTC");
  REQUIRE(s.size() == 2);
  CHECK(s.points()[0].day == 0.0);
  CHECK(s.points()[1].value == 7300.0);
  CHECK(s.unit() == "USD/BTC");

  const auto q = temp_file("bare.csv");
  write_file(q, "1,2\n3,4\n");
  CHECK(load_csv(q, "").size() == 2);
}

TEST_CASE("load_csv converts dates against the 2009-01-03 epoch") {
  const auto p = temp_file("dates.csv");
  write_file(p, "date,value\n2009-01-03,0\n2009-01-04,5\n2020-03-26,7\n");
  const auto s = load_csv(p, "");
  CHECK(s.points()[0].day == 0.0);
  CHECK(s.points()[1].day == 1.0);
  CHECK(s.points()[2].day == day_from_date("2020-03-26"));
}

TEST_CASE("load_csv rejects malformed input with line numbers") {
  const auto bad_value = temp_file("bad_value.csv");
  write_file(bad_value, "0,1\n2,oops\n");
  REQUIRE_THROWS_WITH(load_csv(bad_value, ""), ContainsSubstring(":2:"));

  const auto mixed = temp_file("mixed.csv");
  write_file(mixed, "0,1\n2009-06-01,2\n");
  REQUIRE_THROWS_WITH(load_csv(mixed, ""), ContainsSubstring("mixed date and day"));

  const auto dup = temp_file("dup.csv");
  write_file(dup, "5,1.0\n5,2.0\n");
  REQUIRE_THROWS_WITH(load_csv(dup, ""), ContainsSubstring("does not increase"));

  const auto neg = temp_file("neg.csv");
  write_file(neg, "0,1\n1,-3\n");
  REQUIRE_THROWS_WITH(load_csv(neg, ""), ContainsSubstring("negative"));

  const auto no_comma = temp_file("no_comma.csv");
  write_file(no_comma, "0 1\n");
  REQUIRE_THROWS_WITH(load_csv(no_comma, ""), ContainsSubstring(":1:"));

  const auto short_file = temp_file("short.csv");
  write_file(short_file, "day,value\n1,2\n");
  REQUIRE_THROWS_WITH(load_csv(short_file, ""), ContainsSubstring("at least 2 data rows"));

  REQUIRE_THROWS_WITH(load_csv(temp_file("nonexistent.csv"), ""),
                      ContainsSubstring("cannot open"));
}

TEST_CASE("load_csv skips blank and comment lines") {
  const auto p = temp_file("comments.csv");
  write_file(p, "# seed=42 generator=x\nday,value\n\n0,1\n \t\n7,2\n");
  const auto s = load_csv(p, "");
  REQUIRE(s.size() == 2);
  CHECK(s.points()[1].day == 7.0);
}

TEST_CASE("write_csv then load_csv round-trips bit-identically") {
  std::vector<SeriesPoint> pts = {
      {0, 0.1},
      {7.000000000000001, 1e11},
      {14, 109999999999.99986},
      {4100, 2.2250738585072014e-308},
  };
  const ExogenousSeries s("round", "GH/s", pts);
  const auto p = temp_file("roundtrip.csv");
  write_csv(s, p);
  const auto back = load_csv(p, "GH/s");
  REQUIRE(back.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back.points()[i].day == pts[i].day);
    CHECK(back.points()[i].value == pts[i].value);
  }
}

TEST_CASE("splice keeps the historical value at the boundary") {
  const ExogenousSeries hist("h", "USD/BTC", {{0, 1.0}, {4100, 42.0}});
  const ExogenousSeries future("f", "USD/BTC", {{4100, 99.0}, {4200, 7.0}});
  const auto merged = splice(hist, future);
  REQUIRE(merged.size() == 3);
  CHECK(merged.value_at(4100) == 42.0);
  CHECK(merged.value_at(4200) == 7.0);
  CHECK(merged.last_day() == 4200.0);
}

TEST_CASE("splice rejects overlapping interiors and unit mismatches") {
  const ExogenousSeries hist("h", "USD/BTC", {{0, 1.0}, {4100, 42.0}});
  const ExogenousSeries inside("f", "USD/BTC", {{4000, 1.0}, {4200, 7.0}});
  REQUIRE_THROWS_WITH(splice(hist, inside), ContainsSubstring("inside historical data"));

  const ExogenousSeries wrong_unit("f", "BTC/day", {{4100, 1.0}, {4200, 7.0}});
  REQUIRE_THROWS_WITH(splice(hist, wrong_unit), ContainsSubstring("unit mismatch"));
}

TEST_CASE("splice with empty future is the identity") {
  const ExogenousSeries hist("h", "USD/BTC", {{0, 1.0}, {4100, 42.0}});
  const auto merged = splice(hist, ExogenousSeries{});
  REQUIRE(merged.size() == 2);
  CHECK(merged.value_at(4100) == 42.0);
}

TEST_CASE("splice preserves day monotonicity and every historical point") {
  const ExogenousSeries hist("h", "", {{0, 1.0}, {50, 2.0}, {100, 3.0}});
  const ExogenousSeries future("f", "", {{150, 4.0}, {200, 5.0}});
  const auto merged = splice(hist, future);
  REQUIRE(merged.size() == 5);
  for (std::size_t i = 1; i < merged.size(); ++i) {
    CHECK(merged.points()[i].day > merged.points()[i - 1].day);
  }
  for (const auto& p : hist.points()) CHECK(merged.value_at(p.day) == p.value);
}

TEST_CASE("date conversion round-trips and rejects nonsense") {
  CHECK(day_from_date("2009-01-03") == 0.0);
  CHECK(day_from_date("2009-01-04") == 1.0);
  CHECK(date_from_day(0) == "2009-01-03");
  CHECK(date_from_day(4375) == "2020-12-26");
  CHECK(day_from_date(date_from_day(12345)) == 12345.0);
  REQUIRE_THROWS_WITH(day_from_date("2009-02-30"), ContainsSubstring("invalid calendar date"));
  REQUIRE_THROWS_WITH(day_from_date("03/01/2009"), ContainsSubstring("expected YYYY-MM-DD"));
  REQUIRE_THROWS_WITH(day_from_date("2009-1-03"), ContainsSubstring("expected YYYY-MM-DD"));
}
