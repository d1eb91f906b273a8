#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>

#include "hashpeak/chart_client.hpp"

using namespace hashpeak;
using Catch::Matchers::ContainsSubstring;

namespace {

// Two daily points starting at the genesis day.
constexpr const char* kTwoPointPayload = R"({
  "status": "ok",
  "name": "whatever",
  "values": [
    {"x": 1230940800, "y": 1.5},
    {"x": 1231027200, "y": 2.5}
  ]
})";

class StubTransport : public ChartTransport {
 public:
  explicit StubTransport(std::string body) : body_(std::move(body)) {}

  std::string get(const std::string& base_url, const std::string& path) override {
    ++calls;
    last_base = base_url;
    last_path = path;
    return body_;
  }

  int calls = 0;
  std::string last_base;
  std::string last_path;

 private:
  std::string body_;
};

class OfflineTransport : public ChartTransport {
 public:
  std::string get(const std::string&, const std::string&) override {
    throw Error("network unreachable");
  }
};

std::filesystem::path fresh_cache_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hashpeak-chart-tests" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("chart metadata knows the three charts") {
  CHECK(chart_info("market-price").unit == "USD/BTC");
  CHECK(chart_info("transaction-fees").unit == "BTC/day");
  CHECK(chart_info("hash-rate").unit == "GH/s");
  CHECK(chart_info("hash-rate").scale == 1000.0);
  CHECK(chart_info("market-price").scale == 1.0);
  REQUIRE_THROWS_WITH(chart_info("difficulty"), ContainsSubstring("unknown chart"));
}

TEST_CASE("payload timestamps convert to days since genesis") {
  const auto s = parse_chart_json(kTwoPointPayload, "market-price");
  REQUIRE(s.size() == 2);
  CHECK(s.points()[0].day == 0.0);
  CHECK(s.points()[1].day == 1.0);
  CHECK(s.points()[0].value == 1.5);
  CHECK(s.unit() == "USD/BTC");
}

TEST_CASE("hash-rate payloads are scaled from TH/s to GH/s") {
  const auto s = parse_chart_json(kTwoPointPayload, "hash-rate");
  CHECK(s.points()[0].value == 1500.0);
  CHECK(s.points()[1].value == 2500.0);
  CHECK(s.unit() == "GH/s");
}

TEST_CASE("malformed payloads are rejected with the chart name") {
  REQUIRE_THROWS_WITH(parse_chart_json("{\"values\": [{\"x\": 123", "market-price"),
                      ContainsSubstring("malformed JSON"));
  REQUIRE_THROWS_WITH(parse_chart_json("{\"status\": \"ok\"}", "market-price"),
                      ContainsSubstring("no values array"));
  REQUIRE_THROWS_WITH(parse_chart_json("[1, 2, 3]", "market-price"),
                      ContainsSubstring("no values array"));
  REQUIRE_THROWS_WITH(
      parse_chart_json(R"({"values": [{"x": 1230940800, "y": "n/a"}]})", "market-price"),
      ContainsSubstring("malformed point at index 0"));
}

TEST_CASE("fetch_chart asks the provider once and caches the result") {
  const auto cache = fresh_cache_dir("fetch-once");
  StubTransport stub(kTwoPointPayload);

  const auto first = fetch_chart("hash-rate", cache, &stub, "http://stub");
  CHECK(stub.calls == 1);
  CHECK(stub.last_base == "http://stub");
  CHECK(stub.last_path == "/charts/hash-rate?timespan=all&format=json");
  CHECK(first.points()[0].value == 1500.0);
  REQUIRE(std::filesystem::exists(cache / "hash-rate.csv"));

  // Second call is served from the cache without touching the network.
  const auto second = fetch_chart("hash-rate", cache, &stub, "http://stub");
  CHECK(stub.calls == 1);
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(second.points()[i].day == first.points()[i].day);
    CHECK(second.points()[i].value == first.points()[i].value);
  }
}

TEST_CASE("a warm cache needs no transport at all") {
  const auto cache = fresh_cache_dir("warm");
  StubTransport stub(kTwoPointPayload);
  fetch_chart("market-price", cache, &stub, "http://stub");

  OfflineTransport offline;
  const auto s = fetch_chart("market-price", cache, &offline, "http://stub");
  CHECK(s.size() == 2);
}

TEST_CASE("a cold cache with no network propagates the failure") {
  const auto cache = fresh_cache_dir("cold");
  OfflineTransport offline;
  REQUIRE_THROWS_WITH(fetch_chart("market-price", cache, &offline, "http://stub"),
                      ContainsSubstring("network unreachable"));
  CHECK_FALSE(std::filesystem::exists(cache / "market-price.csv"));
}

TEST_CASE("a bad payload never creates a cache file") {
  const auto cache = fresh_cache_dir("bad-payload");
  StubTransport stub("{\"values\": \"nope\"}");
  REQUIRE_THROWS_WITH(fetch_chart("transaction-fees", cache, &stub, "http://stub"),
                      ContainsSubstring("no values array"));
  CHECK_FALSE(std::filesystem::exists(cache / "transaction-fees.csv"));
}
