#pragma once

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hashpeak/calendar.hpp"
#include "hashpeak/error.hpp"
#include "hashpeak/series.hpp"

#ifdef HASHPEAK_WITH_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace hashpeak {

struct ChartInfo {
  std::string_view name;
  std::string_view unit;
  double scale;  // provider units -> stored units
};

/// The three charts the model consumes. The provider reports hash rate in
/// TH/s; the model works in GH/s, hence the x1000.
inline constexpr ChartInfo kKnownCharts[] = {
    {"market-price", "USD/BTC", 1.0},
    {"transaction-fees", "BTC/day", 1.0},
    {"hash-rate", "GH/s", 1000.0},
};

inline const ChartInfo& chart_info(std::string_view chart_name) {
  for (const auto& c : kKnownCharts) {
    if (c.name == chart_name) return c;
  }
  throw Error("unknown chart '" + std::string(chart_name) +
              "' (expected market-price | transaction-fees | hash-rate)");
}

/// Endpoint base, overridable for stub servers in tests.
inline std::string chart_base_url() {
  if (const char* env = std::getenv("HASHPEAK_CHART_BASE"); env && *env) return env;
  return "https://api.blockchain.info";
}

/// Transport seam: production uses HttpTransport, tests inject stubs to keep
/// the suite offline and to observe cache behavior.
class ChartTransport {
 public:
  virtual ~ChartTransport() = default;
  virtual std::string get(const std::string& base_url, const std::string& path) = 0;
};

class HttpTransport : public ChartTransport {
 public:
  std::string get(const std::string& base_url, const std::string& path) override {
    httplib::Client client(base_url);
    if (!client.is_valid()) throw Error("invalid chart endpoint '" + base_url + "'");
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    auto res = client.Get(path);
    if (!res) {
      throw Error("request to " + base_url + path + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error("request to " + base_url + path + " returned HTTP " +
                  std::to_string(res->status));
    }
    return res->body;
  }
};

/// Parses the provider's `{values:[{x:unix-seconds,y:number},...]}` payload.
inline ExogenousSeries parse_chart_json(const std::string& body, std::string_view chart_name) {
  const ChartInfo& info = chart_info(chart_name);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error("chart '" + std::string(chart_name) + "': malformed JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) {
    throw Error("chart '" + std::string(chart_name) + "': payload has no values array");
  }
  std::vector<SeriesPoint> pts;
  pts.reserve(doc["values"].size());
  for (const auto& v : doc["values"]) {
    if (!v.is_object() || !v.contains("x") || !v.contains("y") || !v["x"].is_number() ||
        !v["y"].is_number()) {
      throw Error("chart '" + std::string(chart_name) + "': malformed point at index " +
                  std::to_string(pts.size()));
    }
    pts.push_back({day_from_unix_seconds(v["x"].get<double>()),
                   v["y"].get<double>() * info.scale});
  }
  return ExogenousSeries(std::string(chart_name), std::string(info.unit), std::move(pts));
}

/// Returns the named chart, preferring `<cache_dir>/<chart_name>.csv`; on a
/// cache miss, fetches over the transport, caches, and returns. A cache hit
/// never touches the network.
inline ExogenousSeries fetch_chart(std::string_view chart_name,
                                   const std::filesystem::path& cache_dir,
                                   ChartTransport* transport = nullptr,
                                   const std::string& base_url = chart_base_url()) {
  const ChartInfo& info = chart_info(chart_name);
  const std::filesystem::path cache_file = cache_dir / (std::string(chart_name) + ".csv");
  if (std::filesystem::exists(cache_file)) {
    return load_csv(cache_file, std::string(info.unit));
  }

  HttpTransport fallback;
  ChartTransport* t = transport ? transport : &fallback;
  const std::string path = "/charts/" + std::string(chart_name) + "?timespan=all&format=json";
  ExogenousSeries series = parse_chart_json(t->get(base_url, path), chart_name);

  std::filesystem::create_directories(cache_dir);
  write_csv(series, cache_file);
  return series;
}

}  // namespace hashpeak
