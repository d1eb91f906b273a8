// Regenerates the bundled data fixtures in data/.
//
// The three series are hand-digitized anchor approximations of the public
// blockchain.com charts (market-price, transaction-fees, hash-rate), sampled
// weekly over days 0..4100 with geometric interpolation between anchors.
// They are test fixtures, not measurement-grade data; use the `fetch`
// subcommand for the real series.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "hashpeak/series.hpp"

namespace {

using hashpeak::ExogenousSeries;
using hashpeak::SeriesPoint;

// Geometric between positive anchors (the series span many decades), linear
// when either endpoint is zero.
double interp(const SeriesPoint& a, const SeriesPoint& b, double day) {
  const double w = (day - a.day) / (b.day - a.day);
  if (a.value > 0.0 && b.value > 0.0) {
    return std::exp(std::log(a.value) + w * (std::log(b.value) - std::log(a.value)));
  }
  return a.value + w * (b.value - a.value);
}

ExogenousSeries weekly(const std::string& name, const std::string& unit,
                       const std::vector<SeriesPoint>& anchors) {
  std::vector<SeriesPoint> pts;
  std::size_t seg = 0;
  const auto sample = [&](double day) {
    while (seg + 2 < anchors.size() && anchors[seg + 1].day <= day) ++seg;
    pts.push_back({day, interp(anchors[seg], anchors[seg + 1], day)});
  };
  for (double day = 0.0; day <= 4095.0; day += 7.0) sample(day);
  sample(4100.0);
  return ExogenousSeries(name, unit, std::move(pts));
}

// USD per BTC. Anchors: launch at zero, first quoted prices late 2009, the
// 2011/2013 bubbles, the 2015 trough, the 2017 mania, the 2018 winter, the
// 2019 recovery, and the March 2020 crash.
ExogenousSeries price_series() {
  return weekly("market-price", "USD/BTC",
                {
                    {0, 0.0},
                    {250, 0.0},
                    {275, 0.001},
                    {450, 0.003},
                    {561, 0.07},
                    {670, 0.25},
                    {767, 1.0},
                    {886, 29.0},
                    {1049, 2.5},
                    {1270, 6.5},
                    {1461, 13.5},
                    {1557, 230.0},
                    {1644, 70.0},
                    {1792, 1130.0},
                    {2000, 450.0},
                    {2202, 230.0},
                    {2560, 430.0},
                    {2919, 960.0},
                    {3071, 2500.0},
                    {3270, 19500.0},
                    {3400, 8000.0},
                    {3633, 3200.0},
                    {3826, 12900.0},
                    {4001, 7200.0},
                    {4086, 5300.0},
                    {4100, 6700.0},
                });
}

// Total miner fee revenue, BTC per day.
ExogenousSeries fees_series() {
  return weekly("transaction-fees", "BTC/day",
                {
                    {0, 0.0},
                    {400, 0.0},
                    {561, 0.1},
                    {767, 0.7},
                    {886, 2.0},
                    {1270, 6.0},
                    {1557, 22.0},
                    {1792, 35.0},
                    {2000, 16.0},
                    {2202, 12.0},
                    {2560, 25.0},
                    {2919, 55.0},
                    {3071, 180.0},
                    {3270, 1000.0},
                    {3400, 70.0},
                    {3633, 12.0},
                    {3826, 60.0},
                    {4001, 35.0},
                    {4086, 25.0},
                    {4100, 30.0},
                });
}

// Network hash rate, GH/s. Anchors follow the difficulty history: CPU-era
// flatline, the 2010 GPU ramp, 2013 ASIC explosion, the 2015 plateau, the
// 2018 capitulation dip, and ~1.1e11 GH/s by March 2020.
ExogenousSeries hash_rate_series() {
  return weekly("hash-rate", "GH/s",
                {
                    {0, 0.005},
                    {150, 0.007},
                    {365, 0.01},
                    {500, 0.15},
                    {561, 1.0},
                    {650, 15.0},
                    {727, 100.0},
                    {886, 11200.0},
                    {1049, 7900.0},
                    {1270, 11000.0},
                    {1461, 23000.0},
                    {1557, 64000.0},
                    {1644, 150000.0},
                    {1792, 6.5e6},
                    {1975, 9.7e7},
                    {2158, 2.9e8},
                    {2340, 3.5e8},
                    {2554, 7.4e8},
                    {2736, 1.5e9},
                    {2920, 2.4e9},
                    {3071, 5.1e9},
                    {3270, 1.3e10},
                    {3500, 4.8e10},
                    {3633, 3.7e10},
                    {3826, 5.7e10},
                    {3918, 8.6e10},
                    {4020, 1.05e11},
                    {4086, 9.0e10},
                    {4100, 1.1e11},
                });
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(out_dir);
  for (const auto& s : {price_series(), fees_series(), hash_rate_series()}) {
    const auto path = out_dir / (s.name() + ".csv");
    hashpeak::write_csv(s, path);
    std::printf("%s: %zu points\n", path.string().c_str(), s.size());
  }
  return 0;
}
