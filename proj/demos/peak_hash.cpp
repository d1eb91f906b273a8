// Runs the deterministic peak-hash projection on the bundled fixtures and
// prints the summary: halving calendar, the projected hash-rate peak, and
// the terminal equilibrium.
//
// Usage: peak_hash [data-dir] [seed]

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "hashpeak/scenario.hpp"
#include "hashpeak/series.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path data_dir = argc > 1 ? argv[1] : "data";

  hashpeak::MiningParams params;
  hashpeak::ScenarioSpec spec;
  spec.price_sd = 0.0;
  spec.fees_sd = 0.0;
  if (argc > 2) {
    spec.seed = std::strtoull(argv[2], nullptr, 10);
    spec.price_sd = 500.0;
    spec.fees_sd = 5.0;
  }

  const auto price = hashpeak::load_csv(data_dir / "market-price.csv", "USD/BTC");
  const auto fees = hashpeak::load_csv(data_dir / "transaction-fees.csv", "BTC/day");

  const hashpeak::Trajectory traj = hashpeak::project(params, price, fees, spec);
  const hashpeak::ProjectionSummary s = hashpeak::summarize_projection(traj, spec);

  std::printf("projection %s, seed %llu\n",
              spec.price_sd > 0.0 ? "stochastic" : "deterministic",
              static_cast<unsigned long long>(spec.seed));
  std::printf("halvings through day %.0f:", spec.t_end);
  for (double d : s.halving_days) std::printf(" %.2f", d);
  std::printf("\npeak hash:  %.4g GH/s at day %.0f (%s)\n", s.peak_hash_rate_ghs, s.peak_day,
              s.peak_date.c_str());
  std::printf("terminal:   %.4g GH/s at day %.0f (%s)\n", s.terminal_hash_rate_ghs,
              s.terminal_day, s.terminal_date.c_str());
  return 0;
}
