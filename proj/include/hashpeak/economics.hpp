#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hashpeak/coin.hpp"
#include "hashpeak/error.hpp"
#include "hashpeak/series.hpp"

namespace hashpeak {

inline constexpr double kSecondsPerDay = 86'400.0;

/// One era of state-of-the-art mining hardware. Days in [from_day, to_day);
/// the last epoch is open-ended (to_day = infinity).
struct EfficiencyEpoch {
  double from_day;
  double to_day;
  double efficiency_mh_per_j;
  std::string label;
};

inline std::vector<EfficiencyEpoch> default_efficiency_epochs() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {
      {0.0, 600.0, 0.1, "CPU"},
      {600.0, 1000.0, 1.0, "GPU"},
      {1000.0, 1400.0, 10.0, "FPGA"},
      {1400.0, 1550.0, 100.0, "ASIC (110 nm)"},
      {1550.0, 1900.0, 500.0, "ASIC (55 nm)"},
      {1900.0, 2450.0, 1000.0, "ASIC (28 nm)"},
      {2450.0, inf, 10000.0, "ASIC (16 nm)"},
  };
}

/// First-order delay constant in force until (exclusive) until_day. The last
/// regime is open-ended (until_day = infinity).
struct AdjustmentRegime {
  double until_day;
  double tau_days;
};

inline std::vector<AdjustmentRegime> default_adjustment_regimes() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{3777.0, 1482.0}, {inf, 264.0}};
}

/// All model constants. Defaults reproduce the reference configuration:
/// 0.05 USD/kWh energy, the seven-epoch hardware table, 0.007 GH/s initial
/// hash rate, and the two-regime adjustment time with a break at day 3777.
struct MiningParams {
  double energy_price_usd_per_j = 0.05 / 3.6e6;
  std::vector<EfficiencyEpoch> epochs = default_efficiency_epochs();
  double initial_hash_rate_ghs = 0.007;
  std::vector<AdjustmentRegime> adjustment_regimes = default_adjustment_regimes();
  double dt_days = 1.0;

  double min_tau() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : adjustment_regimes) m = std::min(m, r.tau_days);
    return m;
  }

  void validate() const {
    if (!(energy_price_usd_per_j > 0.0)) {
      throw Error("energy_price must be positive, got " + format_double(energy_price_usd_per_j));
    }
    if (!(initial_hash_rate_ghs > 0.0)) {
      throw Error("initial_hash_rate must be positive, got " +
                  format_double(initial_hash_rate_ghs));
    }
    if (epochs.empty()) throw Error("efficiency epoch table is empty");
    if (epochs.front().from_day != 0.0) {
      throw Error("first efficiency epoch must start at day 0, got " +
                  format_double(epochs.front().from_day));
    }
    for (std::size_t i = 0; i < epochs.size(); ++i) {
      const auto& e = epochs[i];
      if (!(e.efficiency_mh_per_j > 0.0)) {
        throw Error("epoch '" + e.label + "': efficiency must be positive");
      }
      if (!(e.to_day > e.from_day)) {
        throw Error("epoch '" + e.label + "': to_day must exceed from_day");
      }
      if (i > 0) {
        if (e.from_day != epochs[i - 1].to_day) {
          throw Error("efficiency epochs leave a gap or overlap at day " +
                      format_double(e.from_day));
        }
        if (e.efficiency_mh_per_j < epochs[i - 1].efficiency_mh_per_j) {
          throw Error("epoch '" + e.label + "': efficiency regresses");
        }
      }
    }
    if (std::isfinite(epochs.back().to_day)) {
      throw Error("last efficiency epoch must be open-ended");
    }
    if (adjustment_regimes.empty()) throw Error("adjustment regime table is empty");
    for (std::size_t i = 0; i < adjustment_regimes.size(); ++i) {
      const auto& r = adjustment_regimes[i];
      if (!(r.tau_days > 0.0)) {
        throw Error("adjustment time must be positive, got " + format_double(r.tau_days));
      }
      if (i > 0 && !(r.until_day > adjustment_regimes[i - 1].until_day)) {
        throw Error("adjustment regimes must be sorted by until_day");
      }
    }
    if (std::isfinite(adjustment_regimes.back().until_day)) {
      throw Error("last adjustment regime must be open-ended");
    }
    if (!(dt_days > 0.0)) throw Error("dt must be positive, got " + format_double(dt_days));
    if (!(dt_days < min_tau() / 10.0)) {
      throw Error("dt = " + format_double(dt_days) + " too coarse for min tau " +
                  format_double(min_tau()) + " (need dt < tau/10)");
    }
  }
};

/// Hardware efficiency at day t in GH/J (table stores MH/J). Step function;
/// a boundary day already belongs to the newer technology.
inline double efficiency_at(const MiningParams& params, double t) {
  if (!(t >= 0.0)) throw Error("efficiency_at: day must be non-negative");
  for (const auto& e : params.epochs) {
    if (t >= e.from_day && t < e.to_day) return e.efficiency_mh_per_j / 1000.0;
  }
  throw Error("efficiency_at: no epoch covers day " + format_double(t));
}

/// USD per GH computed at day t.
inline double hashing_cost(const MiningParams& params, double t) {
  return params.energy_price_usd_per_j / efficiency_at(params, t);
}

/// Daily network revenues in USD: (subsidy per block × 144 blocks + fees) × price.
inline double mining_revenues(double subsidy_btc, double fees_btc_per_day,
                              double price_usd_per_btc) {
  return (subsidy_btc * kBlocksPerDay + fees_btc_per_day) * price_usd_per_btc;
}

/// Daily network energy bill in USD for the given hash rate.
inline double mining_cost(double hash_rate_ghs, const MiningParams& params, double t) {
  return hash_rate_ghs * kSecondsPerDay * hashing_cost(params, t);
}

/// Hash rate the network could add (or must shed, if negative) before profit
/// reaches zero: daily profit buys energy at energy_price, and that power
/// runs hardware at the current efficiency.
inline double hash_rate_shortfall(double revenues_usd, double hash_rate_ghs,
                                  const MiningParams& params, double t) {
  const double profit = revenues_usd - mining_cost(hash_rate_ghs, params, t);
  return profit * efficiency_at(params, t) / (params.energy_price_usd_per_j * kSecondsPerDay);
}

/// Zero-profit hash rate for the given revenue drivers: the feedback loop's
/// goal state. shortfall(revenues, H*, t) = 0 identically.
inline double equilibrium_hash_rate(double subsidy_btc, double fees_btc_per_day,
                                    double price_usd_per_btc, const MiningParams& params,
                                    double t) {
  return mining_revenues(subsidy_btc, fees_btc_per_day, price_usd_per_btc) *
         efficiency_at(params, t) / (params.energy_price_usd_per_j * kSecondsPerDay);
}

/// Copy of params with hardware progress stopped at day t: every epoch
/// starting after t is dropped and the epoch containing t becomes open-ended.
inline MiningParams freeze_efficiency_after(const MiningParams& params, double t) {
  MiningParams frozen = params;
  frozen.epochs.clear();
  for (const auto& e : params.epochs) {
    if (e.from_day > t) break;
    frozen.epochs.push_back(e);
  }
  if (frozen.epochs.empty()) throw Error("freeze_efficiency_after: no epoch covers day " +
                                         format_double(t));
  frozen.epochs.back().to_day = std::numeric_limits<double>::infinity();
  return frozen;
}

}  // namespace hashpeak
