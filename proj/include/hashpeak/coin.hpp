#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "hashpeak/error.hpp"

namespace hashpeak {

inline constexpr double kBlocksPerDay = 144.0;
inline constexpr double kTotalBtc = 21'000'000.0;

/// Geometric issuance schedule: the block subsidy starts at 50 coins and
/// halves every 210000 blocks, truncated to whole satoshis.
struct SubsidySchedule {
  std::int64_t initial_subsidy_satoshi = 5'000'000'000;
  std::int64_t halving_interval_blocks = 210'000;
  double satoshi_per_btc = 1e8;
};

inline std::int64_t subsidy_satoshi_at_era(const SubsidySchedule& s, std::int64_t era) {
  if (era < 0) throw Error("subsidy era must be non-negative, got " + std::to_string(era));
  if (era >= 33) return 0;
  return s.initial_subsidy_satoshi >> era;
}

/// Subsidy in BTC at a continuous blockchain height. Era selection floors the
/// height, so a height exactly on an era boundary already pays the new rate.
inline double subsidy_at_height(const SubsidySchedule& s, double height) {
  if (!(height >= 0.0)) {
    throw Error("block height must be non-negative, got " + std::to_string(height));
  }
  const auto era =
      static_cast<std::int64_t>(height / static_cast<double>(s.halving_interval_blocks));
  return static_cast<double>(subsidy_satoshi_at_era(s, era)) / s.satoshi_per_btc;
}

/// Long-run block production in blocks per day. Difficulty retargeting holds
/// the chain at the 10-minute target regardless of hash rate.
inline constexpr double block_creation_rate() { return kBlocksPerDay; }

/// Total BTC minted through the end of the given era (inclusive).
inline double minted_supply_through_era(const SubsidySchedule& s, std::int64_t era) {
  double total_satoshi = 0.0;
  for (std::int64_t e = 0; e <= era && e < 33; ++e) {
    total_satoshi += static_cast<double>(s.halving_interval_blocks) *
                     static_cast<double>(subsidy_satoshi_at_era(s, e));
  }
  return total_satoshi / s.satoshi_per_btc;
}

/// Supply ceiling circulation converges to under the satoshi-floored
/// schedule: 20999999.9769 BTC, strictly below the 21M stock.
inline double circulating_asymptote(const SubsidySchedule& s) {
  return minted_supply_through_era(s, 32);
}

/// Stocks of the supply mechanism. Height is a continuous stock; era lookup
/// floors it. circulating + remaining stays 21M by construction.
struct CoinState {
  double height = 0.0;          // blocks
  double circulating = 0.0;     // BTC
  double remaining = kTotalBtc;  // BTC
};

/// Advances coin creation by dt days at the target block rate. The subsidy is
/// sampled at the step's starting height and held constant across the step.
inline CoinState coin_step(const SubsidySchedule& s, const CoinState& state, double dt) {
  if (!(dt > 0.0)) throw Error("coin_step dt must be positive, got " + std::to_string(dt));
  const double creation = kBlocksPerDay * dt * subsidy_at_height(s, state.height);
  const double minted = std::min(creation, state.remaining);
  CoinState next;
  next.height = state.height + kBlocksPerDay * dt;
  next.circulating = state.circulating + minted;
  next.remaining = state.remaining - minted;
  return next;
}

}  // namespace hashpeak
