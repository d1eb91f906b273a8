#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "hashpeak/coin.hpp"

using namespace hashpeak;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Reference subsidy in satoshi computed by repeated integer halving rather
// than by shifting, so the two implementations can disagree.
std::int64_t halving_oracle(int era) {
  std::int64_t s = 5'000'000'000;
  for (int i = 0; i < era; ++i) s /= 2;
  return era >= 33 ? 0 : s;
}

}  // namespace

TEST_CASE("subsidy per era matches repeated integer halving") {
  const SubsidySchedule s;
  for (int era = 0; era <= 40; ++era) {
    CHECK(subsidy_satoshi_at_era(s, era) == halving_oracle(era));
  }
  CHECK(subsidy_satoshi_at_era(s, 0) == 5'000'000'000);
  CHECK(subsidy_satoshi_at_era(s, 1) == 2'500'000'000);
  CHECK(subsidy_satoshi_at_era(s, 32) == 1);
  CHECK(subsidy_satoshi_at_era(s, 33) == 0);
}

TEST_CASE("subsidy at height floors to the containing era") {
  const SubsidySchedule s;
  CHECK(subsidy_at_height(s, 0.0) == 50.0);
  CHECK(subsidy_at_height(s, 209'999.0) == 50.0);
  CHECK(subsidy_at_height(s, 209'999.9) == 50.0);
  CHECK(subsidy_at_height(s, 210'000.0) == 25.0);
  CHECK(subsidy_at_height(s, 630'000.0) == 6.25);
  CHECK(subsidy_at_height(s, 629'999.5) == 12.5);
  CHECK(subsidy_at_height(s, 33.0 * 210'000.0) == 0.0);
}

TEST_CASE("block creation runs at 144 blocks per day") {
  CHECK(block_creation_rate() == 144.0);
  CHECK(block_creation_rate() * 10.0 == 1440.0);  // 10-minute blocks
}

TEST_CASE("one genesis step mints 7200 coins") {
  const SubsidySchedule s;
  CoinState state;
  REQUIRE(state.height == 0.0);
  REQUIRE(state.circulating == 0.0);
  REQUIRE(state.remaining == kTotalBtc);

  const CoinState next = coin_step(s, state, 1.0);
  CHECK(next.height == 144.0);
  CHECK(next.circulating == 7200.0);
  CHECK(next.remaining == 21'000'000.0 - 7200.0);
  CHECK(next.circulating + next.remaining == kTotalBtc);
}

TEST_CASE("a step starting on an era boundary pays the new rate") {
  const SubsidySchedule s;
  CoinState state;
  state.height = 210'000.0;
  state.circulating = 10'500'000.0;
  state.remaining = kTotalBtc - state.circulating;
  const CoinState next = coin_step(s, state, 1.0);
  CHECK(next.circulating - state.circulating == 144.0 * 25.0);
}

TEST_CASE("minting stops when the remaining pool is exhausted") {
  const SubsidySchedule s;
  CoinState state;
  state.height = 100.0;
  state.circulating = kTotalBtc - 10.0;
  state.remaining = 10.0;
  const CoinState next = coin_step(s, state, 1.0);  // would mint 7200
  CHECK(next.circulating == kTotalBtc);
  CHECK(next.remaining == 0.0);
  const CoinState after = coin_step(s, next, 1.0);
  CHECK(after.circulating == kTotalBtc);
  CHECK(after.height == next.height + 144.0);
}

TEST_CASE("cumulative minted supply per era") {
  const SubsidySchedule s;
  CHECK(minted_supply_through_era(s, 0) == 10'500'000.0);
  CHECK(minted_supply_through_era(s, 1) == 15'750'000.0);
  // Closed form: 210000 blocks per era, era-32 subsidy is 1 satoshi, and the
  // geometric sum of the integer-floored subsidies is 9,999,999,989 satoshi.
  const double asymptote = 210'000.0 * 9'999'999'989.0 / 1e8;
  CHECK_THAT(circulating_asymptote(s), WithinAbs(asymptote, 1e-6));
  CHECK(circulating_asymptote(s) > 20'999'999.0);
  CHECK(circulating_asymptote(s) < 21'000'000.0);
  CHECK_THAT(circulating_asymptote(s), WithinAbs(20'999'999.9769, 1e-4));
}

TEST_CASE("supply is conserved across a 7500 day run") {
  const SubsidySchedule s;
  CoinState state;
  double prev_circulating = -1.0;
  const double dt = 1.0;
  for (int i = 0; i < 7500; ++i) {
    state = coin_step(s, state, dt);
    REQUIRE(std::abs(state.circulating + state.remaining - kTotalBtc) <= 1e-6);
    REQUIRE(state.circulating >= prev_circulating);
    prev_circulating = state.circulating;
  }
  CHECK(state.height == 144.0 * 7500.0);
  CHECK(state.circulating < circulating_asymptote(s));
}

TEST_CASE("coarse and fine steps agree at era interiors") {
  const SubsidySchedule s;
  CoinState coarse;
  for (int i = 0; i < 1000; ++i) coarse = coin_step(s, coarse, 1.0);
  CoinState fine;
  for (int i = 0; i < 4000; ++i) fine = coin_step(s, fine, 0.25);
  // Era 0 throughout, so the schedule is exactly linear in elapsed time.
  CHECK_THAT(fine.circulating, WithinRel(coarse.circulating, 1e-12));
  CHECK_THAT(fine.height, WithinRel(coarse.height, 1e-12));
}
