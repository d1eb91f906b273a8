// Prints the coin-supply curve implied by the halving schedule: one row per
// 30 days with height, circulating supply, and the subsidy in force.

#include <cstdio>

#include "hashpeak/coin.hpp"

int main() {
  const hashpeak::SubsidySchedule schedule;
  hashpeak::CoinState state;

  std::printf("day,height,circulating_btc,subsidy_btc\n");
  for (int day = 0; day <= 7500; ++day) {
    if (day % 30 == 0) {
      std::printf("%d,%.0f,%.8f,%.8f\n", day, state.height, state.circulating,
                  hashpeak::subsidy_at_height(schedule, state.height));
    }
    state = hashpeak::coin_step(schedule, state, 1.0);
  }
  std::fprintf(stderr, "asymptote: %.4f BTC\n", hashpeak::circulating_asymptote(schedule));
  return 0;
}
