#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hashpeak/coin.hpp"
#include "hashpeak/economics.hpp"
#include "hashpeak/error.hpp"
#include "hashpeak/series.hpp"

namespace hashpeak {

/// Guard against pathological configs (dt ≥ tau with deeply negative profit)
/// driving the stock below zero; a first-order delay with dt < tau cannot.
inline constexpr double kHashRateFloorGhs = 1e-12;

struct SimState {
  double t = 0.0;
  CoinState coin;
  double hash_rate_ghs = 0.0;
};

struct TrajectoryRecord {
  double t;
  double height;
  double circulating;
  double subsidy;
  double price;
  double fees;
  double revenues_usd;
  double cost_usd;
  double profit_usd;
  double shortfall_ghs;
  double hash_rate_ghs;
  double tau_days;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  double dt = 1.0;
  bool hash_floor_applied = false;

  const TrajectoryRecord& back() const { return records.back(); }
};

/// Delay constant in force at day t: first regime whose until_day exceeds t,
/// so a boundary day already uses the later regime.
inline double adjustment_time(const MiningParams& params, double t) {
  for (const auto& r : params.adjustment_regimes) {
    if (r.until_day > t) return r.tau_days;
  }
  return params.adjustment_regimes.back().tau_days;
}

namespace detail {

/// All flow-relevant quantities at one instant, evaluated from the current
/// stocks and the exogenous inputs (left endpoint of the step).
inline TrajectoryRecord evaluate_record(const SimState& s, const MiningParams& params,
                                        const ExogenousSeries& price,
                                        const ExogenousSeries& fees,
                                        const SubsidySchedule& schedule) {
  TrajectoryRecord r;
  r.t = s.t;
  r.height = s.coin.height;
  r.circulating = s.coin.circulating;
  r.subsidy = subsidy_at_height(schedule, s.coin.height);
  r.price = price.value_at(s.t);
  r.fees = fees.value_at(s.t);
  r.revenues_usd = mining_revenues(r.subsidy, r.fees, r.price);
  r.cost_usd = mining_cost(s.hash_rate_ghs, params, s.t);
  r.profit_usd = r.revenues_usd - r.cost_usd;
  r.shortfall_ghs = hash_rate_shortfall(r.revenues_usd, s.hash_rate_ghs, params, s.t);
  r.hash_rate_ghs = s.hash_rate_ghs;
  r.tau_days = adjustment_time(params, s.t);
  return r;
}

}  // namespace detail

/// One explicit Euler step of the coupled system; flows evaluated at the
/// step's start. Returns the advanced state; sets floor_applied if the
/// hash-rate floor activated.
inline SimState step(const SimState& state, const MiningParams& params,
                     const ExogenousSeries& price, const ExogenousSeries& fees,
                     const SubsidySchedule& schedule = {}, bool* floor_applied = nullptr) {
  const TrajectoryRecord r = detail::evaluate_record(state, params, price, fees, schedule);
  SimState next;
  next.coin = coin_step(schedule, state.coin, params.dt_days);
  next.hash_rate_ghs = state.hash_rate_ghs + params.dt_days * r.shortfall_ghs / r.tau_days;
  if (next.hash_rate_ghs < kHashRateFloorGhs) {
    next.hash_rate_ghs = kHashRateFloorGhs;
    if (floor_applied) *floor_applied = true;
  }
  next.t = state.t + params.dt_days;
  return next;
}

/// Integrates the model from day 0 to t_end with the params' uniform dt and
/// records every step (t_end's record included). Deterministic: identical
/// inputs give bit-identical trajectories. The record at index i carries
/// t = i·dt exactly, never an accumulated sum.
inline Trajectory simulate(const MiningParams& params, const ExogenousSeries& price,
                           const ExogenousSeries& fees, double t_end,
                           const SubsidySchedule& schedule = {}) {
  params.validate();
  if (!(t_end > 0.0)) throw Error("simulate: t_end must be positive, got " + format_double(t_end));
  for (const ExogenousSeries* s : {&price, &fees}) {
    if (s->first_day() > 0.0 || s->last_day() < t_end) {
      throw Error("simulate: series '" + s->name() + "' covers [" +
                  format_double(s->first_day()) + ", " + format_double(s->last_day()) +
                  "] but the run needs [0, " + format_double(t_end) + "]");
    }
  }

  const auto n_steps = static_cast<std::size_t>(std::floor(t_end / params.dt_days + 1e-9));
  Trajectory traj;
  traj.dt = params.dt_days;
  traj.records.reserve(n_steps + 1);

  SimState state;
  state.t = 0.0;
  state.hash_rate_ghs = params.initial_hash_rate_ghs;
  for (std::size_t i = 0; i <= n_steps; ++i) {
    state.t = static_cast<double>(i) * params.dt_days;
    traj.records.push_back(detail::evaluate_record(state, params, price, fees, schedule));
    if (i == n_steps) break;
    state = step(state, params, price, fees, schedule, &traj.hash_floor_applied);
  }
  return traj;
}

inline const char* trajectory_csv_header() {
  return "t,height,circulating,subsidy,price,fees,revenues_usd,cost_usd,profit_usd,"
         "shortfall_ghs,hash_rate_ghs,tau_days";
}

inline void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << trajectory_csv_header() << '\n';
  for (const auto& r : traj.records) {
    out << format_double(r.t) << ',' << format_double(r.height) << ','
        << format_double(r.circulating) << ',' << format_double(r.subsidy) << ','
        << format_double(r.price) << ',' << format_double(r.fees) << ','
        << format_double(r.revenues_usd) << ',' << format_double(r.cost_usd) << ','
        << format_double(r.profit_usd) << ',' << format_double(r.shortfall_ghs) << ','
        << format_double(r.hash_rate_ghs) << ',' << format_double(r.tau_days) << '\n';
  }
}

inline void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_trajectory_csv(traj, out);
}

inline std::string trajectory_to_csv_string(const Trajectory& traj) {
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  return os.str();
}

/// Model hash rate as a series, for splicing into calibration residual plots.
inline ExogenousSeries hash_rate_series(const Trajectory& traj) {
  std::vector<SeriesPoint> pts;
  pts.reserve(traj.records.size());
  for (const auto& r : traj.records) pts.push_back({r.t, r.hash_rate_ghs});
  return ExogenousSeries("model-hash-rate", "GH/s", std::move(pts));
}

}  // namespace hashpeak
