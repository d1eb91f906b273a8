#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hashpeak/calendar.hpp"
#include "hashpeak/coin.hpp"
#include "hashpeak/dynamics.hpp"
#include "hashpeak/economics.hpp"
#include "hashpeak/error.hpp"
#include "hashpeak/series.hpp"

namespace hashpeak {

/// Recorded in run manifests so outputs stay reproducible across platforms:
/// std::normal_distribution is implementation-defined, Box-Muller over the
/// raw mt19937_64 stream is not.
inline constexpr const char* kNoiseGeneratorId = "mt19937_64+box-muller";

/// Offset applied to derive the fees stream seed from the scenario seed, so
/// one spec seed yields two decorrelated streams.
inline constexpr std::uint64_t kFeesSeedSalt = 0x9E3779B97F4A7C15ull;

/// Deterministic standard-normal stream: 53-bit uniforms from mt19937_64 fed
/// through Box-Muller. Identical seeds give identical values on any platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log never sees zero; u2 in [0, 1).
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

struct ScenarioSpec {
  double t_start = 4100.0;
  double t_end = 7500.0;
  double price_mean = 7300.0;
  double price_sd = 500.0;
  double fees_mean = 30.0;
  double fees_sd = 5.0;
  double correlation_time = 28.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (!(t_end > t_start)) {
      throw Error("scenario horizon " + format_double(t_end) + " must exceed start day " +
                  format_double(t_start));
    }
    if (price_sd < 0.0 || fees_sd < 0.0) throw Error("noise sd must be non-negative");
    if (!(price_mean >= 0.0) || !(fees_mean >= 0.0)) throw Error("noise mean must be non-negative");
    if (!(correlation_time > 0.0)) throw Error("correlation time must be positive");
  }
};

/// Mean-reverting first-order-filtered white noise with stationary sd and
/// correlation time as specified; the standard system-dynamics pink-noise
/// construction. Starts on the mean, floored at 0.
inline ExogenousSeries pink_noise(double mean, double sd, double tau_c, double t_start,
                                  double t_end, double dt, std::uint64_t seed,
                                  std::string name = "pink-noise", std::string unit = "") {
  if (!(dt > 0.0) || !(tau_c > dt)) {
    throw Error("pink_noise: need correlation time " + format_double(tau_c) +
                " > dt = " + format_double(dt));
  }
  if (!(t_end > t_start)) throw Error("pink_noise: empty time range");

  const auto n_steps = static_cast<std::size_t>(std::floor((t_end - t_start) / dt + 1e-9));
  GaussianStream z(seed);
  std::vector<SeriesPoint> pts;
  pts.reserve(n_steps + 1);
  double x = mean;
  const double gain = dt / tau_c;
  const double amplitude = sd * std::sqrt(2.0 * dt / tau_c);
  for (std::size_t k = 0; k <= n_steps; ++k) {
    pts.push_back({t_start + static_cast<double>(k) * dt, x});
    x += gain * (mean - x) + amplitude * z.next();
    if (x < 0.0) x = 0.0;
  }
  return ExogenousSeries(std::move(name), std::move(unit), std::move(pts));
}

/// Days at which the subsidy era increments under the target block rate, in
/// order, for eras whose boundary falls within (0, t_end].
inline std::vector<double> halving_days(const SubsidySchedule& schedule, double t_end) {
  std::vector<double> days;
  for (std::int64_t era = 1;; ++era) {
    const double day = static_cast<double>(era * schedule.halving_interval_blocks) / kBlocksPerDay;
    if (day > t_end) break;
    days.push_back(day);
  }
  return days;
}

/// Projects the model into the future: exogenous inputs follow history up to
/// t_start and seeded pink noise afterwards, hardware efficiency is frozen at
/// its t_start value, and the full system is re-simulated from day 0.
inline Trajectory project(const MiningParams& params, const ExogenousSeries& historical_price,
                          const ExogenousSeries& historical_fees, const ScenarioSpec& spec,
                          const SubsidySchedule& schedule = {}) {
  spec.validate();
  params.validate();
  for (const ExogenousSeries* s : {&historical_price, &historical_fees}) {
    if (s->first_day() > 0.0 || s->last_day() < spec.t_start) {
      throw Error("project: series '" + s->name() + "' does not cover [0, " +
                  format_double(spec.t_start) + "]");
    }
  }

  const auto truncated = [&](const ExogenousSeries& s) {
    std::vector<SeriesPoint> pts;
    for (const auto& p : s.points()) {
      if (p.day >= spec.t_start) break;
      pts.push_back(p);
    }
    pts.push_back({spec.t_start, s.value_at(spec.t_start)});
    return ExogenousSeries(s.name(), s.unit(), std::move(pts));
  };

  const ExogenousSeries price =
      splice(truncated(historical_price),
             pink_noise(spec.price_mean, spec.price_sd, spec.correlation_time, spec.t_start,
                        spec.t_end, params.dt_days, spec.seed, "future-price",
                        historical_price.unit()));
  const ExogenousSeries fees =
      splice(truncated(historical_fees),
             pink_noise(spec.fees_mean, spec.fees_sd, spec.correlation_time, spec.t_start,
                        spec.t_end, params.dt_days, spec.seed ^ kFeesSeedSalt, "future-fees",
                        historical_fees.unit()));

  const MiningParams frozen = freeze_efficiency_after(params, spec.t_start);
  return simulate(frozen, price, fees, spec.t_end, schedule);
}

struct ProjectionSummary {
  std::vector<double> halving_days;
  double peak_hash_rate_ghs = 0.0;
  double peak_day = 0.0;
  std::string peak_date;
  double terminal_hash_rate_ghs = 0.0;
  double terminal_day = 0.0;
  std::string terminal_date;
};

/// Peak and terminal hash rate over the projected window (t ≥ t_start).
inline ProjectionSummary summarize_projection(const Trajectory& traj, const ScenarioSpec& spec,
                                              const SubsidySchedule& schedule = {}) {
  ProjectionSummary s;
  s.halving_days = halving_days(schedule, spec.t_end);
  bool any = false;
  for (const auto& r : traj.records) {
    if (r.t < spec.t_start) continue;
    if (!any || r.hash_rate_ghs > s.peak_hash_rate_ghs) {
      s.peak_hash_rate_ghs = r.hash_rate_ghs;
      s.peak_day = r.t;
      any = true;
    }
  }
  if (!any) throw Error("projection trajectory has no records at or past day " +
                        format_double(spec.t_start));
  s.peak_date = date_from_day(s.peak_day);
  s.terminal_hash_rate_ghs = traj.records.back().hash_rate_ghs;
  s.terminal_day = traj.records.back().t;
  s.terminal_date = date_from_day(s.terminal_day);
  return s;
}

}  // namespace hashpeak
