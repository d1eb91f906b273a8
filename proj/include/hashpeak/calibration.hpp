#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "hashpeak/dynamics.hpp"
#include "hashpeak/economics.hpp"
#include "hashpeak/error.hpp"
#include "hashpeak/optimize.hpp"
#include "hashpeak/series.hpp"

namespace hashpeak {

enum class CalibrationMode { single, two_regime, two_regime_free_break };

inline CalibrationMode parse_calibration_mode(std::string_view s) {
  if (s == "single") return CalibrationMode::single;
  if (s == "two-regime" || s == "two_regime") return CalibrationMode::two_regime;
  if (s == "two-regime-free-break" || s == "two_regime_free_break") {
    return CalibrationMode::two_regime_free_break;
  }
  throw Error("unknown calibration mode '" + std::string(s) +
              "' (expected single | two-regime | two-regime-free-break)");
}

inline const char* to_string(CalibrationMode m) {
  switch (m) {
    case CalibrationMode::single: return "single";
    case CalibrationMode::two_regime: return "two-regime";
    case CalibrationMode::two_regime_free_break: return "two-regime-free-break";
  }
  return "?";
}

struct CalibrationSpec {
  CalibrationMode mode = CalibrationMode::single;
  double break_day = 3777.0;
  double tau_min = 10.0;
  double tau_max = 5000.0;
  double window_start = 0.0;
  double window_end = 4100.0;

  void validate(double dt) const {
    if (!(tau_min > dt)) {
      throw Error("tau_min = " + format_double(tau_min) + " must exceed dt = " +
                  format_double(dt));
    }
    if (!(tau_max > tau_min)) throw Error("search bounds must be ordered");
    if (!(window_end > window_start) || window_start < 0.0) {
      throw Error("fit window [" + format_double(window_start) + ", " +
                  format_double(window_end) + "] is not a valid range");
    }
    if (mode != CalibrationMode::single) {
      if (!(break_day > window_start && break_day < window_end)) {
        throw Error("break day " + format_double(break_day) + " outside fit window");
      }
    }
  }
};

struct ResidualPoint {
  double day;
  double log10_model;
  double log10_historical;
};

struct CalibrationResult {
  CalibrationMode mode = CalibrationMode::single;
  std::vector<AdjustmentRegime> taus;
  double break_day = 0.0;
  double objective_value = 0.0;
  long evaluations = 0;
  bool converged = false;
  double window_start = 0.0;
  double window_end = 0.0;
  std::vector<ResidualPoint> residuals;
};

inline constexpr double kLogClipGhs = 1e-12;

/// Log-space RMSE between the model run under the candidate regimes and the
/// historical knots inside the fit window. Knots are sorted internally, so
/// input order never affects the value.
inline double calibration_objective(const std::vector<AdjustmentRegime>& regimes,
                                    const MiningParams& base, const ExogenousSeries& price,
                                    const ExogenousSeries& fees,
                                    std::vector<SeriesPoint> historical_knots,
                                    double window_start, double window_end,
                                    std::vector<ResidualPoint>* residuals = nullptr) {
  std::sort(historical_knots.begin(), historical_knots.end(),
            [](const SeriesPoint& a, const SeriesPoint& b) { return a.day < b.day; });

  MiningParams params = base;
  params.adjustment_regimes = regimes;
  const Trajectory traj = simulate(params, price, fees, window_end);
  const ExogenousSeries model = hash_rate_series(traj);

  double sum_sq = 0.0;
  std::size_t count = 0;
  if (residuals) residuals->clear();
  for (const auto& knot : historical_knots) {
    if (knot.day < window_start || knot.day > window_end) continue;
    const double m = std::log10(std::max(model.value_at(knot.day), kLogClipGhs));
    const double h = std::log10(std::max(knot.value, kLogClipGhs));
    sum_sq += (m - h) * (m - h);
    ++count;
    if (residuals) residuals->push_back({knot.day, m, h});
  }
  if (count == 0) {
    throw Error("calibration window [" + format_double(window_start) + ", " +
                format_double(window_end) + "] contains no historical knots");
  }
  return std::sqrt(sum_sq / static_cast<double>(count));
}

inline double calibration_objective(const std::vector<AdjustmentRegime>& regimes,
                                    const MiningParams& base, const ExogenousSeries& price,
                                    const ExogenousSeries& fees,
                                    const ExogenousSeries& historical, double window_start,
                                    double window_end,
                                    std::vector<ResidualPoint>* residuals = nullptr) {
  const auto pts = historical.points();
  return calibration_objective(regimes, base, price, fees,
                               std::vector<SeriesPoint>(pts.begin(), pts.end()), window_start,
                               window_end, residuals);
}

namespace detail {

inline std::vector<AdjustmentRegime> regimes_for(CalibrationMode mode, double break_day,
                                                 const std::vector<double>& taus) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (mode == CalibrationMode::single) return {{inf, taus[0]}};
  return {{break_day, taus[0]}, {inf, taus[1]}};
}

/// Quadratic penalty steering the simplex back into the box; large constant
/// keeps penalized points strictly worse than any feasible objective.
inline double box_penalty(double v, double lo, double hi) {
  if (v < lo) return 1e6 + (lo - v) * (lo - v);
  if (v > hi) return 1e6 + (v - hi) * (v - hi);
  return 0.0;
}

}  // namespace detail

/// Fits the adjustment-time regime(s) to the historical hash-rate series.
/// single: bracket scan + golden-section on tau (1-day tolerance).
/// two_regime: Nelder-Mead on (log10 tau1, log10 tau2), break fixed.
/// two_regime_free_break: adds the break day (kilodays) as a third coordinate.
/// Deterministic: fixed grids, fixed simplex construction, no randomness.
inline CalibrationResult calibrate(const CalibrationSpec& spec, const MiningParams& base,
                                   const ExogenousSeries& price, const ExogenousSeries& fees,
                                   const ExogenousSeries& historical) {
  spec.validate(base.dt_days);
  CalibrationResult result;
  result.mode = spec.mode;
  result.window_start = spec.window_start;
  result.window_end = spec.window_end;

  long evaluations = 0;
  const auto objective_taus = [&](CalibrationMode mode, double break_day,
                                  const std::vector<double>& taus) {
    for (double tau : taus) {
      if (tau < spec.tau_min || tau > spec.tau_max) {
        return detail::box_penalty(tau, spec.tau_min, spec.tau_max);
      }
      // Candidates that violate the dt-stability invariant of MiningParams
      // are infeasible, not errors; steer the search back above 10 dt.
      if (!(base.dt_days < tau / 10.0)) {
        const double floor_tau = 10.0 * base.dt_days;
        return 1e6 + (floor_tau - tau) * (floor_tau - tau);
      }
    }
    ++evaluations;
    return calibration_objective(detail::regimes_for(mode, break_day, taus), base, price, fees,
                                 historical, spec.window_start, spec.window_end);
  };

  if (spec.mode == CalibrationMode::single) {
    const auto f = [&](double tau) {
      return objective_taus(CalibrationMode::single, 0.0, {tau});
    };
    // Bracket the global minimum on a log-spaced scan first; the objective
    // need not be unimodal over a 500x tau range.
    constexpr int kScan = 33;
    const double llo = std::log10(spec.tau_min);
    const double lhi = std::log10(spec.tau_max);
    int best_i = 0;
    double best_f = std::numeric_limits<double>::infinity();
    std::vector<double> grid(kScan);
    for (int i = 0; i < kScan; ++i) {
      grid[i] = std::pow(10.0, llo + (lhi - llo) * i / (kScan - 1));
      const double fi = f(grid[i]);
      if (fi < best_f) {
        best_f = fi;
        best_i = i;
      }
    }
    const double lo = grid[std::max(0, best_i - 1)];
    const double hi = grid[std::min(kScan - 1, best_i + 1)];
    ScalarMinResult sm = golden_section_min(f, lo, hi, 1.0);
    result.taus = detail::regimes_for(CalibrationMode::single, 0.0, {sm.x});
    result.objective_value = sm.fx;
    result.converged = sm.converged;
    result.break_day = 0.0;
  } else {
    const bool free_break = spec.mode == CalibrationMode::two_regime_free_break;
    const double kBreakScale = 1000.0;
    const auto f = [&](const std::vector<double>& x) {
      const double tau1 = std::pow(10.0, x[0]);
      const double tau2 = std::pow(10.0, x[1]);
      double break_day = spec.break_day;
      double penalty = 0.0;
      if (free_break) {
        break_day = x[2] * kBreakScale;
        penalty = detail::box_penalty(break_day, 600.0, 4000.0);
        if (penalty > 0.0) return penalty;
      }
      return objective_taus(CalibrationMode::two_regime, break_day, {tau1, tau2});
    };

    // Best point of a deterministic 5x5 log grid seeds the simplex.
    constexpr int kGrid = 5;
    const double llo = std::log10(spec.tau_min);
    const double lhi = std::log10(spec.tau_max);
    std::vector<double> seed = {llo, llo};
    if (free_break) seed.push_back(spec.break_day / kBreakScale);
    double best_f = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        std::vector<double> x = {llo + (lhi - llo) * i / (kGrid - 1),
                                 llo + (lhi - llo) * j / (kGrid - 1)};
        if (free_break) x.push_back(spec.break_day / kBreakScale);
        const double fx = f(x);
        if (fx < best_f) {
          best_f = fx;
          seed = x;
        }
      }
    }

    std::vector<std::vector<double>> simplex = {seed};
    for (std::size_t d = 0; d < seed.size(); ++d) {
      std::vector<double> v = seed;
      v[d] += 0.2;
      simplex.push_back(v);
    }
    NelderMeadResult nm = nelder_mead_min(f, std::move(simplex));
    const double tau1 = std::pow(10.0, nm.x[0]);
    const double tau2 = std::pow(10.0, nm.x[1]);
    result.break_day = free_break ? nm.x[2] * kBreakScale : spec.break_day;
    result.taus = detail::regimes_for(CalibrationMode::two_regime, result.break_day, {tau1, tau2});
    result.objective_value = nm.fx;
    result.converged = nm.converged;
  }

  result.evaluations = evaluations;
  calibration_objective(result.taus, base, price, fees, historical, spec.window_start,
                        spec.window_end, &result.residuals);
  return result;
}

struct FitComparison {
  double objective_single = 0.0;
  double objective_two = 0.0;
  double relative_improvement = 0.0;
  bool two_regime_better = false;
  bool meaningful = false;
  std::vector<ResidualPoint> residuals_single;
  std::vector<ResidualPoint> residuals_two;
};

inline constexpr double kMeaningfulImprovement = 0.01;

/// Side-by-side report of a single-regime fit against a two-regime fit over
/// the same window. Improvements under 1% are flagged as not meaningful.
inline FitComparison compare_fits(const CalibrationResult& single_fit,
                                  const CalibrationResult& two_fit) {
  if (single_fit.window_start != two_fit.window_start ||
      single_fit.window_end != two_fit.window_end) {
    throw Error("compare_fits: results use different fit windows");
  }
  FitComparison cmp;
  cmp.objective_single = single_fit.objective_value;
  cmp.objective_two = two_fit.objective_value;
  cmp.two_regime_better = two_fit.objective_value < single_fit.objective_value;
  cmp.relative_improvement =
      single_fit.objective_value > 0.0
          ? (single_fit.objective_value - two_fit.objective_value) / single_fit.objective_value
          : 0.0;
  cmp.meaningful = cmp.two_regime_better && cmp.relative_improvement > kMeaningfulImprovement;
  cmp.residuals_single = single_fit.residuals;
  cmp.residuals_two = two_fit.residuals;
  return cmp;
}

}  // namespace hashpeak
