#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hashpeak/calibration.hpp"
#include "hashpeak/chart_client.hpp"
#include "hashpeak/coin.hpp"
#include "hashpeak/dynamics.hpp"
#include "hashpeak/economics.hpp"
#include "hashpeak/error.hpp"
#include "hashpeak/scenario.hpp"
#include "hashpeak/series.hpp"
#include "hashpeak/version.hpp"

namespace hashpeak {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Effective settings for one command run: model parameters, data sources,
/// output location, and the command-specific specs. Built from defaults,
/// then the JSON config file, then flags (flag wins).
struct RunConfig {
  MiningParams params;
  std::filesystem::path price_csv;
  std::filesystem::path fees_csv;
  std::filesystem::path hashrate_csv;
  std::filesystem::path height_csv;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path out_dir = "out";
  bool use_fetch = false;
  double t_end = 4100.0;
  CalibrationSpec calibration;
  ScenarioSpec scenario;
};

namespace detail {

inline double get_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw Error(std::string("config: '") + key + "' must be a number");
  return j[key].get<double>();
}

inline std::filesystem::path resolve_path(const std::string& p,
                                          const std::filesystem::path& base) {
  const std::filesystem::path fp(p);
  if (fp.empty() || fp.is_absolute()) return fp;
  return base / fp;
}

inline std::filesystem::path get_path(const nlohmann::json& j, const char* key,
                                      const std::filesystem::path& base,
                                      std::filesystem::path fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw Error(std::string("config: '") + key + "' must be a string path");
  return resolve_path(j[key].get<std::string>(), base);
}

inline void apply_params_json(MiningParams& p, const nlohmann::json& j) {
  if (j.contains("energy_price_usd_per_kwh") && j.contains("energy_price_usd_per_j")) {
    throw Error("config: give energy price in kWh or J terms, not both");
  }
  if (j.contains("energy_price_usd_per_kwh")) {
    p.energy_price_usd_per_j = get_number(j, "energy_price_usd_per_kwh", 0.0) / 3.6e6;
  }
  p.energy_price_usd_per_j = get_number(j, "energy_price_usd_per_j", p.energy_price_usd_per_j);
  p.initial_hash_rate_ghs = get_number(j, "initial_hash_rate_ghs", p.initial_hash_rate_ghs);
  p.dt_days = get_number(j, "dt_days", p.dt_days);
  if (j.contains("adjustment_regimes")) {
    const auto& regs = j["adjustment_regimes"];
    if (!regs.is_array() || regs.empty()) {
      throw Error("config: adjustment_regimes must be a non-empty array");
    }
    p.adjustment_regimes.clear();
    for (const auto& r : regs) {
      AdjustmentRegime reg;
      reg.until_day = get_number(r, "until_day", std::numeric_limits<double>::infinity());
      reg.tau_days = get_number(r, "tau_days", 0.0);
      p.adjustment_regimes.push_back(reg);
    }
  }
  if (j.contains("efficiency_epochs")) {
    const auto& eps = j["efficiency_epochs"];
    if (!eps.is_array() || eps.empty()) {
      throw Error("config: efficiency_epochs must be a non-empty array");
    }
    p.epochs.clear();
    for (const auto& e : eps) {
      EfficiencyEpoch ep;
      ep.from_day = get_number(e, "from_day", 0.0);
      ep.to_day = get_number(e, "to_day", std::numeric_limits<double>::infinity());
      ep.efficiency_mh_per_j = get_number(e, "mh_per_j", 0.0);
      ep.label = e.contains("label") ? e["label"].get<std::string>() : std::string("epoch");
      p.epochs.push_back(ep);
    }
  }
}

inline nlohmann::json params_to_json(const MiningParams& p) {
  nlohmann::json j;
  j["energy_price_usd_per_j"] = p.energy_price_usd_per_j;
  j["initial_hash_rate_ghs"] = p.initial_hash_rate_ghs;
  j["dt_days"] = p.dt_days;
  j["adjustment_regimes"] = nlohmann::json::array();
  for (const auto& r : p.adjustment_regimes) {
    nlohmann::json reg;
    if (std::isfinite(r.until_day)) reg["until_day"] = r.until_day;
    reg["tau_days"] = r.tau_days;
    j["adjustment_regimes"].push_back(reg);
  }
  j["efficiency_epochs"] = nlohmann::json::array();
  for (const auto& e : p.epochs) {
    nlohmann::json ep;
    ep["from_day"] = e.from_day;
    if (std::isfinite(e.to_day)) ep["to_day"] = e.to_day;
    ep["mh_per_j"] = e.efficiency_mh_per_j;
    ep["label"] = e.label;
    j["efficiency_epochs"].push_back(ep);
  }
  return j;
}

inline nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["params"] = params_to_json(cfg.params);
  nlohmann::json data;
  data["price_csv"] = cfg.price_csv.string();
  data["fees_csv"] = cfg.fees_csv.string();
  data["hashrate_csv"] = cfg.hashrate_csv.string();
  if (!cfg.height_csv.empty()) data["height_csv"] = cfg.height_csv.string();
  data["cache_dir"] = cfg.cache_dir.string();
  data["fetch"] = cfg.use_fetch;
  j["data"] = data;
  j["out_dir"] = cfg.out_dir.string();
  j["t_end"] = cfg.t_end;
  nlohmann::json cal;
  cal["mode"] = to_string(cfg.calibration.mode);
  cal["break_day"] = cfg.calibration.break_day;
  cal["tau_min"] = cfg.calibration.tau_min;
  cal["tau_max"] = cfg.calibration.tau_max;
  cal["window"] = {cfg.calibration.window_start, cfg.calibration.window_end};
  j["calibration"] = cal;
  nlohmann::json sc;
  sc["t_start"] = cfg.scenario.t_start;
  sc["t_end"] = cfg.scenario.t_end;
  sc["price_mean"] = cfg.scenario.price_mean;
  sc["price_sd"] = cfg.scenario.price_sd;
  sc["fees_mean"] = cfg.scenario.fees_mean;
  sc["fees_sd"] = cfg.scenario.fees_sd;
  sc["correlation_time"] = cfg.scenario.correlation_time;
  sc["seed"] = cfg.scenario.seed;
  j["scenario"] = sc;
  return j;
}

}  // namespace detail

/// Parses a JSON config file. Relative paths inside the file resolve against
/// the file's own directory, so configs are location-independent.
inline void apply_config_file(RunConfig& cfg, const std::filesystem::path& config_path) {
  std::ifstream in(config_path);
  if (!in) throw Error("cannot open config file " + config_path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config " + config_path.string() + ": " + e.what());
  }
  const std::filesystem::path base = config_path.parent_path();

  if (j.contains("params")) detail::apply_params_json(cfg.params, j["params"]);
  if (j.contains("data")) {
    const auto& d = j["data"];
    cfg.price_csv = detail::get_path(d, "price_csv", base, cfg.price_csv);
    cfg.fees_csv = detail::get_path(d, "fees_csv", base, cfg.fees_csv);
    cfg.hashrate_csv = detail::get_path(d, "hashrate_csv", base, cfg.hashrate_csv);
    cfg.height_csv = detail::get_path(d, "height_csv", base, cfg.height_csv);
    cfg.cache_dir = detail::get_path(d, "cache_dir", base, cfg.cache_dir);
    if (d.contains("fetch")) cfg.use_fetch = d["fetch"].get<bool>();
  }
  if (j.contains("out_dir")) cfg.out_dir = detail::get_path(j, "out_dir", base, cfg.out_dir);
  cfg.t_end = detail::get_number(j, "t_end", cfg.t_end);
  if (j.contains("calibration")) {
    const auto& c = j["calibration"];
    if (c.contains("mode")) cfg.calibration.mode = parse_calibration_mode(c["mode"].get<std::string>());
    cfg.calibration.break_day = detail::get_number(c, "break_day", cfg.calibration.break_day);
    cfg.calibration.tau_min = detail::get_number(c, "tau_min", cfg.calibration.tau_min);
    cfg.calibration.tau_max = detail::get_number(c, "tau_max", cfg.calibration.tau_max);
    if (c.contains("window")) {
      const auto& w = c["window"];
      if (!w.is_array() || w.size() != 2) throw Error("config: calibration.window must be [start, end]");
      cfg.calibration.window_start = w[0].get<double>();
      cfg.calibration.window_end = w[1].get<double>();
    }
  }
  if (j.contains("scenario")) {
    const auto& s = j["scenario"];
    cfg.scenario.t_start = detail::get_number(s, "t_start", cfg.scenario.t_start);
    cfg.scenario.t_end = detail::get_number(s, "t_end", cfg.scenario.t_end);
    cfg.scenario.price_mean = detail::get_number(s, "price_mean", cfg.scenario.price_mean);
    cfg.scenario.price_sd = detail::get_number(s, "price_sd", cfg.scenario.price_sd);
    cfg.scenario.fees_mean = detail::get_number(s, "fees_mean", cfg.scenario.fees_mean);
    cfg.scenario.fees_sd = detail::get_number(s, "fees_sd", cfg.scenario.fees_sd);
    cfg.scenario.correlation_time =
        detail::get_number(s, "correlation_time", cfg.scenario.correlation_time);
    if (s.contains("seed")) cfg.scenario.seed = s["seed"].get<std::uint64_t>();
  }
}

namespace detail {

inline ExogenousSeries load_input(const RunConfig& cfg, std::string_view chart,
                                  const std::filesystem::path& csv) {
  if (cfg.use_fetch) return fetch_chart(chart, cfg.cache_dir);
  if (csv.empty()) {
    throw Error("no data source for " + std::string(chart) +
                " (set the CSV path in the config or enable fetch)");
  }
  return load_csv(csv, std::string(chart_info(chart).unit));
}

inline void write_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

inline void write_run_manifest(const RunConfig& cfg, const std::string& command,
                               const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = std::string(kVersion);
  j["config"] = config_to_json(cfg);
  j["outputs"] = outputs;
  if (command == "project") j["generator"] = kNoiseGeneratorId;
  write_json_file(j, cfg.out_dir / "run.json");
}

inline nlohmann::json result_to_json(const CalibrationResult& r) {
  nlohmann::json j;
  j["mode"] = to_string(r.mode);
  j["taus"] = nlohmann::json::array();
  for (const auto& reg : r.taus) {
    nlohmann::json t;
    if (std::isfinite(reg.until_day)) t["until_day"] = reg.until_day;
    t["tau_days"] = reg.tau_days;
    j["taus"].push_back(t);
  }
  if (r.mode != CalibrationMode::single) j["break_day"] = r.break_day;
  j["objective"] = r.objective_value;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  j["window"] = {r.window_start, r.window_end};
  j["residuals"] = nlohmann::json::array();
  for (const auto& p : r.residuals) {
    j["residuals"].push_back({{"day", p.day},
                              {"log10_model", p.log10_model},
                              {"log10_historical", p.log10_historical}});
  }
  return j;
}

}  // namespace detail

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  const ExogenousSeries price = detail::load_input(cfg, "market-price", cfg.price_csv);
  const ExogenousSeries fees = detail::load_input(cfg, "transaction-fees", cfg.fees_csv);
  const Trajectory traj = simulate(cfg.params, price, fees, cfg.t_end);

  std::filesystem::create_directories(cfg.out_dir);
  write_trajectory_csv(traj, cfg.out_dir / "trajectory.csv");
  detail::write_run_manifest(cfg, "simulate", {"trajectory.csv"});
  out << "simulate: " << traj.records.size() << " records to "
      << (cfg.out_dir / "trajectory.csv").string() << '\n';
  if (traj.hash_floor_applied) out << "simulate: note: hash-rate floor activated\n";
  return kExitOk;
}

inline int cmd_calibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  const ExogenousSeries price = detail::load_input(cfg, "market-price", cfg.price_csv);
  const ExogenousSeries fees = detail::load_input(cfg, "transaction-fees", cfg.fees_csv);
  const ExogenousSeries historical = detail::load_input(cfg, "hash-rate", cfg.hashrate_csv);

  const auto fitted_trajectory = [&](const CalibrationResult& r) {
    MiningParams p = cfg.params;
    p.adjustment_regimes = r.taus;
    return simulate(p, price, fees, cfg.calibration.window_end);
  };

  std::filesystem::create_directories(cfg.out_dir);
  nlohmann::json report;
  std::vector<std::string> outputs;

  CalibrationSpec single_spec = cfg.calibration;
  single_spec.mode = CalibrationMode::single;
  const CalibrationResult requested =
      calibrate(cfg.calibration, cfg.params, price, fees, historical);
  report["fit"] = detail::result_to_json(requested);
  write_trajectory_csv(fitted_trajectory(requested),
                       cfg.out_dir / (std::string("fit_") + to_string(requested.mode) + ".csv"));
  outputs.push_back(std::string("fit_") + to_string(requested.mode) + ".csv");
  out << "calibrate[" << to_string(requested.mode) << "]: objective "
      << format_double(requested.objective_value) << ", taus";
  for (const auto& t : requested.taus) out << ' ' << format_double(t.tau_days);
  out << " (" << requested.evaluations << " evaluations)\n";

  if (cfg.calibration.mode != CalibrationMode::single) {
    const CalibrationResult single_fit =
        calibrate(single_spec, cfg.params, price, fees, historical);
    report["single_fit"] = detail::result_to_json(single_fit);
    write_trajectory_csv(fitted_trajectory(single_fit), cfg.out_dir / "fit_single.csv");
    outputs.push_back("fit_single.csv");
    const FitComparison cmp = compare_fits(single_fit, requested);
    report["comparison"] = {{"objective_single", cmp.objective_single},
                            {"objective_two_regime", cmp.objective_two},
                            {"relative_improvement", cmp.relative_improvement},
                            {"two_regime_better", cmp.two_regime_better},
                            {"meaningful", cmp.meaningful}};
    out << "calibrate[single]: objective " << format_double(single_fit.objective_value)
        << ", tau " << format_double(single_fit.taus.front().tau_days) << '\n';
    out << "comparison: two-regime improves single by "
        << format_double(cmp.relative_improvement * 100.0) << "%"
        << (cmp.meaningful ? "" : " (not meaningful)") << '\n';
  }

  detail::write_json_file(report, cfg.out_dir / "fit_report.json");
  outputs.push_back("fit_report.json");
  detail::write_run_manifest(cfg, "calibrate", outputs);
  return kExitOk;
}

inline int cmd_project(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  const ExogenousSeries price = detail::load_input(cfg, "market-price", cfg.price_csv);
  const ExogenousSeries fees = detail::load_input(cfg, "transaction-fees", cfg.fees_csv);
  const Trajectory traj = project(cfg.params, price, fees, cfg.scenario);
  const ProjectionSummary summary = summarize_projection(traj, cfg.scenario);

  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream csv(cfg.out_dir / "trajectory.csv");
    if (!csv) throw Error("cannot write " + (cfg.out_dir / "trajectory.csv").string());
    csv << "# seed=" << cfg.scenario.seed << " generator=" << kNoiseGeneratorId << '\n';
    write_trajectory_csv(traj, csv);
  }

  nlohmann::json j;
  j["halving_days"] = summary.halving_days;
  j["peak_hash_rate_ghs"] = summary.peak_hash_rate_ghs;
  j["peak_day"] = summary.peak_day;
  j["peak_date"] = summary.peak_date;
  j["terminal_hash_rate_ghs"] = summary.terminal_hash_rate_ghs;
  j["terminal_day"] = summary.terminal_day;
  j["terminal_date"] = summary.terminal_date;
  j["seed"] = cfg.scenario.seed;
  j["generator"] = kNoiseGeneratorId;
  detail::write_json_file(j, cfg.out_dir / "summary.json");
  detail::write_run_manifest(cfg, "project", {"trajectory.csv", "summary.json"});

  out << "project: peak " << format_double(summary.peak_hash_rate_ghs) << " GH/s at day "
      << format_double(summary.peak_day) << " (" << summary.peak_date << "), terminal "
      << format_double(summary.terminal_hash_rate_ghs) << " GH/s at day "
      << format_double(summary.terminal_day) << '\n';
  return kExitOk;
}

/// Model-only self-checks: supply schedule landmarks, conservation along a
/// full coin-creation run, and the height curve. Optionally reports the gap
/// to a real-chain height CSV. Any violated invariant exits with status 2.
inline int cmd_sanity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SubsidySchedule schedule;
  bool ok = true;
  const auto check = [&](bool cond, const std::string& line) {
    out << (cond ? "[ok]   " : "[FAIL] ") << line << '\n';
    if (!cond) ok = false;
  };

  const double dt = cfg.params.dt_days;
  if (!(dt > 0.0)) throw Error("sanity: dt must be positive");
  const double t_end = cfg.t_end;

  check(subsidy_at_height(schedule, 0) == 50.0, "subsidy at height 0 = 50");
  check(subsidy_at_height(schedule, 210'000) == 25.0, "subsidy at height 210000 = 25");
  check(subsidy_satoshi_at_era(schedule, 32) == 1, "subsidy at era 32 = 1 satoshi");
  check(subsidy_satoshi_at_era(schedule, 33) == 0, "subsidy at era 33 = 0");

  const double asym = circulating_asymptote(schedule);
  check(asym > 20'999'999.0 && asym < 21'000'000.0,
        "supply asymptote " + format_double(asym) + " in (20999999, 21000000)");

  CoinState state;
  double max_conservation_gap = 0.0;
  double circulating_at_era0_end = -1.0;
  const double era0_day = static_cast<double>(schedule.halving_interval_blocks) / kBlocksPerDay;
  const auto n_steps = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  for (std::size_t i = 0; i < n_steps; ++i) {
    state = coin_step(schedule, state, dt);
    const double t = static_cast<double>(i + 1) * dt;
    max_conservation_gap =
        std::max(max_conservation_gap, std::abs(state.circulating + state.remaining - kTotalBtc));
    if (circulating_at_era0_end < 0.0 && t >= era0_day) {
      circulating_at_era0_end = state.circulating;
    }
  }
  const double expected_height = kBlocksPerDay * static_cast<double>(n_steps) * dt;
  check(state.height == expected_height,
        "height at day " + format_double(t_end) + " = " + format_double(state.height) +
            " (expected " + format_double(expected_height) + ")");
  check(max_conservation_gap <= 1e-6,
        "conservation max |circulating + remaining - 21M| = " +
            format_double(max_conservation_gap) + " BTC");
  if (circulating_at_era0_end >= 0.0) {
    const double era0_supply = minted_supply_through_era(schedule, 0);
    check(std::abs(circulating_at_era0_end - era0_supply) <= kBlocksPerDay * dt * 50.0,
          "circulating at first halving = " + format_double(circulating_at_era0_end) +
              " (era-0 sum " + format_double(era0_supply) + " +- one step)");
  }

  if (!cfg.height_csv.empty()) {
    const ExogenousSeries real = load_csv(cfg.height_csv, "blocks");
    const double t_cmp = std::min(t_end, real.last_day());
    const double model_height = kBlocksPerDay * t_cmp;
    const double real_height = real.value_at(t_cmp);
    out << "[info] height at day " << format_double(t_cmp) << ": model "
        << format_double(model_height) << " vs chain " << format_double(real_height) << " ("
        << format_double((model_height / real_height - 1.0) * 100.0) << "% gap)\n";
  }

  if (!ok) {
    err << "sanity: invariant violated\n";
    return kExitInvariant;
  }
  return kExitOk;
}

inline int cmd_fetch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  for (const auto& info : kKnownCharts) {
    const ExogenousSeries s = fetch_chart(info.name, cfg.cache_dir);
    out << "fetch: " << s.name() << " -> "
        << (cfg.cache_dir / (std::string(info.name) + ".csv")).string() << " (" << s.size()
        << " points)\n";
  }
  return kExitOk;
}

/// Entry point shared by the binary and the tests. args excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"system-dynamics model of bitcoin mining: supply schedule, hash-rate "
               "feedback loop, calibration, and stochastic projection"};
  app.name("hashpeak");
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string dt_str;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  auto* dt_opt = app.add_option("--dt", dt_str, "integration step in days");

  auto* sim = app.add_subcommand("simulate", "run the historical simulation");
  std::string sim_price, sim_fees;
  double sim_t_end = 0.0;
  auto* sim_t_end_opt = sim->add_option("--t-end", sim_t_end, "final day of the run");
  auto* sim_price_opt = sim->add_option("--price-csv", sim_price, "price series CSV");
  auto* sim_fees_opt = sim->add_option("--fees-csv", sim_fees, "fees series CSV");

  auto* cal = app.add_subcommand("calibrate", "fit the adjustment time(s) to history");
  std::string cal_mode, cal_price, cal_fees, cal_hash;
  double cal_break = 0.0;
  std::vector<double> cal_window;
  auto* cal_mode_opt = cal->add_option("--mode", cal_mode,
                                       "single | two-regime | two-regime-free-break");
  auto* cal_break_opt = cal->add_option("--break-day", cal_break, "regime break day");
  auto* cal_window_opt =
      cal->add_option("--window", cal_window, "fit window: start end")->expected(2);
  auto* cal_price_opt = cal->add_option("--price-csv", cal_price, "price series CSV");
  auto* cal_fees_opt = cal->add_option("--fees-csv", cal_fees, "fees series CSV");
  auto* cal_hash_opt = cal->add_option("--hashrate-csv", cal_hash, "historical hash-rate CSV");

  auto* proj = app.add_subcommand("project", "project the post-halving scenario");
  std::uint64_t proj_seed = 0;
  double proj_sd_price = 0.0, proj_sd_fees = 0.0, proj_mean_price = 0.0, proj_mean_fees = 0.0;
  double proj_horizon = 0.0, proj_present = 0.0;
  std::string proj_price, proj_fees;
  auto* proj_seed_opt = proj->add_option("--seed", proj_seed, "noise seed");
  auto* proj_sd_price_opt = proj->add_option("--sd-price", proj_sd_price, "price noise sd");
  auto* proj_sd_fees_opt = proj->add_option("--sd-fees", proj_sd_fees, "fees noise sd");
  auto* proj_mean_price_opt = proj->add_option("--mean-price", proj_mean_price, "future price mean");
  auto* proj_mean_fees_opt = proj->add_option("--mean-fees", proj_mean_fees, "future fees mean");
  auto* proj_horizon_opt = proj->add_option("--horizon", proj_horizon, "final projected day");
  auto* proj_present_opt = proj->add_option("--present", proj_present, "projection start day");
  auto* proj_price_opt = proj->add_option("--price-csv", proj_price, "price series CSV");
  auto* proj_fees_opt = proj->add_option("--fees-csv", proj_fees, "fees series CSV");

  auto* san = app.add_subcommand("sanity", "model-only invariant checks");
  std::string san_height;
  double san_t_end = 0.0;
  auto* san_height_opt = san->add_option("--height-csv", san_height, "real chain height CSV");
  auto* san_t_end_opt = san->add_option("--t-end", san_t_end, "final day of the check run");

  auto* fetch = app.add_subcommand("fetch", "download the three input charts to the cache");
  std::string fetch_cache;
  auto* fetch_cache_opt = fetch->add_option("--cache-dir", fetch_cache, "cache directory");

  for (CLI::App* sub : {sim, cal, proj, san, fetch}) sub->fallthrough();

  std::vector<std::string> argv_store = args;
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("hashpeak");
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (dt_opt->count()) {
      double dt = 0.0;
      if (!parse_double(dt_str, dt)) throw Error("--dt: not a number: '" + dt_str + "'");
      cfg.params.dt_days = dt;
    }

    if (sim->parsed()) {
      if (sim_t_end_opt->count()) cfg.t_end = sim_t_end;
      if (sim_price_opt->count()) cfg.price_csv = sim_price;
      if (sim_fees_opt->count()) cfg.fees_csv = sim_fees;
      return cmd_simulate(cfg, out, err);
    }
    if (cal->parsed()) {
      if (cal_mode_opt->count()) cfg.calibration.mode = parse_calibration_mode(cal_mode);
      if (cal_break_opt->count()) cfg.calibration.break_day = cal_break;
      if (cal_window_opt->count()) {
        cfg.calibration.window_start = cal_window[0];
        cfg.calibration.window_end = cal_window[1];
      }
      if (cal_price_opt->count()) cfg.price_csv = cal_price;
      if (cal_fees_opt->count()) cfg.fees_csv = cal_fees;
      if (cal_hash_opt->count()) cfg.hashrate_csv = cal_hash;
      return cmd_calibrate(cfg, out, err);
    }
    if (proj->parsed()) {
      if (proj_seed_opt->count()) cfg.scenario.seed = proj_seed;
      if (proj_sd_price_opt->count()) cfg.scenario.price_sd = proj_sd_price;
      if (proj_sd_fees_opt->count()) cfg.scenario.fees_sd = proj_sd_fees;
      if (proj_mean_price_opt->count()) cfg.scenario.price_mean = proj_mean_price;
      if (proj_mean_fees_opt->count()) cfg.scenario.fees_mean = proj_mean_fees;
      if (proj_horizon_opt->count()) cfg.scenario.t_end = proj_horizon;
      if (proj_present_opt->count()) cfg.scenario.t_start = proj_present;
      if (proj_price_opt->count()) cfg.price_csv = proj_price;
      if (proj_fees_opt->count()) cfg.fees_csv = proj_fees;
      return cmd_project(cfg, out, err);
    }
    if (san->parsed()) {
      if (san_height_opt->count()) cfg.height_csv = san_height;
      if (san_t_end_opt->count()) cfg.t_end = san_t_end;
      return cmd_sanity(cfg, out, err);
    }
    if (fetch->parsed()) {
      if (fetch_cache_opt->count()) cfg.cache_dir = fetch_cache;
      return cmd_fetch(cfg, out, err);
    }
    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hashpeak
