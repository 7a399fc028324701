#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbm/gauss_bounds.hpp"
#include "mbm/growth.hpp"
#include "mbm/hurst.hpp"
#include "mbm/models.hpp"
#include "mbm/stats.hpp"

namespace mbm {

enum class ExperimentKind { consistency, coverage, dominance };

std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(std::string_view s);

/// JSON schema:
///   {"experiment": "consistency" | "coverage" | "dominance",
///    "model": {"type": "ou", "theta": 0.5, "x0": 1}   (or {"type": "linear", "theta": 1}),
///    "hurst": {"kind": "sinusoidal", "params": [0.75, 0.05, 1]},
///    "horizons": [5, 10, 20], "n_per_unit": 512, "replications": 200,
///    "first_replication": 0, "seed": 1, "level": 0.95, "method": "fractional",
///    "bound": {"kind": "path", "delta": 0.3, "theta": 0.5, "gamma": 0},
///    "u_grid": [...], "threads": 0, "outputs": ["report.json", "table.csv", "curve.dat"]}
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::consistency;
  nlohmann::json model = {{"type", "ou"}, {"theta", 0.5}, {"x0", 1.0}};
  HurstFunction hurst = make_hurst(HurstKind::sinusoidal, {0.75, 0.05, 1.0});
  std::vector<double> horizons{5.0, 10.0, 20.0};
  std::size_t n_per_unit = 512;
  std::size_t replications = 100;
  std::uint64_t first_replication = 0;
  std::uint64_t seed = 1;
  double level = 0.95;
  IntegrationMethod method = IntegrationMethod::fractional;
  nlohmann::json bound = nlohmann::json::object();
  std::vector<double> u_grid;
  unsigned threads = 0;
  std::vector<std::filesystem::path> outputs;

  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& file);
};

/// One estimate: replication index, its derived seed, horizon, estimate, error.
struct ReplicationRecord {
  std::uint64_t replication = 0;
  std::uint64_t seed = 0;
  double T = 0.0;
  double theta_hat = 0.0;
  double error = 0.0;
  /// Normalized error (linear model), CI hit (coverage).
  std::optional<double> pivot;
  std::optional<bool> covered;
};

struct HorizonSummary {
  double T = 0.0;
  std::size_t count = 0;
  double mean_abs_error = 0.0;
  double median_abs_error = 0.0;
  /// Quantiles of |error| at 0.05, 0.25, 0.5, 0.75, 0.95.
  std::vector<double> quantiles;
  std::optional<double> coverage;
  std::optional<stats::KsResult> pivot_ks;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<HorizonSummary> horizons;
  /// median(T_{k+1}) / median(T_k)
  std::vector<double> decay_ratios;
  std::vector<ReplicationRecord> records;
  std::optional<DominanceReport> dominance;
  nlohmann::json bound = nullptr;
  std::vector<double> sup_statistics;
  double runtime_seconds = 0.0;

  /// Full report; runtime is the only non-deterministic field.
  nlohmann::json to_json(bool include_runtime = true) const;
  /// "replication,seed,T,theta_hat,error" rows.
  void write_csv(const std::filesystem::path& file) const;
  /// gnuplot columns: T mean median q05 q25 q75 q95 (coverage if present).
  void write_dat(const std::filesystem::path& file) const;
  /// Writes to every path in config.outputs by extension (.json/.csv/.dat).
  void write_outputs() const;
};

/// Quantiles at 0.05, 0.25, 0.5, 0.75, 0.95 of the given values.
std::vector<double> summary_quantiles(std::vector<double> values);

ExperimentReport run_consistency(const ExperimentConfig& cfg);
ExperimentReport run_coverage(const ExperimentConfig& cfg, double level);
ExperimentReport run_dominance(const ExperimentConfig& cfg);
/// Dominance against an explicit bound and its statistic.
ExperimentReport run_dominance(const ExperimentConfig& cfg, const GrowthBound& gb,
                               std::vector<double> u_grid);
/// Dispatches on cfg.kind.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Builds the growth bound described by cfg.bound.
GrowthBound bound_from_config(const ExperimentConfig& cfg);

/// Default u grid: 40 points from the smallest sample to beyond the point
/// where the bound drops below 1e-3 (or twice the largest sample).
std::vector<double> default_u_grid(const GrowthBound& gb, std::span<const double> samples);

}  // namespace mbm
