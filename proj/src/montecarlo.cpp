#include "mbm/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mbm/errors.hpp"
#include "mbm/parallel.hpp"
#include "mbm/rng.hpp"
#include "mbm/simulate.hpp"

namespace mbm {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::consistency: return "consistency";
    case ExperimentKind::coverage: return "coverage";
    case ExperimentKind::dominance: return "dominance";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(std::string_view s) {
  if (s == "consistency") return ExperimentKind::consistency;
  if (s == "coverage") return ExperimentKind::coverage;
  if (s == "dominance") return ExperimentKind::dominance;
  throw DomainError("unknown experiment '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw DomainError("replications must be >= 1");
  if (horizons.empty()) throw DomainError("at least one horizon is required");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] > 0.0)) throw DomainError("horizons must be positive");
    if (i > 0 && !(horizons[i] > horizons[i - 1])) throw DomainError("horizons must increase");
  }
  if (n_per_unit < 1) throw DomainError("n_per_unit must be >= 1");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0,1)");
  const std::string type = model.value("type", "");
  if (kind != ExperimentKind::dominance && type != "ou" && type != "linear")
    throw DomainError("model.type must be 'ou' or 'linear'");
  if (kind == ExperimentKind::coverage && type != "linear")
    throw DomainError("coverage experiments need the linear model");
}

nlohmann::json ExperimentConfig::to_json() const {
  std::vector<std::string> outs;
  for (const auto& p : outputs) outs.push_back(p.string());
  nlohmann::json j{{"experiment", std::string(to_string(kind))},
                   {"model", model},
                   {"hurst", mbm::to_json(hurst)},
                   {"horizons", horizons},
                   {"n_per_unit", n_per_unit},
                   {"replications", replications},
                   {"first_replication", first_replication},
                   {"seed", seed},
                   {"level", level},
                   {"method", std::string(to_string(method))},
                   {"bound", bound},
                   {"u_grid", u_grid},
                   {"threads", threads},
                   {"outputs", outs}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("experiment"))
      c.kind = experiment_kind_from_string(j.at("experiment").get<std::string>());
    if (j.contains("model")) c.model = j.at("model");
    if (j.contains("hurst")) c.hurst = hurst_from_json(j.at("hurst"));
    if (j.contains("horizons")) c.horizons = j.at("horizons").get<std::vector<double>>();
    if (j.contains("n_per_unit")) c.n_per_unit = j.at("n_per_unit").get<std::size_t>();
    if (j.contains("replications")) c.replications = j.at("replications").get<std::size_t>();
    if (j.contains("first_replication"))
      c.first_replication = j.at("first_replication").get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("level")) c.level = j.at("level").get<double>();
    if (j.contains("method"))
      c.method = integration_method_from_string(j.at("method").get<std::string>());
    if (j.contains("bound")) c.bound = j.at("bound");
    if (j.contains("u_grid")) c.u_grid = j.at("u_grid").get<std::vector<double>>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    if (j.contains("outputs"))
      for (const auto& s : j.at("outputs")) c.outputs.emplace_back(s.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  return from_json(j);
}

std::vector<double> summary_quantiles(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> q;
  for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) q.push_back(stats::sorted_quantile(values, p));
  return q;
}

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t steps_for(double T, std::size_t per_unit) {
  return static_cast<std::size_t>(std::llround(T * static_cast<double>(per_unit)));
}

void summarize(ExperimentReport& rep) {
  const auto& cfg = rep.config;
  for (double T : cfg.horizons) {
    HorizonSummary s;
    s.T = T;
    std::vector<double> abs_err, pivots;
    std::size_t hits = 0, with_ci = 0;
    for (const auto& r : rep.records) {
      if (r.T != T) continue;
      abs_err.push_back(std::abs(r.error));
      if (r.pivot) pivots.push_back(*r.pivot);
      if (r.covered) {
        ++with_ci;
        hits += *r.covered ? 1 : 0;
      }
    }
    s.count = abs_err.size();
    double sum = 0.0;
    for (double e : abs_err) sum += e;
    s.mean_abs_error = sum / static_cast<double>(s.count);
    s.quantiles = summary_quantiles(abs_err);
    s.median_abs_error = s.quantiles[2];
    if (with_ci > 0) s.coverage = static_cast<double>(hits) / static_cast<double>(with_ci);
    if (pivots.size() >= stats::kKsMinSamples) s.pivot_ks = stats::ks_normal(pivots);
    rep.horizons.push_back(std::move(s));
  }
  for (std::size_t i = 1; i < rep.horizons.size(); ++i) {
    const double prev = rep.horizons[i - 1].median_abs_error;
    rep.decay_ratios.push_back(prev > 0.0 ? rep.horizons[i].median_abs_error / prev
                                          : std::numeric_limits<double>::quiet_NaN());
  }
}

// Simulates every replication once on the longest horizon and estimates on prefixes.
ExperimentReport run_estimation(const ExperimentConfig& cfg, bool coverage) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const double Tmax = cfg.horizons.back();
  const std::size_t n = steps_for(Tmax, cfg.n_per_unit);
  const PathSimulator sim(CovKernel(cfg.hurst), Tmax, n);

  const std::string type = cfg.model.at("type").get<std::string>();
  const double theta = cfg.model.at("theta").get<double>();
  const double x0 = cfg.model.value("x0", 0.0);
  std::optional<OUModel> ou;
  if (type == "ou") ou.emplace(theta, x0, cfg.hurst);

  const std::size_t H = cfg.horizons.size();
  std::vector<ReplicationRecord> records(cfg.replications * H);
  parallel_for(
      cfg.replications,
      [&](std::size_t r) {
        const std::uint64_t index = cfg.first_replication + r;
        const SamplePath noise = sim.path(cfg.seed, index);
        const SamplePath x = ou ? ou_from_noise(theta, x0, noise) : linear_from_noise(theta, noise);
        for (std::size_t k = 0; k < H; ++k) {
          const std::size_t m = steps_for(cfg.horizons[k], cfg.n_per_unit);
          const SamplePath xp = m == x.n() ? x : x.prefix(m);
          ReplicationRecord rec;
          rec.replication = index;
          rec.seed = derive_seed(cfg.seed, index);
          rec.T = cfg.horizons[k];
          if (ou) {
            rec.theta_hat = estimate_ou(xp, cfg.hurst, cfg.method).estimate;
          } else {
            const auto er = estimate_linear(xp, cfg.hurst, cfg.level, theta);
            rec.theta_hat = er.estimate;
            rec.pivot = er.pivot;
            if (coverage) rec.covered = er.ci->contains(theta);
          }
          rec.error = rec.theta_hat - theta;
          records[r * H + k] = rec;
        }
      },
      cfg.threads);

  ExperimentReport rep;
  rep.config = cfg;
  rep.records = std::move(records);
  summarize(rep);
  rep.runtime_seconds = elapsed(t0);
  return rep;
}

}  // namespace

ExperimentReport run_consistency(const ExperimentConfig& cfg) { return run_estimation(cfg, false); }

ExperimentReport run_coverage(const ExperimentConfig& cfg, double level) {
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::coverage;
  c.level = level;
  return run_estimation(c, true);
}

GrowthBound bound_from_config(const ExperimentConfig& cfg) {
  const nlohmann::json& b = cfg.bound;
  const std::string kind = b.value("kind", "path");
  const double theta = b.value("theta", 0.5);
  const double gamma = b.value("gamma", 0.0);
  if (kind == "path") return growth_bound_path(cfg.hurst, b.value("delta", 0.3), theta, gamma);
  if (kind == "increment")
    return growth_bound_incr(cfg.hurst, b.value("eps", 0.3), b.value("p", 3.0), theta, gamma,
                             b.value("strip_eps", 0.0));
  throw DomainError("bound.kind must be 'path' or 'increment'");
}

std::vector<double> default_u_grid(const GrowthBound& gb, std::span<const double> samples) {
  double lo = samples.empty() ? 0.0 : *std::min_element(samples.begin(), samples.end());
  double hi = samples.empty() ? 1.0 : *std::max_element(samples.begin(), samples.end());
  hi = std::max(hi, 1e-12);
  double u = std::max(hi, gb.tail().validity());
  for (int i = 0; i < 200 && gb.evaluate_best(u) > 1e-3; ++i) u *= 1.25;
  const double top = std::max(2.0 * hi, u);
  std::vector<double> grid(40);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = lo + (top - lo) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  return grid;
}

ExperimentReport run_dominance(const ExperimentConfig& cfg, const GrowthBound& gb,
                               std::vector<double> u_grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const double T = cfg.horizons.back();
  const std::size_t n = steps_for(T, cfg.n_per_unit);
  const PathSimulator sim(CovKernel(cfg.hurst), T, n);
  std::vector<double> stat(cfg.replications);
  parallel_for(
      cfg.replications,
      [&](std::size_t r) {
        stat[r] = sup_statistic(sim.path(cfg.seed, cfg.first_replication + r), gb);
      },
      cfg.threads);
  if (u_grid.empty()) u_grid = default_u_grid(gb, stat);

  ExperimentReport rep;
  rep.config = cfg;
  rep.config.u_grid = u_grid;
  rep.bound = gb.to_json();
  rep.dominance = verify_dominance(gb.tail(), stat, u_grid, 0.99);
  rep.sup_statistics = std::move(stat);
  rep.runtime_seconds = elapsed(t0);
  return rep;
}

ExperimentReport run_dominance(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_dominance(cfg, bound_from_config(cfg), cfg.u_grid);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::consistency: return run_consistency(cfg);
    case ExperimentKind::coverage: return run_coverage(cfg, cfg.level);
    case ExperimentKind::dominance: return run_dominance(cfg);
  }
  throw DomainError("unknown experiment");
}

nlohmann::json ExperimentReport::to_json(bool include_runtime) const {
  nlohmann::json j{{"config", config.to_json()}};
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : horizons) {
    nlohmann::json e{{"T", h.T},
                     {"count", h.count},
                     {"mean_abs_error", h.mean_abs_error},
                     {"median_abs_error", h.median_abs_error},
                     {"quantile_levels", {0.05, 0.25, 0.5, 0.75, 0.95}},
                     {"quantiles", h.quantiles}};
    e["coverage"] = h.coverage ? nlohmann::json(*h.coverage) : nlohmann::json();
    if (h.pivot_ks)
      e["pivot_ks"] = {{"statistic", h.pivot_ks->statistic}, {"p_value", h.pivot_ks->p_value}};
    hs.push_back(std::move(e));
  }
  j["horizons"] = std::move(hs);
  nlohmann::json ratios = nlohmann::json::array();
  for (double r : decay_ratios) ratios.push_back(std::isfinite(r) ? nlohmann::json(r) : nlohmann::json());
  j["decay_ratios"] = std::move(ratios);
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json e{{"replication", r.replication},
                     {"seed", r.seed},
                     {"T", r.T},
                     {"theta_hat", r.theta_hat},
                     {"error", r.error}};
    if (r.pivot) e["pivot"] = *r.pivot;
    if (r.covered) e["covered"] = *r.covered;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  j["bound"] = bound;
  j["dominance"] = dominance ? dominance->to_json() : nlohmann::json();
  j["sup_statistics"] = sup_statistics;
  if (include_runtime) j["runtime_seconds"] = runtime_seconds;
  return j;
}

void ExperimentReport::write_csv(const std::filesystem::path& file) const {
  std::FILE* f = std::fopen(file.c_str(), "w");
  if (!f) throw IoError("cannot write " + file.string());
  if (dominance) {
    std::fputs("u,exceedances,frequency,wilson_lower,wilson_upper,bound,status\n", f);
    for (const auto& p : dominance->points)
      std::fprintf(f, "%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%s\n", p.u, p.exceedances, p.frequency,
                   p.wilson_lower, p.wilson_upper, p.bound, to_string(p.status).c_str());
  } else {
    std::fputs("replication,seed,T,theta_hat,error\n", f);
    for (const auto& r : records)
      std::fprintf(f, "%llu,%llu,%.17g,%.17g,%.17g\n",
                   static_cast<unsigned long long>(r.replication),
                   static_cast<unsigned long long>(r.seed), r.T, r.theta_hat, r.error);
  }
  if (std::fclose(f) != 0) throw IoError("cannot write " + file.string());
}

void ExperimentReport::write_dat(const std::filesystem::path& file) const {
  std::FILE* f = std::fopen(file.c_str(), "w");
  if (!f) throw IoError("cannot write " + file.string());
  if (dominance) {
    std::fputs("# u frequency wilson_upper bound\n", f);
    for (const auto& p : dominance->points)
      std::fprintf(f, "%.17g %.17g %.17g %.17g\n", p.u, p.frequency, p.wilson_upper, p.bound);
  } else {
    std::fputs("# T mean median q05 q25 q75 q95 coverage\n", f);
    for (const auto& h : horizons)
      std::fprintf(f, "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", h.T, h.mean_abs_error,
                   h.median_abs_error, h.quantiles[0], h.quantiles[1], h.quantiles[3],
                   h.quantiles[4], h.coverage.value_or(std::nan("")));
  }
  if (std::fclose(f) != 0) throw IoError("cannot write " + file.string());
}

void ExperimentReport::write_outputs() const {
  for (const auto& p : config.outputs) {
    const auto ext = p.extension().string();
    if (ext == ".csv") {
      write_csv(p);
    } else if (ext == ".dat") {
      write_dat(p);
    } else {
      std::ofstream out(p);
      if (!out) throw IoError("cannot write " + p.string());
      out << to_json().dump(2) << '\n';
    }
  }
}

}  // namespace mbm
