// mbm: simulate, bound, estimate and run experiments for multifractional Brownian motion.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbm/covariance.hpp"
#include "mbm/errors.hpp"
#include "mbm/growth.hpp"
#include "mbm/hurst.hpp"
#include "mbm/models.hpp"
#include "mbm/montecarlo.hpp"
#include "mbm/simulate.hpp"
#include "mbm/variance_bounds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kBadFlags = 2, kDomain = 3, kIo = 4, kNumerical = 5 };

int fail(const char* kind, const std::string& msg, int code) {
  json j{{"error", kind}, {"message", msg}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

struct SimulateOpts {
  std::string hurst;
  double T = 1.0;
  std::size_t n = 1024;
  std::size_t paths = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string model = "none";
  double theta = 0.0;
  double x0 = 0.0;
  bool binary = false;
};

int cmd_simulate(const SimulateOpts& o) {
  const auto h = mbm::parse_hurst(o.hurst);
  if (o.model != "none" && o.model != "linear" && o.model != "ou")
    throw mbm::DomainError("--model must be none, linear or ou");
  std::optional<mbm::OUModel> ou;
  if (o.model == "ou") ou.emplace(o.theta, o.x0, h);
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw mbm::IoError("cannot create " + o.out + ": " + ec.message());

  const mbm::PathSimulator sim(mbm::kernel(h), o.T, o.n);
  json index = json::array();
  for (std::size_t i = 0; i < o.paths; ++i) {
    mbm::SamplePath p = sim.path(o.seed, i);
    if (o.model == "linear") p = mbm::linear_from_noise(o.theta, p);
    if (ou) p = mbm::ou_from_noise(o.theta, o.x0, p);
    char name[64];
    std::snprintf(name, sizeof name, "path_%05zu.%s", i, o.binary ? "bin" : "csv");
    const fs::path file = fs::path(o.out) / name;
    if (o.binary)
      p.write_binary(file);
    else
      p.write_csv(file);
    json s = p.sidecar();
    s["file"] = name;
    index.push_back(std::move(s));
  }
  json side{{"hurst", mbm::to_json(h)},
            {"horizon", o.T},
            {"n", o.n},
            {"paths", o.paths},
            {"seed", o.seed},
            {"model", o.model},
            {"theta", o.theta},
            {"x0", o.x0},
            {"jitter", sim.jitter()},
            {"files", std::move(index)}};
  const fs::path sidecar = fs::path(o.out) / "paths.json";
  std::ofstream out(sidecar);
  if (!out) throw mbm::IoError("cannot write " + sidecar.string());
  out << side.dump(2) << '\n';
  print({{"written", o.paths}, {"directory", o.out}, {"sidecar", sidecar.string()}});
  return kOk;
}

struct BoundsOpts {
  std::string hurst;
  std::string kind = "path";
  double delta = 0.3;
  double eps = 0.3;
  double p = 3.0;
  double theta = 0.5;
  double gamma = 0.0;
  double strip_eps = 0.0;
  std::vector<double> u;
};

int cmd_bounds(const BoundsOpts& o) {
  const auto h = mbm::parse_hurst(o.hurst);
  const mbm::IncrementBounds ib(h);
  json j{{"hurst", mbm::to_json(h)},
         {"h3", h.h3()},
         {"h4", h.h4()},
         {"h5", h.h5()},
         {"variance_constants", ib.constants().to_json()}};
  if (o.kind == "variance") {
    print(j);
    return kOk;
  }
  std::optional<mbm::GrowthBound> gb;
  if (o.kind == "path")
    gb.emplace(mbm::growth_bound_path(ib, o.delta, o.theta, o.gamma));
  else if (o.kind == "increment")
    gb.emplace(mbm::growth_bound_incr(ib, o.eps, o.p, o.theta, o.gamma, o.strip_eps));
  else
    throw mbm::DomainError("--kind must be variance, path or increment");
  j["bound"] = gb->to_json();
  json ev = json::array();
  for (double u : o.u)
    ev.push_back({{"u", u}, {"bound", gb->evaluate(u)}, {"best", gb->evaluate_best(u)}});
  j["evaluations"] = std::move(ev);
  print(j);
  return kOk;
}

struct EstimateOpts {
  std::string model;
  std::string in;
  std::string hurst;
  std::string method = "fractional";
  double level = 0.95;
  double alpha = 0.0;
};

int cmd_estimate(const EstimateOpts& o) {
  const auto h = mbm::parse_hurst(o.hurst);
  const fs::path file(o.in);
  const mbm::SamplePath x = file.extension() == ".bin" ? mbm::SamplePath::read_binary(file)
                                                       : mbm::SamplePath::read_csv(file);
  mbm::EstimatorResult r;
  if (o.model == "linear")
    r = mbm::estimate_linear(x, h, o.level);
  else if (o.model == "ou")
    r = mbm::estimate_ou(x, h, mbm::integration_method_from_string(o.method), o.alpha);
  else
    throw mbm::DomainError("model must be linear or ou");
  print(r.to_json());
  return kOk;
}

int cmd_experiment(const std::string& config, const std::string& out_dir) {
  auto cfg = mbm::ExperimentConfig::load(config);
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw mbm::IoError("cannot create " + out_dir + ": " + ec.message());
    for (auto& p : cfg.outputs)
      if (p.is_relative()) p = fs::path(out_dir) / p;
  }
  const auto rep = mbm::run_experiment(cfg);
  rep.write_outputs();
  print(rep.to_json());
  return kOk;
}

int cmd_certify(const std::string& spec, double horizon, std::size_t grid) {
  const auto h = mbm::parse_hurst(spec);
  if (grid == 0) grid = static_cast<std::size_t>(horizon * mbm::kCertifyPointsPerUnit) + 1;
  const auto rep = mbm::certify(h, horizon, grid);
  json j = mbm::to_json(rep);
  j["hurst"] = mbm::to_json(h);
  print(j);
  return rep.pass ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multifractional Brownian motion: simulation, bounds and drift estimation"};
  app.require_subcommand(1);

  SimulateOpts so;
  auto* sim = app.add_subcommand("simulate", "Simulate mBm (or a model driven by it) to CSV");
  sim->add_option("--hurst", so.hurst, "Hurst function, e.g. sin:0.7,0.05,1")->required();
  sim->add_option("--T", so.T, "Horizon")->check(CLI::PositiveNumber);
  sim->add_option("--n", so.n, "Grid steps")->check(CLI::Range(2, 1 << 15));
  sim->add_option("--paths", so.paths, "Number of paths")->check(CLI::PositiveNumber);
  sim->add_option("--seed", so.seed, "Master seed");
  sim->add_option("--out", so.out, "Output directory");
  sim->add_option("--model", so.model, "none | linear | ou");
  sim->add_option("--theta", so.theta, "Drift for --model");
  sim->add_option("--x0", so.x0, "Initial value for --model ou");
  sim->add_flag("--binary", so.binary, "Binary column format instead of CSV");

  BoundsOpts bo;
  auto* bnd = app.add_subcommand("bounds", "Evaluate variance and growth-bound constants");
  bnd->add_option("--hurst", bo.hurst, "Hurst function")->required();
  bnd->add_option("--kind", bo.kind, "variance | path | increment");
  bnd->add_option("--delta", bo.delta, "Path growth exponent");
  bnd->add_option("--eps", bo.eps, "Increment growth exponent");
  bnd->add_option("--p", bo.p, "Log exponent (> 2)");
  bnd->add_option("--theta", bo.theta, "theta in (0,1)");
  bnd->add_option("--gamma", bo.gamma, "gamma (0 = half the admissible limit)");
  bnd->add_option("--strip-eps", bo.strip_eps, "Strip covering exponent in (0,h3)");
  bnd->add_option("--u", bo.u, "Points at which to evaluate the tail bound");

  EstimateOpts eo;
  auto* est = app.add_subcommand("estimate", "Estimate the drift from an observed path");
  est->add_option("model", eo.model, "linear | ou")->required();
  est->add_option("--in", eo.in, "Path file (.csv or .bin)")->required();
  est->add_option("--hurst", eo.hurst, "Hurst function")->required();
  est->add_option("--method", eo.method, "fractional | riemann (ou only)");
  est->add_option("--level", eo.level, "Confidence level (linear only)");
  est->add_option("--alpha", eo.alpha, "Fractional order (0 = default)");

  std::string config, exp_out;
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  exp->add_option("--config", config, "Experiment JSON")->required();
  exp->add_option("--out", exp_out, "Directory for relative output paths");

  std::string cert_spec;
  double cert_T = 10.0;
  std::size_t cert_grid = 0;
  auto* cert = app.add_subcommand("certify", "Check range and Hölder bounds on a grid");
  cert->add_option("--hurst", cert_spec, "Hurst function")->required();
  cert->add_option("--horizon", cert_T, "Horizon")->check(CLI::PositiveNumber);
  cert->add_option("--grid", cert_grid, "Grid points (0 = 512 per unit time)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("bad_flags", e.what(), kBadFlags);
  }

  try {
    if (*sim) return cmd_simulate(so);
    if (*bnd) return cmd_bounds(bo);
    if (*est) return cmd_estimate(eo);
    if (*exp) return cmd_experiment(config, exp_out);
    if (*cert) return cmd_certify(cert_spec, cert_T, cert_grid);
  } catch (const mbm::DomainError& e) {
    return fail("domain", e.what(), kDomain);
  } catch (const mbm::IoError& e) {
    return fail("io", e.what(), kIo);
  } catch (const mbm::NumericalError& e) {
    return fail("numerical", e.what(), kNumerical);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInternal);
  }
  return kInternal;
}
