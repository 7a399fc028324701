#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mbm/errors.hpp"
#include "mbm/montecarlo.hpp"

using namespace mbm;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.horizons = {2.0, 4.0};
  cfg.n_per_unit = 64;
  cfg.replications = 10;
  cfg.seed = 17;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("consistency runs are reproducible") {
  auto cfg = small_config();
  auto a = run_consistency(cfg);
  auto b = run_consistency(cfg);
  CHECK(a.to_json(false) == b.to_json(false));
  REQUIRE(a.horizons.size() == 2);
  CHECK(a.horizons[0].count == 10);
  CHECK(a.horizons[0].quantiles.size() == 5);
  CHECK(a.decay_ratios.size() == 1);

  cfg.threads = 3;
  auto c = run_consistency(cfg);
  CHECK(a.to_json(false)["records"] == c.to_json(false)["records"]);
}

TEST_CASE("replication ranges merge") {
  auto cfg = small_config();
  auto whole = run_consistency(cfg);
  cfg.replications = 4;
  auto head = run_consistency(cfg);
  cfg.first_replication = 4;
  cfg.replications = 6;
  auto tail = run_consistency(cfg);
  REQUIRE(head.records.size() + tail.records.size() == whole.records.size());
  std::vector<ReplicationRecord> merged = head.records;
  merged.insert(merged.end(), tail.records.begin(), tail.records.end());
  auto key = [](const ReplicationRecord& r) { return std::make_pair(r.replication, r.T); };
  std::sort(merged.begin(), merged.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  auto all = whole.records;
  std::sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].seed == merged[i].seed);
    CHECK(all[i].theta_hat == merged[i].theta_hat);
  }
}

TEST_CASE("near-certain intervals cover") {
  auto cfg = small_config();
  cfg.model = {{"type", "linear"}, {"theta", 1.0}};
  cfg.kind = ExperimentKind::coverage;
  cfg.replications = 60;
  auto rep = run_coverage(cfg, 1.0 - 1e-9);
  for (const auto& h : rep.horizons) {
    REQUIRE(h.coverage);
    CHECK(*h.coverage == 1.0);
  }
}

TEST_CASE("config round trip and validation") {
  auto cfg = small_config();
  cfg.bound = {{"kind", "path"}, {"delta", 0.3}};
  auto back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());

  auto j = cfg.to_json();
  j["horizons"] = nlohmann::json::array({4.0, 2.0});
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), DomainError);
  j = cfg.to_json();
  j["replications"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), DomainError);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/cfg.json"), IoError);
}

TEST_CASE("dominance experiment on a small sample") {
  auto cfg = small_config();
  cfg.kind = ExperimentKind::dominance;
  cfg.model = {{"type", "none"}};
  cfg.hurst = parse_hurst("sin:0.7,0.1,1");
  cfg.horizons = {5.0};
  cfg.n_per_unit = 40;
  cfg.replications = 60;
  cfg.bound = {{"kind", "path"}, {"delta", 0.3}};
  auto rep = run_experiment(cfg);
  REQUIRE(rep.dominance);
  CHECK(rep.sup_statistics.size() == 60);
  CHECK_FALSE(rep.dominance->any_violated());

  auto dir = std::filesystem::temp_directory_path() / "mbm_unit_mc";
  std::filesystem::create_directories(dir);
  rep.config.outputs = {dir / "r.json", dir / "t.csv", dir / "c.dat"};
  rep.write_outputs();
  for (auto f : {"r.json", "t.csv", "c.dat"}) CHECK(std::filesystem::file_size(dir / f) > 0);
  std::filesystem::remove_all(dir);
}
