#include "mbm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include "mbm/errors.hpp"
#include "mbm/parallel.hpp"
#include "mbm/rng.hpp"

namespace mbm {

PathSimulator::PathSimulator(const CovKernel& k, double horizon, std::size_t n)
    : kernel_(k), horizon_(horizon), n_(n) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be positive");
  if (n < 2) throw DomainError("grid needs n >= 2");

  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = horizon * static_cast<double>(i + 1) / n;
  double scale = 0.0;
  for (double t : times) scale = std::max(scale, kernel_.variance(t));

  // factor in place; only one n x n matrix is alive at a time
  auto attempt = [&](double jit) {
    Eigen::MatrixXd G = kernel_.gram(times);
    if (jit > 0.0) G.diagonal().array() += jit * scale;
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(G);
    if (llt.info() != Eigen::Success) return false;
    L_ = std::move(G);
    return true;
  };
  if (attempt(0.0)) return;
  for (double jit = kJitterStart; jit <= kJitterMax * 1.0000001; jit *= 10.0) {
    if (attempt(jit)) {
      jitter_ = jit;
      return;
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(kernel_.gram(times));
  std::ostringstream msg;
  msg << "Cholesky factorization failed after jitter " << kJitterMax
      << "; smallest LDLT pivot " << ldlt.vectorD().minCoeff();
  throw NumericalError(msg.str());
}

SamplePath PathSimulator::path(std::uint64_t seed, std::uint64_t index) const {
  const std::uint64_t s = derive_seed(seed, index);
  std::mt19937_64 gen(s);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(static_cast<Eigen::Index>(n_));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(gen);
  Eigen::VectorXd y = L_.triangularView<Eigen::Lower>() * z;

  std::vector<double> values(n_ + 1);
  values[0] = 0.0;
  for (std::size_t i = 0; i < n_; ++i) values[i + 1] = y[static_cast<Eigen::Index>(i)];
  nlohmann::json meta{{"generator", "cholesky"},
                      {"hurst", to_json(kernel_.hurst())},
                      {"master_seed", seed},
                      {"index", index},
                      {"jitter", jitter_}};
  return SamplePath(dt(), std::move(values), s, std::move(meta));
}

std::vector<SamplePath> PathSimulator::paths(std::uint64_t seed, std::size_t count,
                                             std::uint64_t first, unsigned threads) const {
  std::vector<std::optional<SamplePath>> slots(count);
  parallel_for(
      count, [&](std::size_t i) { slots[i].emplace(path(seed, first + i)); }, threads);
  std::vector<SamplePath> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<SamplePath> simulate(const CovKernel& k, double horizon, std::size_t n,
                                 std::size_t paths, std::uint64_t seed) {
  if (paths < 1) throw DomainError("need at least one path");
  return PathSimulator(k, horizon, n).paths(seed, paths);
}

}  // namespace mbm
