#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mbm/covariance.hpp"
#include "mbm/sample_path.hpp"

namespace mbm {

inline constexpr double kJitterStart = 1e-12;
inline constexpr double kJitterMax = 1e-8;

/// Exact sampler for mBm on t_i = i * horizon / n. The Cholesky factor of
/// the Gram matrix on t_1..t_n is computed once and shared read-only.
class PathSimulator {
 public:
  PathSimulator(const CovKernel& k, double horizon, std::size_t n);

  double horizon() const { return horizon_; }
  std::size_t n() const { return n_; }
  double dt() const { return horizon_ / static_cast<double>(n_); }
  /// Relative jitter (times max diagonal) that made the factorization succeed.
  double jitter() const { return jitter_; }
  const CovKernel& kernel() const { return kernel_; }

  /// Path number `index` of the stream with master seed `seed`.
  SamplePath path(std::uint64_t seed, std::uint64_t index) const;

  /// Paths first..first+count-1, in index order.
  std::vector<SamplePath> paths(std::uint64_t seed, std::size_t count, std::uint64_t first = 0,
                                unsigned threads = 0) const;

 private:
  CovKernel kernel_;
  double horizon_;
  std::size_t n_;
  double jitter_ = 0.0;
  /// Lower triangle holds the factor; the upper part is stale.
  Eigen::MatrixXd L_;
};

/// Convenience: builds a PathSimulator and draws `paths` paths.
std::vector<SamplePath> simulate(const CovKernel& k, double horizon, std::size_t n,
                                 std::size_t paths, std::uint64_t seed);

}  // namespace mbm
