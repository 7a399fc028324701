#pragma once

#include <cstddef>
#include <functional>

namespace mbm {

struct SeriesSum {
  double value = 0.0;
  std::size_t terms = 0;
  /// Upper estimate of the neglected tail.
  double tail = 0.0;
};

inline constexpr double kSeriesTailTolerance = 1e-12;

/// Sums a series of nonnegative terms term(0) + term(1) + ...
///
/// Stops once the ratio-based tail estimate term_k * rho / (1 - rho), with
/// rho the largest of the last few consecutive ratios, falls below `tol`
/// (or below the resolution of the running sum). Terms must be eventually
/// of geometric decay with nonincreasing ratios; throws NumericalError when
/// no such tail appears within `max_terms`.
SeriesSum sum_series(const std::function<double(std::size_t)>& term,
                     double tol = kSeriesTailTolerance, std::size_t max_terms = 200000);

}  // namespace mbm
