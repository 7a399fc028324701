#include "mbm/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "mbm/errors.hpp"

namespace mbm {

SeriesSum sum_series(const std::function<double(std::size_t)>& term, double tol,
                     std::size_t max_terms) {
  constexpr std::size_t kWindow = 4;
  constexpr std::size_t kMinTerms = 8;

  SeriesSum out;
  double sum = 0.0, comp = 0.0;  // Kahan
  std::array<double, kWindow> ratios{};
  std::size_t zero_run = 0;
  double prev = 0.0;

  for (std::size_t k = 0; k < max_terms; ++k) {
    const double x = term(k);
    if (!std::isfinite(x) || x < 0.0)
      throw NumericalError("series term is negative or not finite");

    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;

    ratios[k % kWindow] = (prev > 0.0) ? x / prev : (x == 0.0 ? 0.0 : HUGE_VAL);
    zero_run = (x == 0.0) ? zero_run + 1 : 0;
    prev = x;

    if (k + 1 < kMinTerms) continue;
    if (zero_run >= kMinTerms) {
      out = {sum, k + 1, 0.0};
      return out;
    }
    const double rho = *std::max_element(ratios.begin(), ratios.end());
    if (rho < 1.0) {
      const double tail = x * rho / (1.0 - rho);
      if (tail < tol || tail < std::abs(sum) * std::numeric_limits<double>::epsilon()) {
        out = {sum, k + 1, tail};
        return out;
      }
    }
  }
  throw NumericalError("series did not converge (tail estimate above tolerance)");
}

}  // namespace mbm
