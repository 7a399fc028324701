#include "mbm/covariance.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "mbm/errors.hpp"

namespace mbm {

double c_of_h(double H) {
  if (!(H > 0.0 && H < 1.0)) throw DomainError("C(H) needs H in (0,1)");
  return std::sqrt(std::numbers::pi / (H * std::tgamma(2.0 * H) * std::sin(std::numbers::pi * H)));
}

double d_of_h(double x, double y) {
  const double a = x + y;
  if (!(a > 0.0 && a < 2.0)) throw DomainError("D(x,y) needs 0 < x+y < 2");
  return std::numbers::pi / (std::tgamma(a + 1.0) * std::sin(std::numbers::pi * a / 2.0));
}

double CovKernel::operator()(double s, double u) const {
  if (s < 0.0 || u < 0.0) throw DomainError("covariance is defined for nonnegative times");
  if (s == 0.0 || u == 0.0) return 0.0;
  const double hs = h_(s), hu = h_(u);
  const double a = hs + hu;
  return d_of_h(hs, hu) * (std::pow(s, a) + std::pow(u, a) - std::pow(std::abs(s - u), a));
}

double CovKernel::variance(double t) const { return (*this)(t, t); }

double CovKernel::increment_variance(double s, double t) const {
  return std::max(0.0, variance(t) - 2.0 * (*this)(s, t) + variance(s));
}

Eigen::MatrixXd CovKernel::gram(std::span<const double> times) const {
  const auto n = static_cast<Eigen::Index>(times.size());
  std::vector<double> H(times.size()), logt(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= 0.0) throw DomainError("gram needs strictly positive times");
    H[i] = h_(times[i]);
    logt[i] = std::log(times[i]);
  }
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double a = H[i] + H[j];
      const double gap = std::abs(times[i] - times[j]);
      const double v = d_of_h(H[i], H[j]) * (std::exp(a * logt[i]) + std::exp(a * logt[j]) -
                                             (gap > 0.0 ? std::pow(gap, a) : 0.0));
      G(i, j) = v;
      G(j, i) = v;
    }
  }
  return G;
}

}  // namespace mbm
