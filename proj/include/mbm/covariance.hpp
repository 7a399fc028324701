#pragma once

#include <span>

#include <Eigen/Dense>

#include "mbm/hurst.hpp"

namespace mbm {

/// C(H) = (pi / (H Gamma(2H) sin(pi H)))^{1/2}, so that E Y(t)^2 = C(H_t)^2 t^{2 H_t}.
double c_of_h(double H);

/// D(x, y) = pi / (Gamma(x + y + 1) sin(pi (x + y) / 2)).
double d_of_h(double x, double y);

/// Exact covariance E[Y_s Y_u] of mBm with Hurst function h:
/// D(H_s,H_u) (s^{H_s+H_u} + u^{H_s+H_u} - |s-u|^{H_s+H_u}).
class CovKernel {
 public:
  explicit CovKernel(HurstFunction h) : h_(std::move(h)) {}

  const HurstFunction& hurst() const { return h_; }

  double operator()(double s, double u) const;
  double variance(double t) const;
  /// E (Y_t - Y_s)^2 computed from the kernel.
  double increment_variance(double s, double t) const;

  /// Gram matrix on the given times.
  Eigen::MatrixXd gram(std::span<const double> times) const;

 private:
  HurstFunction h_;
};

inline CovKernel kernel(const HurstFunction& h) { return CovKernel(h); }

}  // namespace mbm
