#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "mbm/hurst.hpp"
#include "mbm/sample_path.hpp"

namespace mbm::frac {

/// Samples on the uniform grid a + i * dt, i = 0..n, read as a
/// piecewise-linear function.
class GridFunction {
 public:
  GridFunction(double a, double dt, std::vector<double> values);
  static GridFunction from_path(const SamplePath& p);
  /// Steps first..last of a path, re-based so that a = t(first).
  static GridFunction from_path(const SamplePath& p, std::size_t first, std::size_t last);

  double a() const { return a_; }
  double b() const { return a_ + dt_ * static_cast<double>(n()); }
  double dt() const { return dt_; }
  std::size_t n() const { return values_.size() - 1; }
  double t(std::size_t i) const { return a_ + dt_ * static_cast<double>(i); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  /// Piecewise-linear interpolant.
  double operator()(double x) const;

  bool same_grid(const GridFunction& o) const;

  void write_csv(const std::filesystem::path& file) const;
  static GridFunction read_csv(const std::filesystem::path& file);

 private:
  double a_;
  double dt_;
  std::vector<double> values_;
};

enum class Side { left, right };

struct FracOrder {
  double alpha;
  Side side = Side::left;

  FracOrder(double alpha, Side side = Side::left);
};

/// Riemann-Liouville integral I^alpha_{a+} f or I^alpha_{b-} f at the grid nodes,
/// by exact product integration of the interpolant.
GridFunction rl_integral(const GridFunction& f, const FracOrder& o);

/// Marchaud form of D^alpha_{a+} or D^alpha_{b-} at the grid nodes. With
/// centered, the left derivative acts on f - f(a) and the right one on
/// f(b) - f. The singular endpoint (a for left, b for right) is stored as 0,
/// which is the limit only when the acted-on function vanishes there.
GridFunction rl_derivative(const GridFunction& f, const FracOrder& o, bool centered);

/// max(0.5, 1 - h3 + 0.05); throws DomainError unless it is below h3 - 0.05.
double default_alpha(double h3);

struct PathwiseResult {
  double value = 0.0;
  double alpha = 0.0;
  /// int_a^b D^alpha_{a+}[z - z(a)] D^{1-alpha}_{b-}[y(b) - y] dx
  double fractional_part = 0.0;
  /// z(a) (y(b) - y(a))
  double boundary_part = 0.0;
  /// sup |D^{1-alpha}_{b-}[y(b) - y]| over the quadrature nodes
  double sup_right = 0.0;
  /// int |D^alpha_{a+} z| dx (uncentered), bounded by the centered integral plus
  /// |z(a)| (b-a)^{1-alpha} / Gamma(2-alpha)
  double int_abs_left = 0.0;
  /// sup_right * int_abs_left: right side of the a priori estimate
  double estimate = 0.0;
};

/// Generalized Lebesgue-Stieltjes integral int_a^b z dy of order alpha.
PathwiseResult pathwise_integral_detail(const GridFunction& z, const GridFunction& y,
                                        double alpha);
double pathwise_integral(const GridFunction& z, const GridFunction& y, double alpha);
/// Uses default_alpha(h.h3()).
double pathwise_integral(const GridFunction& z, const GridFunction& y, const HurstFunction& h);

/// Left Riemann-Stieltjes sum sum_i z(t_i) (y(t_{i+1}) - y(t_i)).
double rs_sum(const GridFunction& z, const GridFunction& y);

/// Sum of pathwise integrals over consecutive blocks of block_steps steps
/// (last block may be shorter, but at least 2 steps).
double pathwise_integral_blocks(const GridFunction& z, const GridFunction& y, double alpha,
                                std::size_t block_steps);

/// Crude Hölder exponent estimate: least-squares slope of log max|f(t+k dt) - f(t)|
/// against log k over dyadic k.
double holder_exponent_estimate(const GridFunction& f);

}  // namespace mbm::frac
