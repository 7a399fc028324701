#include "mbm/fraccalc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "mbm/errors.hpp"

namespace mbm::frac {

GridFunction::GridFunction(double a, double dt, std::vector<double> values)
    : a_(a), dt_(dt), values_(std::move(values)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_) || !std::isfinite(a_))
    throw DomainError("grid step must be positive");
  if (values_.size() < 2) throw DomainError("grid function needs at least two points");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
}

GridFunction GridFunction::from_path(const SamplePath& p) {
  return GridFunction(0.0, p.dt(), std::vector<double>(p.values().begin(), p.values().end()));
}

GridFunction GridFunction::from_path(const SamplePath& p, std::size_t first, std::size_t last) {
  if (!(first < last && last <= p.n())) throw DomainError("bad path slice");
  auto v = p.values();
  return GridFunction(p.t(first), p.dt(), std::vector<double>(v.begin() + first, v.begin() + last + 1));
}

double GridFunction::operator()(double x) const {
  const double u = (x - a_) / dt_;
  if (u <= 0.0) return values_.front();
  if (u >= static_cast<double>(n())) return values_.back();
  const auto i = static_cast<std::size_t>(u);
  const double th = u - static_cast<double>(i);
  return values_[i] + th * (values_[i + 1] - values_[i]);
}

bool GridFunction::same_grid(const GridFunction& o) const {
  return n() == o.n() && a_ == o.a_ && dt_ == o.dt_;
}

void GridFunction::write_csv(const std::filesystem::path& file) const {
  std::FILE* f = std::fopen(file.c_str(), "w");
  if (!f) throw IoError("cannot write " + file.string());
  std::fputs("t,value\n", f);
  for (std::size_t i = 0; i < values_.size(); ++i)
    std::fprintf(f, "%.17g,%.17g\n", t(i), values_[i]);
  if (std::fclose(f) != 0) throw IoError("cannot write " + file.string());
}

GridFunction GridFunction::read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read " + file.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("t,value", 0) != 0) throw IoError(file.string() + ": missing 't,value' header");
  std::vector<double> ts, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError(file.string() + ": malformed row");
    try {
      ts.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError(file.string() + ": malformed number");
    }
  }
  if (vs.size() < 2) throw IoError(file.string() + ": fewer than two rows");
  const double dt = ts[1] - ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (std::abs(ts[i] - ts[0] - dt * static_cast<double>(i)) >
        1e-9 * std::max(1.0, std::abs(ts.back())))
      throw IoError(file.string() + ": grid is not uniform");
  return GridFunction(ts[0], dt, std::move(vs));
}

FracOrder::FracOrder(double a, Side s) : alpha(a), side(s) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fractional order must lie in (0,1)");
}

namespace {

std::vector<double> reversed(std::span<const double> v) { return {v.rbegin(), v.rend()}; }

// Left RL integral of the interpolant at the nodes (product trapezoid weights).
std::vector<double> rl_integral_left(std::span<const double> f, double dt, double alpha) {
  const std::size_t n = f.size() - 1;
  std::vector<double> pw(n + 2);
  for (std::size_t k = 0; k < pw.size(); ++k) pw[k] = std::pow(static_cast<double>(k), alpha + 1.0);
  const double scale = std::pow(dt, alpha) / std::tgamma(alpha + 2.0);
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double di = static_cast<double>(i);
    double s = (pw[i - 1] - (di - 1.0 - alpha) * std::pow(di, alpha)) * f[0];
    for (std::size_t j = 1; j < i; ++j) {
      const std::size_t k = i - j;
      s += (pw[k + 1] - 2.0 * pw[k] + pw[k - 1]) * f[j];
    }
    s += f[i];
    out[i] = scale * s;
  }
  return out;
}

// Left Marchaud derivative of the interpolant of phi at the nodes.
std::vector<double> marchaud_left(std::span<const double> phi, double dt, double alpha) {
  const std::size_t n = phi.size() - 1;
  std::vector<double> pm(n + 1), p1(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    pm[k] = k == 0 ? 0.0 : std::pow(kk, -alpha);
    p1[k] = std::pow(kk, 1.0 - alpha);
  }
  const double g = 1.0 / std::tgamma(1.0 - alpha);
  const double sc = std::pow(dt, -alpha);
  std::vector<double> out(n + 1);
  out[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double ps = phi[i];
    double integral = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t k1 = i - j, k2 = k1 - 1;
      const double d = phi[j + 1] - phi[j];
      double term = d * (p1[k1] - p1[k2]) / (1.0 - alpha);
      if (k2 > 0) {
        const double c = ps - phi[j + 1] - d * static_cast<double>(k2);
        term += c * (pm[k2] - pm[k1]) / alpha;
      }
      integral += term;
    }
    out[i] = g * sc * (ps * pm[i] + alpha * integral);
  }
  return out;
}

// Left Marchaud derivative at off-grid points a + (i + theta_q) dt, i = 0..n-1.
// Returns row-major n x Q values.
std::vector<double> marchaud_left_offgrid(std::span<const double> phi, double dt, double alpha,
                                          std::span<const double> thetas) {
  const std::size_t n = phi.size() - 1, Q = thetas.size();
  const double g = 1.0 / std::tgamma(1.0 - alpha);
  const double sc = std::pow(dt, -alpha);
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = phi[j + 1] - phi[j];
  std::vector<double> out(n * Q);
  std::vector<double> pm(n + 1), p1(n + 1);
  for (std::size_t q = 0; q < Q; ++q) {
    const double th = thetas[q];
    for (std::size_t k = 0; k <= n; ++k) {
      const double x = static_cast<double>(k) + th;
      pm[k] = std::pow(x, -alpha);
      p1[k] = std::pow(x, 1.0 - alpha);
    }
    const double p1_th = std::pow(th, 1.0 - alpha);
    for (std::size_t i = 0; i < n; ++i) {
      const double px = phi[i] + th * d[i];
      // partial segment [t_i, x]
      double integral = d[i] * p1_th / (1.0 - alpha);
      for (std::size_t j = 0; j < i; ++j) {
        const std::size_t k2 = i - j - 1;  // distance (k2 + theta) from x to t_{j+1}
        const double c = px - phi[j + 1] - d[j] * (static_cast<double>(k2) + th);
        integral += d[j] * (p1[k2 + 1] - p1[k2]) / (1.0 - alpha) +
                    c * (pm[k2] - pm[k2 + 1]) / alpha;
      }
      out[i * Q + q] = g * sc * (px * pm[i] + alpha * integral);
    }
  }
  return out;
}

constexpr std::size_t kQuadPoints = 6;

struct OuterRule {
  std::array<double, kQuadPoints> theta{};
  std::array<double, kQuadPoints> weight{};
};

// Gauss-Legendre on (0,1) after x = psi(u) with the quintic smoothstep, which
// flattens the cusps the interpolant's derivatives have at the nodes.
const OuterRule& outer_rule() {
  static const OuterRule rule = [] {
    using GL = boost::math::quadrature::gauss<double, kQuadPoints>;
    const auto& abs = GL::abscissa();
    const auto& wts = GL::weights();
    std::array<double, kQuadPoints> x{}, w{};
    std::size_t m = 0;
    for (std::size_t k = 0; k < abs.size(); ++k) {
      if (abs[k] == 0.0) {
        x[m] = 0.0;
        w[m++] = wts[k];
        continue;
      }
      x[m] = -abs[k];
      w[m++] = wts[k];
      x[m] = abs[k];
      w[m++] = wts[k];
    }
    std::array<std::size_t, kQuadPoints> idx{};
    for (std::size_t k = 0; k < kQuadPoints; ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](auto p, auto q) { return x[p] < x[q]; });
    OuterRule r;
    for (std::size_t k = 0; k < kQuadPoints; ++k) {
      const double u = 0.5 * (x[idx[k]] + 1.0);
      const double u2 = u * u, u3 = u2 * u;
      r.theta[k] = u3 * (10.0 - 15.0 * u + 6.0 * u2);
      r.weight[k] = 0.5 * w[idx[k]] * 30.0 * u2 * (1.0 - u) * (1.0 - u);
    }
    return r;
  }();
  return rule;
}

}  // namespace

GridFunction rl_integral(const GridFunction& f, const FracOrder& o) {
  if (o.side == Side::left)
    return GridFunction(f.a(), f.dt(), rl_integral_left(f.values(), f.dt(), o.alpha));
  auto r = rl_integral_left(reversed(f.values()), f.dt(), o.alpha);
  std::reverse(r.begin(), r.end());
  return GridFunction(f.a(), f.dt(), std::move(r));
}

GridFunction rl_derivative(const GridFunction& f, const FracOrder& o, bool centered) {
  std::vector<double> phi(f.values().begin(), f.values().end());
  if (o.side == Side::left) {
    if (centered) {
      const double fa = phi.front();
      for (double& v : phi) v -= fa;
    }
    auto out = marchaud_left(phi, f.dt(), o.alpha);
    out.front() = 0.0;
    return GridFunction(f.a(), f.dt(), std::move(out));
  }
  if (centered) {
    const double fb = phi.back();
    for (double& v : phi) v = fb - v;
  }
  std::reverse(phi.begin(), phi.end());
  auto out = marchaud_left(phi, f.dt(), o.alpha);
  std::reverse(out.begin(), out.end());
  out.back() = 0.0;
  return GridFunction(f.a(), f.dt(), std::move(out));
}

double default_alpha(double h3) {
  const double alpha = std::max(0.5, 1.0 - h3 + 0.05);
  if (!(alpha < h3 - 0.05))
    throw DomainError("no admissible fractional order: need h3 > 0.55 (use rs_sum)");
  return alpha;
}

PathwiseResult pathwise_integral_detail(const GridFunction& z, const GridFunction& y,
                                        double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (!z.same_grid(y)) throw DomainError("integrand and integrator must share a grid");
  const std::size_t n = z.n();
  const double dt = z.dt();
  const OuterRule& rule = outer_rule();

  std::vector<double> phi(z.values().begin(), z.values().end());
  const double za = phi.front();
  for (double& v : phi) v -= za;
  std::vector<double> psi(y.values().rbegin(), y.values().rend());
  const double yb = y.values().back();
  for (double& v : psi) v = yb - v;

  const auto L = marchaud_left_offgrid(phi, dt, alpha, rule.theta);
  std::array<double, kQuadPoints> mirrored{};
  for (std::size_t q = 0; q < kQuadPoints; ++q) mirrored[q] = 1.0 - rule.theta[kQuadPoints - 1 - q];
  const auto Rrev = marchaud_left_offgrid(psi, dt, 1.0 - alpha, mirrored);

  PathwiseResult res;
  res.alpha = alpha;
  double acc = 0.0, abs_left = 0.0, sup_r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ir = n - 1 - i;
    double cell = 0.0, cell_abs = 0.0;
    for (std::size_t q = 0; q < kQuadPoints; ++q) {
      const double l = L[i * kQuadPoints + q];
      const double r = Rrev[ir * kQuadPoints + (kQuadPoints - 1 - q)];
      cell += rule.weight[q] * l * r;
      cell_abs += rule.weight[q] * std::abs(l);
      sup_r = std::max(sup_r, std::abs(r));
    }
    acc += cell;
    abs_left += cell_abs;
  }
  res.fractional_part = acc * dt;
  res.boundary_part = za * (yb - y.values().front());
  res.value = res.fractional_part + res.boundary_part;
  res.sup_right = sup_r;
  res.int_abs_left = abs_left * dt + std::abs(za) * std::pow(z.b() - z.a(), 1.0 - alpha) /
                                         std::tgamma(2.0 - alpha);
  res.estimate = res.sup_right * res.int_abs_left;
  return res;
}

double pathwise_integral(const GridFunction& z, const GridFunction& y, double alpha) {
  return pathwise_integral_detail(z, y, alpha).value;
}

double pathwise_integral(const GridFunction& z, const GridFunction& y, const HurstFunction& h) {
  return pathwise_integral(z, y, default_alpha(h.h3()));
}

double rs_sum(const GridFunction& z, const GridFunction& y) {
  if (!z.same_grid(y)) throw DomainError("integrand and integrator must share a grid");
  double s = 0.0;
  for (std::size_t i = 0; i < z.n(); ++i) s += z[i] * (y[i + 1] - y[i]);
  return s;
}

double pathwise_integral_blocks(const GridFunction& z, const GridFunction& y, double alpha,
                                std::size_t block_steps) {
  if (block_steps < 1) throw DomainError("block length must be positive");
  if (!z.same_grid(y)) throw DomainError("integrand and integrator must share a grid");
  double total = 0.0;
  for (std::size_t first = 0; first < z.n(); first += block_steps) {
    const std::size_t last = std::min(first + block_steps, z.n());
    auto zv = z.values(), yv = y.values();
    GridFunction zb(z.t(first), z.dt(), std::vector<double>(zv.begin() + first, zv.begin() + last + 1));
    GridFunction yb(y.t(first), y.dt(), std::vector<double>(yv.begin() + first, yv.begin() + last + 1));
    total += pathwise_integral(zb, yb, alpha);
  }
  return total;
}

double holder_exponent_estimate(const GridFunction& f) {
  std::vector<double> lx, ly;
  for (std::size_t k = 1; k <= f.n() / 4; k *= 2) {
    double m = 0.0;
    for (std::size_t i = 0; i + k <= f.n(); ++i) m = std::max(m, std::abs(f[i + k] - f[i]));
    if (m <= 0.0) continue;
    lx.push_back(std::log(static_cast<double>(k) * f.dt()));
    ly.push_back(std::log(m));
  }
  if (lx.size() < 2) return 1.0;
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mbm::frac
