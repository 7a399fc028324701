#include "mbm/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbm/errors.hpp"

namespace mbm {

namespace {

void require_finite(const std::vector<double>& params) {
  for (double p : params)
    if (!std::isfinite(p)) throw DomainError("Hurst parameters must be finite");
}

void require_count(const std::vector<double>& params, std::size_t n, std::string_view kind) {
  if (params.size() != n) {
    std::ostringstream os;
    os << "Hurst family '" << kind << "' expects " << n << " parameters, got " << params.size();
    throw DomainError(os.str());
  }
}

}  // namespace

std::string_view to_string(HurstKind kind) {
  switch (kind) {
    case HurstKind::constant: return "constant";
    case HurstKind::affine_clipped: return "affine-clipped";
    case HurstKind::sinusoidal: return "sinusoidal";
    case HurstKind::logistic: return "logistic";
    case HurstKind::custom: return "custom";
  }
  return "custom";
}

HurstKind hurst_kind_from_string(std::string_view name) {
  if (name == "constant" || name == "const") return HurstKind::constant;
  if (name == "affine-clipped" || name == "affine") return HurstKind::affine_clipped;
  if (name == "sinusoidal" || name == "sin") return HurstKind::sinusoidal;
  if (name == "logistic") return HurstKind::logistic;
  throw DomainError("unknown Hurst family '" + std::string(name) + "'");
}

HurstFunction::HurstFunction(HurstKind kind, std::vector<double> params, Evaluator eval,
                             double h1, double h2, double D, double kappa, bool widened)
    : kind_(kind),
      params_(std::move(params)),
      eval_(std::move(eval)),
      h1_(h1),
      h2_(h2),
      D_(D),
      kappa_(kappa),
      widened_(widened) {}

HurstFunction HurstFunction::custom(Evaluator eval, double h1, double h2, double holder_D,
                                    double holder_kappa) {
  if (!(h1 > 0.0 && h1 < h2 && h2 < 1.0))
    throw DomainError("custom Hurst function needs 0 < h1 < h2 < 1");
  if (!(holder_D >= 0.0) || !(holder_kappa > 0.0 && holder_kappa <= 1.0))
    throw DomainError("custom Hurst function needs D >= 0 and kappa in (0,1]");
  return HurstFunction(HurstKind::custom, {}, std::move(eval), h1, h2, holder_D, holder_kappa,
                       false);
}

double HurstFunction::h3() const { return std::min(h1_, kappa_); }
double HurstFunction::h4() const { return std::max(h2_, kappa_); }
double HurstFunction::h5() const { return h4() - h3(); }

HurstFunction make_hurst(HurstKind kind, const std::vector<double>& params) {
  require_finite(params);

  double lo = 0.0, hi = 0.0, D = 0.0;
  HurstFunction::Evaluator eval;

  switch (kind) {
    case HurstKind::constant: {
      require_count(params, 1, "constant");
      const double H = params[0];
      lo = hi = H;
      eval = [H](double) { return H; };
      break;
    }
    case HurstKind::affine_clipped: {
      require_count(params, 4, "affine-clipped");
      const double start = params[0], slope = params[1], floor = params[2], ceil = params[3];
      if (!(floor < ceil)) throw DomainError("affine-clipped needs lo < hi");
      const double h0 = std::clamp(start, floor, ceil);
      if (slope > 0.0) {
        lo = h0;
        hi = ceil;
      } else if (slope < 0.0) {
        lo = floor;
        hi = h0;
      } else {
        lo = hi = h0;
      }
      D = std::abs(slope);
      eval = [=](double t) { return std::clamp(start + slope * t, floor, ceil); };
      break;
    }
    case HurstKind::sinusoidal: {
      require_count(params, 3, "sinusoidal");
      const double base = params[0], amp = params[1], freq = params[2];
      if (amp == 0.0 || freq == 0.0) {
        lo = hi = base;
      } else {
        lo = base - std::abs(amp);
        hi = base + std::abs(amp);
      }
      D = std::abs(amp * freq);
      eval = [=](double t) { return base + amp * std::sin(freq * t); };
      break;
    }
    case HurstKind::logistic: {
      require_count(params, 4, "logistic");
      const double floor = params[0], ceil = params[1], rate = params[2], mid = params[3];
      if (!(floor < ceil)) throw DomainError("logistic needs lo < hi");
      auto f = [=](double t) { return floor + (ceil - floor) / (1.0 + std::exp(-rate * (t - mid))); };
      if (rate > 0.0) {
        lo = f(0.0);
        hi = ceil;
      } else if (rate < 0.0) {
        lo = floor;
        hi = f(0.0);
      } else {
        lo = hi = f(0.0);
      }
      D = (ceil - floor) * std::abs(rate) / 4.0;
      eval = f;
      break;
    }
    case HurstKind::custom:
      throw DomainError("custom Hurst functions are built with HurstFunction::custom");
  }

  bool widened = false;
  if (!(lo < hi)) {
    lo = hi - kConstantWidening;
    widened = true;
  }
  if (!(lo > 0.0 && hi < 1.0))
    throw DomainError("Hurst function range leaves (0,1)");

  return HurstFunction(kind, params, std::move(eval), lo, hi, D, 1.0, widened);
}

HurstFunction parse_hurst(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw DomainError("Hurst spec must look like kind:p1,p2,...");
  const HurstKind kind = hurst_kind_from_string(spec.substr(0, colon));
  std::vector<double> params;
  std::string rest(spec.substr(colon + 1));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      params.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("bad Hurst parameter '" + item + "'");
    }
  }
  return make_hurst(kind, params);
}

nlohmann::json to_json(const HurstFunction& h) {
  return nlohmann::json{{"kind", std::string(to_string(h.kind()))},
                        {"params", h.params()},
                        {"h1", h.h1()},
                        {"h2", h.h2()},
                        {"D", h.holder_D()},
                        {"kappa", h.holder_kappa()},
                        {"widened", h.widened()}};
}

HurstFunction hurst_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("params"))
    throw DomainError("Hurst descriptor needs {kind, params}");
  return make_hurst(hurst_kind_from_string(j.at("kind").get<std::string>()),
                    j.at("params").get<std::vector<double>>());
}

CertifyReport certify(const HurstFunction& h, double horizon, std::size_t grid) {
  if (!(horizon > 0.0) || grid < 2) throw DomainError("certify needs horizon > 0 and grid >= 2");

  std::vector<double> t(grid), H(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    t[i] = horizon * static_cast<double>(i) / static_cast<double>(grid - 1);
    H[i] = h(t[i]);
  }

  CertifyReport rep;
  const double eps = 1e-14;
  for (std::size_t i = 0; i < grid; ++i) {
    const double excess = std::max(h.h1() - H[i], H[i] - h.h2());
    const bool outside = !(H[i] > 0.0 && H[i] < 1.0) || excess > eps;
    if (outside && excess > rep.worst_range_excess) {
      rep.worst_range_excess = excess;
      rep.worst_range_t = t[i];
    }
    if (outside) rep.range_ok = false;
  }

  const double D = h.holder_D(), kappa = h.holder_kappa();
  for (std::size_t i = 1; i < grid; ++i) {
    for (std::size_t j = i + 1; j < grid; ++j) {
      const double dH = std::abs(H[j] - H[i]);
      const double allowed = D * std::pow(t[j] - t[i], kappa);
      const double ratio = allowed > 0.0 ? dH / allowed : (dH > eps ? HUGE_VAL : 0.0);
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_s = t[i];
        rep.worst_t = t[j];
      }
      if (dH > allowed * (1.0 + 1e-12) + eps) rep.holder_ok = false;
    }
  }
  rep.pass = rep.range_ok && rep.holder_ok;
  return rep;
}

nlohmann::json to_json(const CertifyReport& r) {
  return nlohmann::json{{"pass", r.pass},
                        {"range_ok", r.range_ok},
                        {"holder_ok", r.holder_ok},
                        {"worst_range_t", r.worst_range_t},
                        {"worst_range_excess", r.worst_range_excess},
                        {"worst_s", r.worst_s},
                        {"worst_t", r.worst_t},
                        {"worst_ratio", std::isfinite(r.worst_ratio) ? nlohmann::json(r.worst_ratio)
                                                                     : nlohmann::json("inf")}};
}

}  // namespace mbm
