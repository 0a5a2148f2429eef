#include "decaylab/mdd.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "decaylab/quadrature.hpp"

namespace decaylab {

namespace {

// Fritsch-Carlson monotone cubic through (x, y) knots. Shared storage so
// copies of the enclosing std::function stay cheap.
struct MonotoneCubic {
  std::vector<double> x, y, d;

  explicit MonotoneCubic(const std::vector<std::pair<double, double>>& knots) {
    const size_t n = knots.size();
    x.resize(n);
    y.resize(n);
    d.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      x[i] = knots[i].first;
      y[i] = knots[i].second;
    }
    std::vector<double> h(n - 1), s(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      h[i] = x[i + 1] - x[i];
      s[i] = (y[i + 1] - y[i]) / h[i];
    }
    d[0] = s[0];
    d[n - 1] = s[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
      if (s[i - 1] * s[i] <= 0.0) {
        d[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
      }
    }
  }

  double operator()(double xq) const {
    if (xq < x.front() || xq > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    size_t i = (it == x.begin()) ? 0 : (it - x.begin() - 1);
    i = std::min(i, x.size() - 2);
    const double h = x[i + 1] - x[i];
    const double t = (xq - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y[i] * (2 * t3 - 3 * t2 + 1) + d[i] * h * (t3 - 2 * t2 + t) +
           y[i + 1] * (-2 * t3 + 3 * t2) + d[i + 1] * h * (t3 - t2);
  }
};

QuadConfig tight_config() {
  QuadConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-15;
  return cfg;
}

double sampled_max_omega(const MddSpec& spec) {
  double peak = 0.0;
  const int n = 400;
  for (int i = 0; i <= n; ++i) {
    const double xi = spec.xi0 + (spec.xi_max - spec.xi0) * i / n;
    peak = std::max(peak, spec.omega(xi));
  }
  return peak;
}

struct CertifiedIntegral {
  double value;
  double xi_max;  // cutoff at which the pointwise tail policy held
};

// Integrates Ω·factor, growing the tail cutoff until two consecutive
// cutoffs agree within tolerance and the pointwise tail policy holds.
CertifiedIntegral certified_density_integral(
    MddSpec spec, const std::function<double(double)>& factor,
    const QuadConfig& cfg, const char* what) {
  constexpr double kXiMaxCap = 128.0;
  double value = density_integral(spec, factor, cfg).value;
  const double peak = sampled_max_omega(spec);
  for (;;) {
    const bool tail_ok =
        spec.omega(spec.xi_max) <= cfg.tail_threshold * std::max(peak, 1e-300);
    MddSpec wider = spec;
    wider.xi_max = std::min(spec.xi_max + 4.0, kXiMaxCap);
    if (wider.xi_max <= spec.xi_max) {
      if (!tail_ok)
        throw DivergentIntegral(std::string(what) +
                                ": tail truncation bound cannot be met");
      return {value, spec.xi_max};
    }
    const double wider_value = density_integral(wider, factor, cfg).value;
    const double drift = std::abs(wider_value - value);
    if (tail_ok && drift <= 10.0 * std::max(cfg.abs_tol,
                                            cfg.rel_tol * std::abs(wider_value)))
      return {wider_value, spec.xi_max};
    spec = wider;
    value = wider_value;
  }
}

}  // namespace

double MddSpec::omega(double xi) const {
  if (xi < xi0) return 0.0;
  return weight * std::pow(xi - xi0, alpha) * shape(xi);
}

void MddSpec::validate() const {
  if (!(alpha >= 0.0)) throw InvalidParameter("endpoint exponent must be >= 0");
  if (!(xi0 > 0.0))
    throw InvalidParameter("spectrum lower bound must be positive");
  if (!(scale_mass > 0.0)) throw InvalidParameter("scale mass must be positive");
  if (!shape) throw InvalidParameter("missing regular-part evaluator");
  if (!(shape_at_xi0 > 0.0))
    throw InvalidParameter("regular part must be positive at the lower bound");
  if (!(weight > 0.0)) throw InvalidParameter("weight must be positive");
  if (!(xi_max > xi0)) throw InvalidParameter("tail cutoff must exceed xi0");
}

MddSpec make_toy_mdd(const ToyMddParams& params) {
  if (!(params.alpha >= 0.0))
    throw InvalidParameter("toy MDD needs alpha >= 0");
  if (!(params.xi0 > 0.0)) throw InvalidParameter("toy MDD needs xi0 > 0");

  const double alpha = params.alpha;
  const double xi0 = params.xi0;

  MddSpec spec;
  spec.alpha = alpha;
  spec.xi0 = xi0;
  spec.shape = [alpha, xi0](double xi) {
    return xi * std::pow(xi + xi0, alpha) * std::exp(-xi * xi);
  };
  spec.shape_at_xi0 = xi0 * std::pow(2.0 * xi0, alpha) * std::exp(-xi0 * xi0);
  spec.weight = 2.0 * std::exp(xi0 * xi0) / std::tgamma(1.0 + alpha);
  spec.xi_max = std::max(8.0, xi0 + 8.0);
  return spec;
}

MddSpec make_tabulated_mdd(double alpha,
                           const std::vector<std::pair<double, double>>& knots) {
  if (!(alpha >= 0.0)) throw InvalidParameter("tabulated MDD needs alpha >= 0");
  if (knots.size() < 4)
    throw InvalidParameter("tabulated MDD needs at least 4 knots");
  if (!(knots.front().first > 0.0))
    throw InvalidParameter("tabulated MDD needs xi0 > 0");
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i].first < knots[i + 1].first))
      throw InvalidParameter("tabulated knots must be strictly ascending");
  if (!(knots.front().second > 0.0))
    throw InvalidParameter("regular part must be positive at the lower bound");
  for (const auto& [xi, v] : knots)
    if (v < 0.0)
      throw InvalidParameter("regular part values must be nonnegative");

  auto interp = std::make_shared<MonotoneCubic>(knots);
  MddSpec spec;
  spec.alpha = alpha;
  spec.xi0 = knots.front().first;
  spec.shape = [interp](double xi) { return (*interp)(xi); };
  spec.shape_at_xi0 = knots.front().second;
  spec.weight = 1.0;
  spec.xi_max = knots.back().first;
  return spec;
}

MddSpec normalize(const MddSpec& spec, const QuadConfig& quad) {
  spec.validate();
  quad.validate();
  const CertifiedIntegral mass =
      certified_density_integral(spec, [](double) { return 1.0; }, quad,
                                 "normalize");
  if (!std::isfinite(mass.value) || mass.value <= 1e3 * quad.abs_tol)
    throw DivergentIntegral("normalize: density has vanishing or non-finite mass");
  MddSpec out = spec;
  out.weight = spec.weight / mass.value;
  out.xi_max = mass.xi_max;  // keep any grown cutoff
  return out;
}

double endpoint_constant(const MddSpec& spec) {
  spec.validate();
  return std::tgamma(1.0 + spec.alpha) * spec.omega0_at_xi0();
}

double moment(const MddSpec& spec, double p, double k) {
  spec.validate();
  if (!(p >= 0.0)) throw InvalidParameter("moment needs p >= 0");
  if (k != 0.5 && k != 1.0 && k != 1.5)
    throw InvalidParameter("moment exponent must be 1/2, 1 or 3/2");

  const double rho = p / spec.scale_mass;
  auto factor = [rho, k](double xi) {
    return std::pow(rho * rho + xi * xi, k);
  };
  try {
    return certified_density_integral(spec, factor, tight_config(), "moment")
        .value;
  } catch (const DivergentIntegral& e) {
    throw NonconvergentMoment(e.what());
  } catch (const ToleranceNotMet& e) {
    throw NonconvergentMoment(e.what());
  }
}

}  // namespace decaylab
