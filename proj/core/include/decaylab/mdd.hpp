#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "decaylab/errors.hpp"

namespace decaylab {

struct QuadConfig;

/// One mass state's distribution over the dimensionless spectrum variable
/// ξ = m/m_s, supported on [ξ₀, ∞) with ξ₀ > 0:
///
///     Ω(ξ) = weight · (ξ − ξ₀)^α · shape(ξ),
///
/// where shape is smooth and strictly positive at ξ₀. All quantities are
/// stored in m_s units; conversion to physical units happens only at I/O.
///
/// The endpoint value of the regular part is declared, not extrapolated:
/// the long-time laws depend only on Ω₀(ξ₀) = weight · shape(ξ₀), and a
/// numerical limit against the algebraic factor would be fragile.
///
/// Caller obligation for user-supplied shapes: the shape and its first few
/// derivatives must be integrable and decay fast enough that the moment
/// integrals up to (ρ²+ξ²)^{3/2} converge. This is not verified at runtime.
struct MddSpec {
  double alpha = 0.0;       // endpoint exponent α ≥ 0
  double xi0 = 1.0;         // spectrum lower bound ξ₀ = μ₀/m_s > 0
  double scale_mass = 1.0;  // m_s, unit-setting mass

  std::function<double(double)> shape;  // unweighted regular part, ξ ≥ ξ₀
  double shape_at_xi0 = 0.0;            // declared shape(ξ₀) > 0
  double weight = 1.0;                  // normalization factor
  double xi_max = 9.0;                  // tail truncation point

  /// Ω(ξ); zero below the lower bound.
  double omega(double xi) const;
  /// Ω₀(ξ) = weight · shape(ξ), the weighted regular part.
  double omega0(double xi) const { return weight * shape(xi); }
  double omega0_at_xi0() const { return weight * shape_at_xi0; }

  void validate() const;
};

/// Parameters of the built-in toy family
///     Ω(ξ) = w · ξ (ξ² − ξ₀²)^α e^{−ξ²}.
struct ToyMddParams {
  double alpha = 0.0;
  double xi0 = 1.0;
};

/// Builds a normalized toy-family spec. The closed-form weight is
/// w = 2 e^{ξ₀²} / Γ(1+α)  (substitute u = ξ² − ξ₀²).
MddSpec make_toy_mdd(const ToyMddParams& params);

/// Builds a spec from tabulated (ξ, Ω₀) knots with monotone-cubic
/// interpolation of the regular part. The support is [knots.front().first,
/// knots.back().first]; the result still needs normalize().
MddSpec make_tabulated_mdd(double alpha,
                           const std::vector<std::pair<double, double>>& knots);

/// Rescales the weight so that ∫Ω = 1 within the quadrature tolerance,
/// growing the tail cutoff when the truncation bound is not met.
MddSpec normalize(const MddSpec& spec, const QuadConfig& quad);

/// c₀ = Γ(1+α) · Ω₀(ξ₀). For the toy family this equals 2ξ₀(2ξ₀)^α.
double endpoint_constant(const MddSpec& spec);

/// ∫ ω(m) (p² + m²)^k dm for k ∈ {1/2, 1, 3/2}, in units m_s^{2k}.
/// The short-time coefficients are a₀ = moment(·,·,1/2), a₁ = ½ moment(·,·,1),
/// a₂ = (1/6) moment(·,·,3/2).
double moment(const MddSpec& spec, double p, double k);

}  // namespace decaylab
