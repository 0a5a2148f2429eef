#pragma once

#include <complex>
#include <functional>

#include "decaylab/mdd.hpp"

namespace decaylab {

/// Integrator controls. Shared by the oscillatory engine and the density
/// integrals behind normalize()/moment().
struct QuadConfig {
  enum class Mode { adaptive, oracle };

  double rel_tol = 1e-10;           // target relative error
  double abs_tol = 1e-14;           // absolute floor
  int max_subdivisions = 1 << 16;   // adaptive segment budget
  double tail_threshold = 1e-16;    // Ω(ξ_max) < threshold · max Ω
  Mode mode = Mode::adaptive;       // oracle reroutes integrate()
  int oracle_panels = 1 << 16;      // panel count in oracle mode

  void validate() const;
};

/// ∫_{ξ₀}^{ξ_max} Ω(ξ) e^{−i η(ξ) τ} dξ with η = √(ρ²+ξ²). The phase is
/// strictly increasing in ξ (η' ≥ ξ₀/η(ξ₀) > 0), so there are no stationary
/// points and resolution-based adaptive quadrature suffices.
struct OscIntegrand {
  MddSpec mdd;
  double rho = 0.0;  // p/m_s ≥ 0
  double tau = 0.0;  // m_s t ≥ 0
};

/// Adaptive evaluation of the survival-amplitude integral to
/// max(rel_tol·|I|, abs_tol). Strategy: the endpoint region [ξ₀, ξ₀+1] is
/// mapped through ξ = ξ₀ + u^β (integer β) when α is non-integer, which
/// turns the algebraic endpoint factor into a smooth one; initial panels
/// are capped at a few oscillation periods wide so the Gauss–Kronrod error
/// estimate never aliases; bisection then refines globally.
///
/// Throws ToleranceNotMet (carrying the best estimate) when the subdivision
/// budget is exhausted, InvalidConfig/InvalidParameter on bad inputs.
std::complex<double> integrate(const OscIntegrand& integrand,
                               const QuadConfig& cfg);

struct OracleResult {
  std::complex<double> value;  // Richardson-extrapolated
  double error_estimate;       // |S(2n) − S(n)| / 15
};

/// Brute-force reference: composite Simpson on a fixed grid with n panels
/// and 2n panels, Richardson-extrapolated. Deliberately simple and fully
/// independent of integrate()'s code path; accuracy is reported, never
/// enforced.
OracleResult oracle_integrate(const OscIntegrand& integrand, int n_panels);

struct RealQuadResult {
  double value;
  double error;
};

/// ∫_{ξ₀}^{ξ_max} Ω(ξ) · factor(ξ) dξ for a smooth positive factor, with the
/// same endpoint regularization as integrate(). Backs normalize() and the
/// moment integrals.
RealQuadResult density_integral(const MddSpec& mdd,
                                const std::function<double(double)>& factor,
                                const QuadConfig& cfg);

}  // namespace decaylab
