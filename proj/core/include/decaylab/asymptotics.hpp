#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "decaylab/amplitude.hpp"

namespace decaylab {

enum class Regime {
  PowerLawDistinctAlpha,        // α₁ ≠ α₂: dominant inverse power law
  PowerLawEqualAlphaEqualBound, // α₁ = α₂, μ₀,₁ = μ₀,₂: pure power law
  DampedOscillation,            // α₁ = α₂, μ₀,₁ ≠ μ₀,₂
};

std::string to_string(Regime regime);

/// All closed-form coefficients of the long-time laws for one state at one
/// momentum. Index convention: mass 1 carries the smaller endpoint exponent
/// (inputs are relabeled if needed; `swapped` records the permutation so
/// user-facing indices can be restored in reports).
///
/// The predictor keeps the full three-term form — both power-law terms plus
/// the cross term — at every parameter point; the regime tag identifies
/// which term dominates. All formulas hold for τ ≫ 1 in m_s = 1 units.
struct AsymptoticModel {
  Regime regime = Regime::PowerLawDistinctAlpha;
  bool swapped = false;

  std::array<double, 2> alpha{};   // after relabeling, alpha[0] ≤ alpha[1]
  std::array<double, 2> mu0{};     // spectrum lower bounds
  std::array<double, 2> weights{}; // |l_j|²
  std::array<double, 2> c0{};      // Γ(1+αⱼ)·Ω₀,ⱼ(ξ₀,ⱼ)
  std::array<double, 2> chi{};     // √(1+p²/μ₀,ⱼ²)
  double p = 0.0;

  double pi_bar0 = 0.0;                     // short-time coefficient
  double a_bar0 = 0.0, a_bar1 = 0.0;        // mixed-density moments
  std::array<std::array<double, 3>, 2> a{}; // per-mass (a₀, a₁, a₂)

  std::array<double, 2> pl_term{};  // wⱼ²c₀ⱼ²χⱼ^{2(1+αⱼ)}
  double P_pl = 0.0;       // regime-appropriate power-law prefactor
  double P_osc = 0.0;      // w₁w₂c₀₁c₀₂χ₁^{1+α₁}χ₂^{1+α₂}
  double varpi = 0.0;      // signed μ₀,₂χ₂ − μ₀,₁χ₁; frequency is |varpi|
  double period = 0.0;     // 2π/|varpi|, +inf when varpi = 0
  double pl_exponent = 0.0;   // 2(1+α_k), α_k the smaller exponent
  double osc_exponent = 0.0;  // 2+α₁+α₂
  double phase_offset = 0.0;  // (π/2)(α₂−α₁)

  /// Full three-term long-time predictor at τ > 0.
  double predict(double tau) const;
  /// Power-law part only (both mass terms).
  double predict_power_law(double tau) const;
  /// Cross term only.
  double predict_cross(double tau) const;
  /// Max/min of the predictor's oscillation envelope at τ.
  double envelope_max(double tau) const;
  double envelope_min(double tau) const;

  /// Flat key-value report block.
  std::string report() const;
};

/// √(1 + p²/μ₀²), the dilation factor of the long-time decay; numerically
/// the Lorentz factor of a mass μ₀ carrying momentum p.
double chi_factor(double mu0, double p);

/// Signed oscillation frequency μ₀,₂χ_{p,2} − μ₀,₁χ_{p,1}, evaluated in a
/// cancellation-free form so it stays accurate for nearly equal bounds.
double varpi_value(double mu1, double mu2, double p);

struct ShortTimeCoefficients {
  double pi_bar0;                           // 2ā₁ − ā₀²
  double a_bar0, a_bar1;
  std::array<std::array<double, 3>, 2> a;   // per mass (a₀, a₁, a₂)
};

/// Moments of the mixed density ω₁,₂ = w₁ω₁ + w₂ω₂ at momentum p; drives
/// the short-time law P_p(τ) ≈ 1 − π̄₀τ².
ShortTimeCoefficients short_time(const TwoMassState& state, double p);

/// Fills every coefficient of the long-time laws.
AsymptoticModel long_time(const TwoMassState& state, double p);

struct UltraRelApprox {
  std::array<double, 2> chi{};  // χⱼ ≈ p/μ₀,ⱼ
  std::array<double, 2> pl_term{};
  double P_pl = 0.0;
  double P_osc = 0.0;
  double varpi = 0.0;
};

struct LimitModels {
  AsymptoticModel nonrelativistic;              // p = 0 model
  std::optional<UltraRelApprox> ultrarelativistic;  // present when p > 0
};

/// Nonrelativistic (rest-frame) model plus, for p > 0, the factor
/// approximations valid when p far exceeds both spectrum lower bounds.
LimitModels limits(const TwoMassState& state, double p);

struct DilationMap {
  std::optional<double> chi_pk;     // scaling factor, distinct exponents only
  std::optional<double> chi_ratio;  // χ_{p,k}/χ_{p',k}
  double period_ratio_rest;         // T_p/T₀, μ-weighted mean of the χⱼ
  double period_ratio_prime;        // T_p/T_{p'}
};

/// Frame-change scaling data between momenta p and p′.
DilationMap dilation_map(const AsymptoticModel& model, double p,
                         double p_prime);

/// χ_{p,k} for the mass with the smaller endpoint exponent. Throws
/// RegimeMismatch in the equal-exponent regimes, where the scaling relation
/// is lost.
double chi_scaling_factor(const AsymptoticModel& model, double p);

/// Long-time complex amplitude c₀ e^{−i((π/2)(1+α) + √(μ₀²+p²)τ)}(χ_p/τ)^{1+α}
/// of a single moving mass state.
std::complex<double> long_time_amplitude(const MddSpec& mdd, double p,
                                         double tau);

}  // namespace decaylab
