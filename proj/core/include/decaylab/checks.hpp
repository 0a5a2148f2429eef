#pragma once

#include <string>
#include <vector>

#include "decaylab/analysis.hpp"
#include "decaylab/asymptotics.hpp"
#include "decaylab/scenario.hpp"

namespace decaylab::checks {

/// Machine-verified claims about the computed decay laws, bundled for the
/// `verify` command and the acceptance suite. Every tolerance is pinned in
/// code and recorded in the returned report.

struct NamedReport {
  std::string name;
  FitReport report;
};

/// P_p(0) = 1 within 1e−8 and 0 ≤ P ≤ 1+1e−8 on every figure preset and a
/// seeded random fuzz, τ ∈ [0, 100].
FitReport normalization_bounds(const QuadConfig& cfg);

/// Adaptive integrator vs brute-force oracle to 1e−7 absolute on a (τ, ρ)
/// lattice with τ ≤ 100, ρ ∈ {0, 1, 2}.
FitReport oracle_equivalence(const QuadConfig& cfg);

/// (1 − P_p(τ))/τ² approaches the moment coefficient π̄₀ within 1% for
/// τ ≤ 0.01 on the fig-1/fig-3 presets.
FitReport short_time_law(const QuadConfig& cfg);

/// Fitted log-log slope within ±0.1 of −2(1+α_k) and prefactor within ±10%
/// of 𝔓 on the long-time windows.
FitReport long_time_slope(const QuadConfig& cfg);

/// Zero-crossing period on the fig-8 presets within 1% of 2π/|ϖ_p|.
FitReport oscillation_period(const QuadConfig& cfg);

/// |P_p(τ)/P₀(τ/χ_{p,k}) − 1| < 0.05 on the μ-equal distinct-exponent
/// presets, plus confirmation that the equal-exponent ratio fails to settle.
FitReport time_dilation(const QuadConfig& cfg);

/// ϖ₀/ϖ_p equals the μ-weighted mean of the χ factors to 1e−12 over random
/// parameter draws.
FitReport period_ratio_identity();

/// |amp_two|² equals the three-term decomposition to 1e−12 on all presets.
FitReport decomposition_identity(const QuadConfig& cfg);

/// Ultrarelativistic factor approximations within 2(μ_M/p)² at p = 100 and
/// divergence of the oscillation period (T_p/T₀ > 50).
FitReport limit_behavior();

/// All nine bundles in order.
std::vector<NamedReport> run_all(const QuadConfig& cfg);

/// Names accepted by the verify command.
std::vector<std::string> verify_names();

/// Named verify bundle: short-time, slope, period, scaling or identity.
FitReport run_named(const std::string& name, const QuadConfig& cfg);

}  // namespace decaylab::checks
