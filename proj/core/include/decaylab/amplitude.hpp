#pragma once

#include <complex>
#include <string>
#include <vector>

#include "decaylab/quadrature.hpp"

namespace decaylab {

/// Normalized superposition of two unstable mass states. Time-evolution
/// cross terms between the two states are taken as exactly zero, so only
/// the weights |l₁|², |l₂|² are observable; complex phases of l₁, l₂ never
/// enter any formula and are not represented.
struct TwoMassState {
  MddSpec mdd1, mdd2;
  double w1 = 0.5, w2 = 0.5;  // |l₁|², |l₂|²

  void validate() const;
  double mu_min() const { return std::min(mdd1.xi0, mdd2.xi0); }
  double mu_max() const { return std::max(mdd1.xi0, mdd2.xi0); }
};

/// Batch evaluation over a time grid. prob[i] = |amp[i]|².
struct SeriesResult {
  std::vector<double> tau;
  std::vector<std::complex<double>> amp;
  std::vector<double> prob;
  std::string provenance;  // scenario hash + quadrature config
};

/// Survival amplitude A_p(τ) of a single mass state, ρ = p/m_s.
std::complex<double> amp_single(const MddSpec& mdd, double p, double tau,
                                const QuadConfig& cfg);

/// Two-mass survival amplitude w₁·A_{p,1}(τ) + w₂·A_{p,2}(τ).
std::complex<double> amp_two(const TwoMassState& state, double p, double tau,
                             const QuadConfig& cfg);

/// Survival probability from the explicit three-term decomposition
///     Σⱼ wⱼ²|A_{p,j}|² + 2w₁w₂ Re{A_{p,1} A*_{p,2}},
/// algebraically identical to |amp_two|².
double prob_two(const TwoMassState& state, double p, double tau,
                const QuadConfig& cfg);

/// Pointwise amplitude and probability over an ascending grid. Grid points
/// evaluate independently (and may fan out across threads); assembly is in
/// grid order, so results are deterministic.
SeriesResult series(const TwoMassState& state, double p,
                    const std::vector<double>& tau_grid,
                    const QuadConfig& cfg);
SeriesResult series(const MddSpec& mdd, double p,
                    const std::vector<double>& tau_grid,
                    const QuadConfig& cfg);

}  // namespace decaylab
