#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decaylab/amplitude.hpp"

namespace decaylab {

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict verdict);

struct Window {
  double lo, hi;
};

struct FitOptions {
  bool envelope = false;          // fit through local maxima of τ^e·P
  double detrend_exponent = 0.0;  // e used for envelope extraction
};

struct PowerLawFit {
  double slope = 0.0;
  double slope_ci = 0.0;  // standard error of the slope
  double intercept = 0.0;
  double prefactor = 0.0;  // exp(intercept)
  int points_used = 0;
  int excluded_nonpositive = 0;
};

/// Least-squares line on (log τ, log P) inside the window. Expected slope is
/// −2(1+α_k); the intercept estimates log 𝔓. Oscillating series should be
/// fitted with envelope extraction, otherwise the cosine biases the line.
PowerLawFit fit_powerlaw(const SeriesResult& series, Window window,
                         const FitOptions& options = {});

struct PeriodEstimate {
  double period = 0.0;
  double confidence = 0.0;  // spread (std dev) of the full-cycle spacings
  int crossings = 0;
};

/// Period of damped oscillations: multiplies the series by τ^e, subtracts a
/// centered running mean, and measures zero-crossing spacings, paired into
/// full cycles so waveform asymmetry cancels. The caller supplies
/// e = 2+α₁+α₂. Invariant under positive rescaling of the series and under
/// constant shifts of the detrended mean.
PeriodEstimate extract_period(const SeriesResult& series,
                              double detrend_exponent);

struct RatioSeries {
  std::vector<double> tau;
  std::vector<double> ratio;  // P_p(τ) / P₀(τ/χ)
};

/// Pointwise dilation check P_p(τ)/P₀(τ/χ). In the distinct-exponent regime
/// the tail approaches 1; with equal exponents it keeps oscillating.
RatioSeries scaling_ratio(const TwoMassState& state, double p, double chi,
                          const std::vector<double>& tau_grid,
                          const QuadConfig& cfg);

/// One verified claim: what was measured, what was expected, and the
/// threshold that was applied (reports are self-describing).
struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct FitReport {
  std::vector<CheckResult> checks;
  std::optional<PowerLawFit> fit;
  std::optional<PeriodEstimate> period;
  std::vector<double> scaling_ratio_series;

  void add(CheckResult result) { checks.push_back(std::move(result)); }
  bool passed() const;  // every verdict is pass
  std::string render() const;
};

}  // namespace decaylab
