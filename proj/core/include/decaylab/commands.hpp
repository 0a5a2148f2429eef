#pragma once

#include <string>
#include <vector>

#include "decaylab/plot.hpp"
#include "decaylab/scenario.hpp"

namespace decaylab::cli {

/// Command implementations behind the decaylab executable. Input problems
/// raise (the binary maps them to exit code 2); a nonzero return means a
/// verification verdict failed. Output paths are echoed to stdout.

int cmd_amplitude(const Scenario& scenario, const std::string& out_dir);
int cmd_probability(const Scenario& scenario, const std::string& out_dir);

/// Asymptotic-model report plus series CSV with asym_pl/asym_osc/asym_total
/// overlay columns, one pair of files per momentum.
int cmd_asymptote(const Scenario& scenario, const std::string& out_dir);

/// Prints the long-time regime per momentum.
int cmd_classify(const Scenario& scenario, const std::string& out_dir);

/// Runs one named check bundle (short-time, slope, period, scaling,
/// identity); exit 0 iff every verdict passes.
int cmd_verify(const std::string& check, const QuadConfig& cfg,
               const std::string& out_dir);

/// Extracted oscillation period vs 2π/|ϖ_p| per momentum.
int cmd_period(const Scenario& scenario, const std::string& out_dir,
               double tolerance);

/// Dilation ratio P_p(τ)/P₀(τ/χ) per momentum with settle verdict.
int cmd_scaling_check(const Scenario& scenario, const std::string& out_dir,
                      double tolerance);

/// Evaluates one figure preset: CSV per curve, combined plot, model report.
int cmd_figure(int number, const std::string& out_dir);

/// CSV → SVG with the requested transform.
int cmd_plot(const std::string& csv_path, PlotKind kind,
             double detrend_exponent, const std::string& out_path);

}  // namespace decaylab::cli
