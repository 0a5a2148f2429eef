#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decaylab/amplitude.hpp"

namespace decaylab {

/// One mass state as written in a scenario file: either the built-in toy
/// family or a tabulated regular part.
struct MddDescriptor {
  std::string family = "toy";  // "toy" | "tabulated"
  double alpha = 0.0;
  double xi0 = 1.0;                                // toy
  std::vector<std::pair<double, double>> knots;    // tabulated (ξ, Ω₀)
};

struct GridSpec {
  double start = 0.0;
  double stop = 10.0;
  int points = 801;
  bool log_spacing = false;

  std::vector<double> build() const;
};

/// A runnable scenario: masses, weights, momenta, time grid, quadrature
/// overrides and output paths. Flat key-value text on disk; every quantity
/// is dimensionless (m_s = 1).
struct Scenario {
  std::vector<MddDescriptor> masses;  // 1 or 2
  double w1 = 0.5, w2 = 0.5;
  std::vector<double> momenta{0.0};
  GridSpec grid;
  QuadConfig quad;
  std::string csv_path, plot_path, report_path;

  void validate() const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

/// Normalized MddSpec from a descriptor (tabulated families are normalized
/// numerically; the toy family carries its closed-form weight).
MddSpec build_mdd(const MddDescriptor& descriptor, const QuadConfig& quad);

/// Two-mass state from a two-mass scenario.
TwoMassState build_state(const Scenario& scenario);

enum class PlotKind {
  linear,             // P versus τ
  short_time_square,  // 1−P versus τ²
  loglog_abs,         // |log P| versus log τ
  detrended,          // τ^e·P versus τ
  ratio,              // ratio column versus τ
};

/// One curve of a figure preset; weights are always ½, ½.
struct PresetCurve {
  std::string label;
  double alpha1, alpha2;
  double xi01, xi02;
  double p;
};

struct FigurePreset {
  int number = 0;
  std::vector<PresetCurve> curves;
  GridSpec grid;
  PlotKind plot = PlotKind::linear;  // detrended figures use 2+α₁+α₂ per curve
  std::string note;
};

/// Built-in parameter sets for figures 1..9.
FigurePreset figure_preset(int number);

TwoMassState build_state(const PresetCurve& curve, const QuadConfig& quad);

}  // namespace decaylab
