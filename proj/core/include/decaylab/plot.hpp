#pragma once

#include <string>
#include <vector>

#include "decaylab/csv.hpp"
#include "decaylab/scenario.hpp"

namespace decaylab {

struct PlotCurve {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;  // overlays (asymptotes)
};

/// Static SVG line plot; strictly downstream of the CSV data.
std::string render_svg(const std::vector<PlotCurve>& curves,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label);

/// Applies the figure transform to a series CSV. Throws UnknownColumn when
/// the table lacks the columns the transform needs.
PlotCurve transform_for_plot(const CsvTable& table, PlotKind kind,
                             double detrend_exponent,
                             const std::string& label);

std::string axis_label_x(PlotKind kind);
std::string axis_label_y(PlotKind kind);

}  // namespace decaylab
