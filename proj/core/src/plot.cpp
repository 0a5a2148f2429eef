#include "decaylab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace decaylab {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 46;
constexpr int kMarginBottom = 64;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// round step to 1/2/5 decades
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void widen(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
};

}  // namespace

std::string render_svg(const std::vector<PlotCurve>& curves,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  if (curves.empty()) throw InvalidParameter("nothing to plot");
  Range xr, yr;
  size_t total_points = 0;
  for (const auto& c : curves) {
    if (c.x.size() != c.y.size())
      throw InvalidParameter("curve '" + c.label + "' has mismatched lengths");
    total_points += c.x.size();
    for (double v : c.x) xr.widen(v);
    for (double v : c.y) yr.widen(v);
  }
  if (total_points == 0 || !(xr.lo <= xr.hi) || !(yr.lo <= yr.hi))
    throw InvalidParameter("no finite data to plot");
  if (xr.lo == xr.hi) { xr.lo -= 0.5; xr.hi += 0.5; }
  if (yr.lo == yr.hi) { yr.lo -= 0.5; yr.hi += 0.5; }
  const double pad = 0.04 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
     << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << title << "</text>\n";

  // frame
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
     << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  const double xstep = nice_step(xr.hi - xr.lo, 8);
  for (double t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-9 * xstep;
       t += xstep) {
    os << "<line x1=\"" << px(t) << "\" y1=\"" << kMarginTop + plot_h
       << "\" x2=\"" << px(t) << "\" y2=\"" << kMarginTop + plot_h + 6
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(t) << "\" y=\"" << kMarginTop + plot_h + 22
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"12\">"
       << num(t) << "</text>\n";
  }
  const double ystep = nice_step(yr.hi - yr.lo, 6);
  for (double t = std::ceil(yr.lo / ystep) * ystep; t <= yr.hi + 1e-9 * ystep;
       t += ystep) {
    os << "<line x1=\"" << kMarginLeft - 6 << "\" y1=\"" << py(t) << "\" x2=\""
       << kMarginLeft << "\" y2=\"" << py(t) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kMarginLeft - 10 << "\" y=\"" << py(t) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
       << num(t) << "</text>\n";
  }

  os << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
     << kHeight - 18
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << x_label << "</text>\n";
  os << "<text x=\"22\" y=\"" << kMarginTop + plot_h / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\""
        " transform=\"rotate(-90 22 "
     << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    const char* color = kPalette[c % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"";
    if (curve.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (size_t i = 0; i < curve.x.size(); ++i) {
      if (!std::isfinite(curve.x[i]) || !std::isfinite(curve.y[i])) continue;
      os << num(px(curve.x[i])) << "," << num(py(curve.y[i])) << " ";
    }
    os << "\"/>\n";
    // legend entry
    const double ly = kMarginTop + 16 + 18 * c;
    const double lx = kMarginLeft + plot_w - 150;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 26
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (curve.dashed) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n";
    os << "<text x=\"" << lx + 32 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << curve.label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

PlotCurve transform_for_plot(const CsvTable& table, PlotKind kind,
                             double detrend_exponent,
                             const std::string& label) {
  PlotCurve curve;
  curve.label = label;
  const auto& tau = table.column("tau");
  switch (kind) {
    case PlotKind::linear: {
      curve.x = tau;
      curve.y = table.column("prob");
      break;
    }
    case PlotKind::short_time_square: {
      const auto& prob = table.column("prob");
      curve.x.resize(tau.size());
      curve.y.resize(tau.size());
      for (size_t i = 0; i < tau.size(); ++i) {
        curve.x[i] = tau[i] * tau[i];
        curve.y[i] = 1.0 - prob[i];
      }
      break;
    }
    case PlotKind::loglog_abs: {
      const auto& prob = table.column("prob");
      for (size_t i = 0; i < tau.size(); ++i) {
        if (!(tau[i] > 0.0) || !(prob[i] > 0.0)) continue;
        curve.x.push_back(std::log(tau[i]));
        curve.y.push_back(std::abs(std::log(prob[i])));
      }
      break;
    }
    case PlotKind::detrended: {
      const auto& prob = table.column("prob");
      curve.x = tau;
      curve.y.resize(tau.size());
      for (size_t i = 0; i < tau.size(); ++i)
        curve.y[i] = std::pow(tau[i], detrend_exponent) * prob[i];
      break;
    }
    case PlotKind::ratio: {
      curve.x = tau;
      curve.y = table.column("ratio");
      break;
    }
  }
  return curve;
}

std::string axis_label_x(PlotKind kind) {
  switch (kind) {
    case PlotKind::short_time_square: return "(m_s t)^2";
    case PlotKind::loglog_abs: return "log(m_s t)";
    default: return "m_s t";
  }
}

std::string axis_label_y(PlotKind kind) {
  switch (kind) {
    case PlotKind::linear: return "P_p(t)";
    case PlotKind::short_time_square: return "1 - P_p(t)";
    case PlotKind::loglog_abs: return "|log P_p(t)|";
    case PlotKind::detrended: return "(m_s t)^e P_p(t)";
    case PlotKind::ratio: return "P_p(t) / P_0(t/chi)";
  }
  return "";
}

}  // namespace decaylab
