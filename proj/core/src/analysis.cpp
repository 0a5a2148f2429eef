#include "decaylab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace decaylab {

namespace {

void append_kv(std::ostringstream& os, const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  os << key << " = " << buf << "\n";
}

std::vector<size_t> local_maxima(const std::vector<double>& y) {
  std::vector<size_t> idx;
  for (size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) idx.push_back(i);
  return idx;
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

PowerLawFit fit_powerlaw(const SeriesResult& series, Window window,
                         const FitOptions& options) {
  if (!(window.lo < window.hi))
    throw InvalidParameter("fit window must be nonempty");

  std::vector<double> tau, prob;
  int excluded = 0;
  for (size_t i = 0; i < series.tau.size(); ++i) {
    const double t = series.tau[i];
    if (t < window.lo || t > window.hi) continue;
    if (!(series.prob[i] > 0.0)) {
      ++excluded;
      continue;
    }
    tau.push_back(t);
    prob.push_back(series.prob[i]);
  }

  if (options.envelope) {
    std::vector<double> detrended(tau.size());
    for (size_t i = 0; i < tau.size(); ++i)
      detrended[i] = std::pow(tau[i], options.detrend_exponent) * prob[i];
    const auto peaks = local_maxima(detrended);
    std::vector<double> ptau, pprob;
    for (size_t i : peaks) {
      ptau.push_back(tau[i]);
      pprob.push_back(prob[i]);
    }
    tau.swap(ptau);
    prob.swap(pprob);
  }

  if (tau.size() < 8)
    throw InsufficientPoints(
        "power-law fit needs at least 8 usable points, got " +
        std::to_string(tau.size()));

  const size_t n = tau.size();
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    x[i] = std::log(tau[i]);
    y[i] = std::log(prob[i]);
  }
  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  if (!(sxx > 0.0))
    throw InsufficientPoints("degenerate abscissa in fit window");

  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.prefactor = std::exp(fit.intercept);
  fit.points_used = static_cast<int>(n);
  fit.excluded_nonpositive = excluded;

  double ss_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.slope_ci = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return fit;
}

PeriodEstimate extract_period(const SeriesResult& series,
                              double detrend_exponent) {
  const size_t n = series.tau.size();
  if (n < 8) throw InsufficientPoints("period extraction needs >= 8 points");

  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i)
    y[i] = std::pow(series.tau[i], detrend_exponent) * series.prob[i];

  // centered running mean; points without a full window are trimmed, since
  // a shrinking window pins the residual to zero at the edges and sprays
  // spurious crossings there
  const size_t half = std::max<size_t>(2, n / 12);
  if (n < 2 * half + 4)
    throw InsufficientPoints("series too short for the detrend window");
  const size_t lo = half, hi = n - 1 - half;
  std::vector<double> z(n, 0.0);
  double window_sum = 0.0;
  for (size_t j = 0; j <= 2 * half; ++j) window_sum += y[j];
  for (size_t i = lo; i <= hi; ++i) {
    z[i] = y[i] - window_sum / static_cast<double>(2 * half + 1);
    if (i < hi) window_sum += y[i + half + 1] - y[i - half];
  }

  // a residual at rounding level relative to the detrended series means a
  // power-law regime whose sign flips are pure noise, not oscillation
  double zmax = 0.0, ymax = 0.0;
  for (size_t i = lo; i <= hi; ++i) {
    zmax = std::max(zmax, std::abs(z[i]));
    ymax = std::max(ymax, std::abs(y[i]));
  }
  if (zmax < 1e-6 * ymax)
    throw NoOscillationDetected(
        "detrended residual is at noise level; power-law regime");

  std::vector<double> crossings;
  for (size_t i = lo; i < hi; ++i) {
    if (z[i] * z[i + 1] < 0.0) {
      const double t = z[i] / (z[i] - z[i + 1]);
      crossings.push_back(series.tau[i] +
                          t * (series.tau[i + 1] - series.tau[i]));
    } else if (z[i] == 0.0 && i > lo && z[i - 1] * z[i + 1] < 0.0) {
      crossings.push_back(series.tau[i]);
    }
  }

  if (crossings.size() < 4)
    throw NoOscillationDetected(
        "fewer than 4 zero crossings; power-law regime or window too short");

  // full-cycle spacings pair an up- with a down-crossing, so waveform
  // asymmetry cancels; this is still twice the mean crossing spacing
  std::vector<double> cycles(crossings.size() - 2);
  for (size_t i = 0; i + 2 < crossings.size(); ++i)
    cycles[i] = crossings[i + 2] - crossings[i];
  const double mean =
      std::accumulate(cycles.begin(), cycles.end(), 0.0) / cycles.size();
  double var = 0.0;
  for (double s : cycles) var += (s - mean) * (s - mean);
  var = cycles.size() > 1 ? var / (cycles.size() - 1) : 0.0;

  PeriodEstimate est;
  est.period = mean;
  est.confidence = std::sqrt(var);
  est.crossings = static_cast<int>(crossings.size());
  return est;
}

RatioSeries scaling_ratio(const TwoMassState& state, double p, double chi,
                          const std::vector<double>& tau_grid,
                          const QuadConfig& cfg) {
  state.validate();
  if (!(chi >= 1.0)) throw InvalidParameter("scaling factor must be >= 1");

  RatioSeries out;
  out.tau = tau_grid;
  out.ratio.resize(tau_grid.size());
  const SeriesResult num = series(state, p, tau_grid, cfg);
  std::vector<double> scaled(tau_grid.size());
  for (size_t i = 0; i < tau_grid.size(); ++i) scaled[i] = tau_grid[i] / chi;
  const SeriesResult den = series(state, 0.0, scaled, cfg);
  for (size_t i = 0; i < tau_grid.size(); ++i) {
    if (den.prob[i] < 1e-300)
      throw DivisionGuard("rest-frame probability underflow in scaling ratio");
    out.ratio[i] = num.prob[i] / den.prob[i];
  }
  return out;
}

bool FitReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.verdict == Verdict::pass;
  });
}

std::string FitReport::render() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    const std::string prefix = "check." + c.name;
    os << prefix << ".verdict = " << to_string(c.verdict) << "\n";
    append_kv(os, prefix + ".measured", c.measured);
    append_kv(os, prefix + ".expected", c.expected);
    append_kv(os, prefix + ".tolerance", c.tolerance);
    if (!c.detail.empty()) os << prefix << ".detail = " << c.detail << "\n";
  }
  if (fit) {
    append_kv(os, "fitted_slope", fit->slope);
    append_kv(os, "slope_ci", fit->slope_ci);
    append_kv(os, "fitted_prefactor", fit->prefactor);
  }
  if (period) {
    append_kv(os, "fitted_period", period->period);
    append_kv(os, "period_ci", period->confidence);
  }
  if (!scaling_ratio_series.empty()) {
    os << "scaling_ratio_series =";
    for (double r : scaling_ratio_series) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.10g", r);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace decaylab
