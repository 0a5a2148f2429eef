#include "decaylab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace decaylab::checks {

namespace {

std::string param_tag(const PresetCurve& c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "alpha=(%g,%g) xi0=(%g,%g) p=%g", c.alpha1,
                c.alpha2, c.xi01, c.xi02, c.p);
  return buf;
}

CheckResult bounded(const std::string& name, double measured, double expected,
                    double tolerance, std::string detail = {}) {
  CheckResult r;
  r.name = name;
  r.measured = measured;
  r.expected = expected;
  r.tolerance = tolerance;
  r.detail = std::move(detail);
  r.verdict = std::abs(measured - expected) <= tolerance ? Verdict::pass
                                                         : Verdict::fail;
  return r;
}

CheckResult below(const std::string& name, double measured, double tolerance,
                  std::string detail = {}) {
  return bounded(name, measured, 0.0, tolerance, std::move(detail));
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i);
  g.back() = hi;
  return g;
}

// prefactor with the exponent pinned to the theoretical value: geometric
// mean of τ^e·P over the fitted points
double pinned_prefactor(const std::vector<double>& tau,
                        const std::vector<double>& prob, double exponent) {
  double acc = 0.0;
  for (size_t i = 0; i < tau.size(); ++i)
    acc += std::log(prob[i]) + exponent * std::log(tau[i]);
  return std::exp(acc / tau.size());
}

struct SlopeCase {
  PresetCurve curve;
  bool envelope;
  Window window;
  double expected_slope;
  double expected_prefactor;
  std::string tag;
};

}  // namespace

FitReport normalization_bounds(const QuadConfig& cfg) {
  FitReport report;
  const auto grid = linspace(0.0, 100.0, 161);

  double worst_p0 = 0.0, worst_upper = 0.0, lowest = 1.0;
  for (int fig = 1; fig <= 9; ++fig) {
    for (const auto& curve : figure_preset(fig).curves) {
      const TwoMassState state = build_state(curve, cfg);
      const SeriesResult s = series(state, curve.p, grid, cfg);
      worst_p0 = std::max(worst_p0, std::abs(s.prob.front() - 1.0));
      for (double pr : s.prob) {
        worst_upper = std::max(worst_upper, pr - 1.0);
        lowest = std::min(lowest, pr);
      }
    }
  }
  report.add(below("preset.initial_probability", worst_p0, 1e-8,
                   "max |P_p(0) - 1| over all figure presets"));
  report.add(below("preset.upper_bound", std::max(worst_upper, 0.0), 1e-8,
                   "max (P_p - 1) over all figure presets"));
  report.add(below("preset.lower_bound", std::max(-lowest, 0.0), 0.0,
                   "most negative P_p over all figure presets"));

  // seeded fuzz over random two-mass states, non-integer exponents included
  std::mt19937_64 rng(20250810);
  std::uniform_real_distribution<double> ualpha(0.0, 2.5), uxi(0.6, 2.5),
      uw(0.2, 0.8), up(0.0, 3.0), utau(0.0, 100.0);
  double fuzz_p0 = 0.0, fuzz_upper = 0.0, fuzz_lowest = 1.0;
  int points = 0;
  for (int s = 0; s < 20; ++s) {
    TwoMassState state{make_toy_mdd({ualpha(rng), uxi(rng)}),
                       make_toy_mdd({ualpha(rng), uxi(rng)}), 0.5, 0.5};
    state.w1 = uw(rng);
    state.w2 = 1.0 - state.w1;
    const double p = up(rng);
    std::vector<double> taus{0.0};
    for (int k = 0; k < 5; ++k) taus.push_back(utau(rng));
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    const SeriesResult s2 = series(state, p, taus, cfg);
    fuzz_p0 = std::max(fuzz_p0, std::abs(s2.prob.front() - 1.0));
    for (double pr : s2.prob) {
      fuzz_upper = std::max(fuzz_upper, pr - 1.0);
      fuzz_lowest = std::min(fuzz_lowest, pr);
      ++points;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "%d random (state, tau) samples",
                points);
  report.add(below("fuzz.initial_probability", fuzz_p0, 1e-8, detail));
  report.add(below("fuzz.upper_bound", std::max(fuzz_upper, 0.0), 1e-8));
  report.add(below("fuzz.lower_bound", std::max(-fuzz_lowest, 0.0), 0.0));
  return report;
}

FitReport oracle_equivalence(const QuadConfig& cfg) {
  FitReport report;
  const int oracle_panels = 1 << 14;
  for (const ToyMddParams params : {ToyMddParams{0.0, 1.0}, ToyMddParams{2.0, 2.0}}) {
    const MddSpec mdd = make_toy_mdd(params);
    double worst = 0.0;
    for (int i = 0; i <= 16; ++i) {
      const double tau = 100.0 * i / 16.0;
      for (double rho : {0.0, 1.0, 2.0}) {
        const auto adaptive = integrate({mdd, rho, tau}, cfg);
        const auto oracle = oracle_integrate({mdd, rho, tau}, oracle_panels);
        worst = std::max(worst, std::abs(adaptive - oracle.value));
      }
    }
    char name[48], detail[96];
    std::snprintf(name, sizeof name, "lattice.alpha%g_xi%g", params.alpha,
                  params.xi0);
    std::snprintf(detail, sizeof detail,
                  "51-point lattice, tau 0..100, rho {0,1,2}, oracle n=2^14");
    report.add(below(name, worst, 1e-7, detail));
  }
  return report;
}

FitReport short_time_law(const QuadConfig& cfg) {
  FitReport report;
  for (int fig : {1, 3}) {
    for (const auto& curve : figure_preset(fig).curves) {
      const TwoMassState state = build_state(curve, cfg);
      const double pi_bar0 = short_time(state, curve.p).pi_bar0;
      double worst = 0.0;
      for (double tau : {0.002, 0.005, 0.01}) {
        const double prob = prob_two(state, curve.p, tau, cfg);
        const double ratio = (1.0 - prob) / (tau * tau);
        worst = std::max(worst, std::abs(ratio - pi_bar0) / pi_bar0);
      }
      char name[48];
      std::snprintf(name, sizeof name, "fig%d.%s", fig, curve.label.c_str());
      report.add(below(name, worst, 0.01,
                       "(1-P)/tau^2 vs pi_bar0, " + param_tag(curve)));
    }
  }
  return report;
}

FitReport long_time_slope(const QuadConfig& cfg) {
  FitReport report;
  const auto fig6 = figure_preset(6).curves;  // a: p=2, b: p=1, c: p=0
  const auto fig7 = figure_preset(7).curves;  // d: xi=(1,1) p=0
  const auto fig8 = figure_preset(8).curves;  // a: alpha=(1,1) p=0

  // equal-exponent equal-bound route has no figure preset of its own
  const PresetCurve flat{"flat", 1, 1, 1, 1, 0};

  // raw fits for the fig-6 curves: their oscillation is a <10% modulation
  // whose log-mean is O(A²/4), far below the gates, while envelope peaks
  // would be too sparse in the window (period up to 10.6)
  const std::vector<SlopeCase> cases = {
      {fig6[2], false, {30.0, 100.0}, -2.0, 1.0, "fig6.c"},
      {fig6[1], false, {30.0, 100.0}, -2.0, 2.0, "fig6.b"},
      {fig6[0], false, {30.0, 100.0}, -2.0, 5.0, "fig6.a"},
      {fig7[3], false, {30.0, 100.0}, -4.0, 4.0, "fig7.d"},
      {flat, false, {30.0, 100.0}, -4.0, 16.0, "equal-alpha-equal-bound"},
      // strong constant-ratio oscillation: peaks ride on P_pl + 2P_osc
      {fig8[0], true, {30.0, 100.0}, -4.0, 100.0, "fig8.a"},
  };

  for (const auto& sc : cases) {
    const TwoMassState state = build_state(sc.curve, cfg);
    const auto grid = logspace(sc.window.lo * 0.95, sc.window.hi * 1.02, 421);
    const SeriesResult s = series(state, sc.curve.p, grid, cfg);

    FitOptions options;
    options.envelope = sc.envelope;
    options.detrend_exponent = -sc.expected_slope;
    const PowerLawFit fit = fit_powerlaw(s, sc.window, options);

    std::vector<double> tau, prob;
    if (sc.envelope) {
      // reuse the same peak points the fit used by re-extracting them
      std::vector<double> det;
      std::vector<double> wt, wp;
      for (size_t i = 0; i < s.tau.size(); ++i) {
        if (s.tau[i] < sc.window.lo || s.tau[i] > sc.window.hi) continue;
        wt.push_back(s.tau[i]);
        wp.push_back(s.prob[i]);
      }
      det.resize(wt.size());
      for (size_t i = 0; i < wt.size(); ++i)
        det[i] = std::pow(wt[i], -sc.expected_slope) * wp[i];
      for (size_t i = 1; i + 1 < det.size(); ++i)
        if (det[i] > det[i - 1] && det[i] >= det[i + 1]) {
          tau.push_back(wt[i]);
          prob.push_back(wp[i]);
        }
    } else {
      for (size_t i = 0; i < s.tau.size(); ++i) {
        if (s.tau[i] < sc.window.lo || s.tau[i] > sc.window.hi) continue;
        tau.push_back(s.tau[i]);
        prob.push_back(s.prob[i]);
      }
    }
    const double prefactor =
        pinned_prefactor(tau, prob, -sc.expected_slope);

    report.add(bounded(sc.tag + ".slope", fit.slope, sc.expected_slope, 0.1,
                       param_tag(sc.curve)));
    report.add(bounded(sc.tag + ".prefactor", prefactor,
                       sc.expected_prefactor, 0.1 * sc.expected_prefactor,
                       "exponent pinned to theory"));
    if (!report.fit) report.fit = fit;
  }
  return report;
}

FitReport oscillation_period(const QuadConfig& cfg) {
  FitReport report;
  const auto curves = figure_preset(8).curves;
  // later window than the figure itself: the waveform carries a 1/τ²
  // frequency chirp that has to decay before the asymptotic period shows
  const auto grid = linspace(15.0, 80.0, 2601);
  for (int i = 0; i < 3; ++i) {  // a: p=0, b: p=1, c: p=2
    const auto& curve = curves[i];
    const TwoMassState state = build_state(curve, cfg);
    const AsymptoticModel model = long_time(state, curve.p);
    const SeriesResult s = series(state, curve.p, grid, cfg);
    const PeriodEstimate est = extract_period(s, model.osc_exponent);
    char name[32];
    std::snprintf(name, sizeof name, "fig8.%s", curve.label.c_str());
    report.add(bounded(name, est.period, model.period, 0.01 * model.period,
                       param_tag(curve)));
    report.period = est;
  }
  return report;
}

FitReport time_dilation(const QuadConfig& cfg) {
  FitReport report;
  const auto grid = linspace(25.0, 35.0, 101);

  // fig-9 caption curves with equal bounds, at their caption momenta
  const auto fig9 = figure_preset(9).curves;
  for (int i = 0; i < 2; ++i) {  // a: xi=(1,1) p=1, b: xi=(2,2) p=2
    const auto& curve = fig9[i];
    const TwoMassState state = build_state(curve, cfg);
    const AsymptoticModel model = long_time(state, curve.p);
    const double chi = *dilation_map(model, curve.p, 0.0).chi_pk;
    const RatioSeries ratio = scaling_ratio(state, curve.p, chi, grid, cfg);
    double worst = 0.0;
    for (double r : ratio.ratio) worst = std::max(worst, std::abs(r - 1.0));
    char name[32];
    std::snprintf(name, sizeof name, "fig9.%s", curve.label.c_str());
    report.add(below(name, worst, 0.05, param_tag(curve)));
    report.scaling_ratio_series = ratio.ratio;
  }

  // equal exponents, unequal bounds: the ratio must keep oscillating
  const PresetCurve lost{"lost", 1, 1, 1, 2, 1};
  const TwoMassState state = build_state(lost, cfg);
  const double chi = chi_factor(lost.xi01, lost.p);
  const RatioSeries ratio = scaling_ratio(state, lost.p, chi, grid, cfg);
  const auto [lo, hi] = std::minmax_element(ratio.ratio.begin(),
                                            ratio.ratio.end());
  CheckResult lostcheck;
  lostcheck.name = "equal-alpha.scaling-lost";
  lostcheck.measured = *hi - *lo;
  lostcheck.expected = 0.0;
  lostcheck.tolerance = 0.1;
  lostcheck.detail = "ratio range on the window; must exceed the tolerance, " +
                     param_tag(lost);
  lostcheck.verdict =
      lostcheck.measured > lostcheck.tolerance ? Verdict::pass : Verdict::fail;
  report.add(lostcheck);
  return report;
}

FitReport period_ratio_identity() {
  FitReport report;
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> umu(0.5, 4.0), up(0.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double mu1 = umu(rng), mu2 = umu(rng), p = up(rng);
    if (mu1 == mu2) continue;
    const double ratio = (mu2 - mu1) / varpi_value(mu1, mu2, p);
    const double weighted =
        (mu1 * chi_factor(mu1, p) + mu2 * chi_factor(mu2, p)) / (mu1 + mu2);
    worst = std::max(worst, std::abs(ratio - weighted));
  }
  report.add(below("varpi-ratio-vs-weighted-mean", worst, 1e-12,
                   "1000 random draws, mu in [0.5,4], p in [0,10]"));
  return report;
}

FitReport decomposition_identity(const QuadConfig& cfg) {
  FitReport report;
  double worst = 0.0;
  for (int fig = 1; fig <= 9; ++fig) {
    for (const auto& curve : figure_preset(fig).curves) {
      const TwoMassState state = build_state(curve, cfg);
      for (double tau : {0.5, 3.0, 17.0, 41.0}) {
        const double direct = std::norm(amp_two(state, curve.p, tau, cfg));
        const double decomposed = prob_two(state, curve.p, tau, cfg);
        worst = std::max(worst,
                         std::abs(direct - decomposed) / std::max(direct, 1e-30));
      }
    }
  }
  report.add(below("three-term-vs-square-modulus", worst, 1e-12,
                   "all figure presets, tau in {0.5, 3, 17, 41}"));
  return report;
}

FitReport limit_behavior() {
  FitReport report;
  const double p = 100.0;
  const QuadConfig cfg;

  const std::vector<PresetCurve> states = {
      {"fig6c", 0, 2, 1, 2, p}, {"fig8a", 1, 1, 1, 2, p}, {"fig2a", 1, 2, 1, 1, p}};
  for (const auto& curve : states) {
    const TwoMassState state = build_state(curve, cfg);
    const AsymptoticModel exact = long_time(state, p);
    const auto lim = limits(state, p);
    const UltraRelApprox& ur = *lim.ultrarelativistic;
    const double mu_max = state.mu_max();
    const double tol = 2.0 * (mu_max / p) * (mu_max / p);

    // gate the factors of the dominant long-time law; a subdominant term
    // with exponent 1+α > 2 has Taylor error (1+α)(μ/p)², outside the
    // stated bound by construction
    double worst = 0.0;
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst,
                       std::abs(ur.chi[j] - exact.chi[j]) / exact.chi[j]);
    worst = std::max(worst, std::abs(ur.P_pl - exact.P_pl) / exact.P_pl);
    if (exact.regime == Regime::DampedOscillation)
      worst = std::max(worst, std::abs(ur.P_osc - exact.P_osc) / exact.P_osc);
    report.add(below("ultrarelativistic." + curve.label, worst, tol,
                     param_tag(curve)));
  }

  // oscillation period divergence for xi0 = (1, 2)
  const double t_ratio =
      (1.0 * chi_factor(1.0, p) + 2.0 * chi_factor(2.0, p)) / 3.0;
  CheckResult diverge;
  diverge.name = "period-divergence";
  diverge.measured = t_ratio;  // 66.675 at p = 100
  diverge.expected = 50.0;
  diverge.tolerance = 0.0;
  diverge.detail = "T_p/T_0 at p=100 for mu0=(1,2); must exceed 50";
  diverge.verdict = t_ratio > 50.0 ? Verdict::pass : Verdict::fail;
  report.add(diverge);
  return report;
}

std::vector<NamedReport> run_all(const QuadConfig& cfg) {
  return {
      {"normalization-bounds", normalization_bounds(cfg)},
      {"oracle-equivalence", oracle_equivalence(cfg)},
      {"short-time", short_time_law(cfg)},
      {"slope", long_time_slope(cfg)},
      {"period", oscillation_period(cfg)},
      {"scaling", time_dilation(cfg)},
      {"period-ratio-identity", period_ratio_identity()},
      {"decomposition-identity", decomposition_identity(cfg)},
      {"limits", limit_behavior()},
  };
}

std::vector<std::string> verify_names() {
  return {"short-time", "slope", "period", "scaling", "identity"};
}

FitReport run_named(const std::string& name, const QuadConfig& cfg) {
  if (name == "short-time") return short_time_law(cfg);
  if (name == "slope") return long_time_slope(cfg);
  if (name == "period") return oscillation_period(cfg);
  if (name == "scaling") return time_dilation(cfg);
  if (name == "identity") {
    FitReport combined = period_ratio_identity();
    for (auto& c : decomposition_identity(cfg).checks)
      combined.add(std::move(c));
    return combined;
  }
  throw InvalidParameter("unknown verify check '" + name +
                         "'; expected short-time, slope, period, scaling or "
                         "identity");
}

}  // namespace decaylab::checks
