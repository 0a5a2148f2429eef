#include "decaylab/commands.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "decaylab/checks.hpp"
#include "decaylab/csv.hpp"

namespace decaylab::cli {

namespace {

std::string momentum_tag(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

std::filesystem::path out_file(const std::string& out_dir,
                               const std::string& name) {
  return std::filesystem::path(out_dir) / name;
}

void emit(const std::filesystem::path& path, const std::string& content) {
  write_text_file(path.string(), content);
  std::cout << "wrote " << path.string() << "\n";
}

bool is_two_mass(const Scenario& sc) { return sc.masses.size() == 2; }

// scenario-declared output file names win over the command default
std::string stem_or(const std::string& declared, const std::string& fallback) {
  if (declared.empty()) return fallback;
  return std::filesystem::path(declared).stem().string();
}

SeriesResult scenario_series(const Scenario& sc, double p,
                             const std::vector<double>& grid) {
  if (is_two_mass(sc)) return series(build_state(sc), p, grid, sc.quad);
  return series(build_mdd(sc.masses[0], sc.quad), p, grid, sc.quad);
}

int emit_series(const Scenario& sc, const std::string& out_dir,
                const std::string& command_name) {
  sc.validate();
  const auto grid = sc.grid.build();
  const std::string prefix = stem_or(sc.csv_path, command_name);

  std::vector<PlotCurve> curves;
  for (double p : sc.momenta) {
    const SeriesResult s = scenario_series(sc, p, grid);
    const std::string csv_text = series_to_csv(s);
    emit(out_file(out_dir, prefix + "_p" + momentum_tag(p) + ".csv"),
         csv_text);
    if (!sc.plot_path.empty())
      curves.push_back(transform_for_plot(parse_csv(csv_text),
                                          PlotKind::linear, 0.0,
                                          "p=" + momentum_tag(p)));
  }
  if (!sc.plot_path.empty()) {
    const std::string svg =
        render_svg(curves, command_name, axis_label_x(PlotKind::linear),
                   axis_label_y(PlotKind::linear));
    emit(out_file(out_dir, stem_or(sc.plot_path, command_name) + ".svg"), svg);
  }
  return 0;
}

std::vector<NamedColumn> asymptote_columns(const AsymptoticModel& model,
                                           const std::vector<double>& grid) {
  std::vector<double> pl(grid.size()), osc(grid.size()), total(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 0.0) {
      pl[i] = model.predict_power_law(grid[i]);
      osc[i] = model.predict_cross(grid[i]);
      total[i] = pl[i] + osc[i];
    } else {
      pl[i] = osc[i] = total[i] = 0.0;
    }
  }
  return {{"asym_pl", pl}, {"asym_osc", osc}, {"asym_total", total}};
}

}  // namespace

int cmd_amplitude(const Scenario& sc, const std::string& out_dir) {
  return emit_series(sc, out_dir, "amplitude");
}

int cmd_probability(const Scenario& sc, const std::string& out_dir) {
  return emit_series(sc, out_dir, "probability");
}

int cmd_asymptote(const Scenario& sc, const std::string& out_dir) {
  sc.validate();
  if (!is_two_mass(sc))
    throw InvalidParameter("asymptote command needs a two-mass scenario");
  const TwoMassState state = build_state(sc);
  const auto grid = sc.grid.build();
  for (double p : sc.momenta) {
    const AsymptoticModel model = long_time(state, p);
    const auto lim = limits(state, p);

    std::ostringstream rep;
    rep << model.report();
    const DilationMap map = dilation_map(model, p, 0.0);
    rep << "T_p_over_T0 = " << map.period_ratio_rest << "\n";
    if (lim.ultrarelativistic) {
      const auto& ur = *lim.ultrarelativistic;
      rep << "ultra.chi_1 = " << ur.chi[0] << "\n";
      rep << "ultra.chi_2 = " << ur.chi[1] << "\n";
      rep << "ultra.P_pl = " << ur.P_pl << "\n";
      rep << "ultra.P_osc = " << ur.P_osc << "\n";
      rep << "ultra.varpi = " << ur.varpi << "\n";
    }
    const std::string report_stem = stem_or(sc.report_path, "asymptote");
    emit(out_file(out_dir,
                  report_stem + "_p" + momentum_tag(p) + ".report.txt"),
         rep.str());

    const SeriesResult s = series(state, p, grid, sc.quad);
    const std::string csv_stem = stem_or(sc.csv_path, "asymptote");
    emit(out_file(out_dir, csv_stem + "_p" + momentum_tag(p) + ".csv"),
         series_to_csv(s, asymptote_columns(model, grid)));
  }
  return 0;
}

int cmd_classify(const Scenario& sc, const std::string& out_dir) {
  sc.validate();
  if (!is_two_mass(sc))
    throw InvalidParameter("classify command needs a two-mass scenario");
  const TwoMassState state = build_state(sc);
  std::ostringstream rep;
  for (double p : sc.momenta) {
    const AsymptoticModel model = long_time(state, p);
    rep << "p=" << momentum_tag(p) << " regime=" << to_string(model.regime)
        << " pl_exponent=" << model.pl_exponent << " period=" << model.period
        << "\n";
  }
  std::cout << rep.str();
  emit(out_file(out_dir, "classify.txt"), rep.str());
  return 0;
}

int cmd_verify(const std::string& check, const QuadConfig& cfg,
               const std::string& out_dir) {
  const FitReport report = checks::run_named(check, cfg);
  for (const auto& c : report.checks) {
    std::string verdict = to_string(c.verdict);
    for (auto& ch : verdict) ch = std::toupper(static_cast<unsigned char>(ch));
    std::cout << verdict << " " << check << "/" << c.name
              << " measured=" << c.measured << " tolerance=" << c.tolerance
              << "\n";
  }
  emit(out_file(out_dir, "verify_" + check + ".report.txt"), report.render());
  return report.passed() ? 0 : 1;
}

int cmd_period(const Scenario& sc, const std::string& out_dir,
               double tolerance) {
  sc.validate();
  if (!is_two_mass(sc))
    throw InvalidParameter("period command needs a two-mass scenario");
  const TwoMassState state = build_state(sc);
  const auto grid = sc.grid.build();

  FitReport report;
  for (double p : sc.momenta) {
    const AsymptoticModel model = long_time(state, p);
    const SeriesResult s = series(state, p, grid, sc.quad);

    // detrended series and its predicted envelope, in the same units
    std::vector<double> detrended(grid.size()), envelope(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
      const double scale = std::pow(grid[i], model.osc_exponent);
      detrended[i] = scale * s.prob[i];
      envelope[i] = grid[i] > 0.0 ? scale * model.envelope_max(grid[i]) : 0.0;
    }
    emit(out_file(out_dir, "period_p" + momentum_tag(p) + ".csv"),
         series_to_csv(s, {{"detrended", detrended}, {"envelope", envelope}}));

    CheckResult r;
    r.name = "period.p" + momentum_tag(p);
    r.expected = model.period;
    r.tolerance = tolerance * model.period;
    try {
      const PeriodEstimate est = extract_period(s, model.osc_exponent);
      r.measured = est.period;
      r.verdict = std::abs(est.period - model.period) <= r.tolerance
                      ? Verdict::pass
                      : Verdict::fail;
      report.period = est;
    } catch (const NoOscillationDetected& e) {
      r.verdict = Verdict::inconclusive;
      r.detail = e.what();
    }
    report.add(r);
  }
  for (const auto& c : report.checks)
    std::cout << to_string(c.verdict) << " " << c.name
              << " measured=" << c.measured << " expected=" << c.expected
              << "\n";
  emit(out_file(out_dir, "period.report.txt"), report.render());
  return report.passed() ? 0 : 1;
}

int cmd_scaling_check(const Scenario& sc, const std::string& out_dir,
                      double tolerance) {
  sc.validate();
  if (!is_two_mass(sc))
    throw InvalidParameter("scaling-check command needs a two-mass scenario");
  const TwoMassState state = build_state(sc);
  const auto grid = sc.grid.build();
  if (!(grid.front() > 0.0))
    throw InvalidParameter("scaling-check needs a positive time grid");

  FitReport report;
  for (double p : sc.momenta) {
    if (p == 0.0) continue;
    const AsymptoticModel model = long_time(state, p);
    CheckResult r;
    r.name = "scaling.p" + momentum_tag(p);
    r.tolerance = tolerance;
    if (model.regime != Regime::PowerLawDistinctAlpha) {
      r.verdict = Verdict::inconclusive;
      r.detail = "equal endpoint exponents: the scaling relation is lost";
      report.add(r);
      continue;
    }
    const double chi = *dilation_map(model, p, 0.0).chi_pk;
    const RatioSeries ratio = scaling_ratio(state, p, chi, grid, sc.quad);
    double worst = 0.0;
    const size_t tail_start = ratio.ratio.size() / 2;
    for (size_t i = tail_start; i < ratio.ratio.size(); ++i)
      worst = std::max(worst, std::abs(ratio.ratio[i] - 1.0));
    r.measured = worst;
    r.expected = 0.0;
    r.detail = "max |ratio - 1| over the upper half of the grid";
    r.verdict = worst <= tolerance ? Verdict::pass : Verdict::fail;
    report.add(r);
    report.scaling_ratio_series = ratio.ratio;

    std::ostringstream csv;
    csv << "tau,ratio\n";
    for (size_t i = 0; i < ratio.tau.size(); ++i) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ratio.tau[i],
                    ratio.ratio[i]);
      csv << buf;
    }
    emit(out_file(out_dir, "scaling_p" + momentum_tag(p) + ".csv"),
         csv.str());
  }
  if (report.checks.empty())
    throw InvalidParameter("scaling-check needs at least one momentum > 0");
  for (const auto& c : report.checks)
    std::cout << to_string(c.verdict) << " " << c.name
              << " measured=" << c.measured << "\n";
  emit(out_file(out_dir, "scaling.report.txt"), report.render());
  return report.passed() ? 0 : 1;
}

int cmd_figure(int number, const std::string& out_dir) {
  const FigurePreset preset = figure_preset(number);
  QuadConfig cfg;  // presets pin the 1e-10 tolerance for reproducibility
  const auto grid = preset.grid.build();

  std::vector<PlotCurve> plot_curves;
  std::ostringstream rep;
  if (!preset.note.empty()) rep << "note = " << preset.note << "\n";
  for (const auto& curve : preset.curves) {
    const TwoMassState state = build_state(curve, cfg);
    const AsymptoticModel model = long_time(state, curve.p);
    rep << "[curve " << curve.label << "] p = " << curve.p << "\n"
        << model.report() << "\n";

    const std::string base =
        "fig" + std::to_string(number) + "_" + curve.label;
    std::string label = curve.label + ": p=" + momentum_tag(curve.p);

    if (preset.plot == PlotKind::ratio) {
      const double chi = *dilation_map(model, curve.p, 0.0).chi_pk;
      const RatioSeries ratio =
          scaling_ratio(state, curve.p, chi, grid, cfg);
      std::ostringstream csv;
      csv << "tau,ratio\n";
      for (size_t i = 0; i < ratio.tau.size(); ++i) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ratio.tau[i],
                      ratio.ratio[i]);
        csv << buf;
      }
      emit(out_file(out_dir, base + ".csv"), csv.str());
      PlotCurve pc;
      pc.label = label;
      pc.x = ratio.tau;
      pc.y = ratio.ratio;
      plot_curves.push_back(std::move(pc));
      continue;
    }

    const SeriesResult s = series(state, curve.p, grid, cfg);
    const std::string csv_text =
        series_to_csv(s, asymptote_columns(model, grid));
    emit(out_file(out_dir, base + ".csv"), csv_text);

    const CsvTable table = parse_csv(csv_text);
    const double detrend =
        preset.plot == PlotKind::detrended ? model.osc_exponent : 0.0;
    plot_curves.push_back(
        transform_for_plot(table, preset.plot, detrend, label));
    if (preset.plot == PlotKind::loglog_abs) {
      // dashed asymptote overlay
      PlotCurve overlay;
      overlay.label = curve.label + " asym";
      overlay.dashed = true;
      const auto& asym = table.column("asym_total");
      const auto& tau = table.column("tau");
      for (size_t i = 0; i < tau.size(); ++i) {
        if (!(tau[i] >= 1.0) || !(asym[i] > 0.0)) continue;
        overlay.x.push_back(std::log(tau[i]));
        overlay.y.push_back(std::abs(std::log(asym[i])));
      }
      plot_curves.push_back(std::move(overlay));
    }
  }

  const std::string svg =
      render_svg(plot_curves, "figure " + std::to_string(number),
                 axis_label_x(preset.plot), axis_label_y(preset.plot));
  emit(out_file(out_dir, "fig" + std::to_string(number) + ".svg"), svg);
  emit(out_file(out_dir, "fig" + std::to_string(number) + ".report.txt"),
       rep.str());
  return 0;
}

int cmd_plot(const std::string& csv_path, PlotKind kind,
             double detrend_exponent, const std::string& out_path) {
  const CsvTable table = load_csv(csv_path);
  std::vector<PlotCurve> curves;
  curves.push_back(transform_for_plot(table, kind, detrend_exponent, "data"));
  if (table.has_column("asym_total") &&
      (kind == PlotKind::linear || kind == PlotKind::loglog_abs)) {
    CsvTable overlay = table;
    for (size_t i = 0; i < overlay.columns.size(); ++i)
      if (overlay.columns[i] == "prob") overlay.columns[i] = "prob_raw";
    for (size_t i = 0; i < overlay.columns.size(); ++i)
      if (overlay.columns[i] == "asym_total") overlay.columns[i] = "prob";
    PlotCurve oc = transform_for_plot(overlay, kind, detrend_exponent, "asym");
    oc.dashed = true;
    curves.push_back(std::move(oc));
  }
  const std::string svg = render_svg(curves, csv_path, axis_label_x(kind),
                                     axis_label_y(kind));
  write_text_file(out_path, svg);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace decaylab::cli
