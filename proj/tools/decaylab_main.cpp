#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "decaylab/commands.hpp"
#include "decaylab/errors.hpp"

namespace {

using namespace decaylab;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<double> tol;
  std::vector<double> momenta;
};

Scenario load(const CommonArgs& args) {
  if (args.scenario_path.empty())
    throw InvalidParameter("--scenario <path> is required");
  Scenario sc = load_scenario(args.scenario_path);
  if (args.tol) sc.quad.rel_tol = *args.tol;
  if (!args.momenta.empty()) sc.momenta = args.momenta;
  sc.validate();
  return sc;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_scenario = true) {
  auto* opt = cmd->add_option("--scenario", args.scenario_path,
                              "scenario file (key = value text)");
  if (needs_scenario) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--tol", args.tol, "relative quadrature tolerance override");
  cmd->add_option("--momenta", args.momenta,
                  "momenta override, m_s units")
      ->delimiter(',');
}

PlotKind parse_kind(const std::string& kind) {
  if (kind == "linear") return PlotKind::linear;
  if (kind == "short-time") return PlotKind::short_time_square;
  if (kind == "loglog") return PlotKind::loglog_abs;
  if (kind == "detrended") return PlotKind::detrended;
  if (kind == "ratio") return PlotKind::ratio;
  throw InvalidParameter("unknown plot kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "survival amplitudes and decay laws of moving one- and two-mass "
      "unstable states (all quantities in m_s = 1 units)"};
  app.require_subcommand(1);

  CommonArgs amp_args, prob_args, asym_args, cls_args, per_args, scal_args;
  CommonArgs ver_args, fig_args;

  auto* amp = app.add_subcommand("amplitude", "survival amplitude sweep -> CSV");
  add_common(amp, amp_args);
  auto* prob =
      app.add_subcommand("probability", "survival probability sweep -> CSV");
  add_common(prob, prob_args);
  auto* asym = app.add_subcommand(
      "asymptote", "long/short-time model report and overlay columns");
  add_common(asym, asym_args);
  auto* cls = app.add_subcommand("classify", "long-time regime per momentum");
  add_common(cls, cls_args);

  std::string verify_check;
  auto* ver = app.add_subcommand("verify", "run a named verification bundle");
  ver->add_option("check", verify_check,
                  "short-time | slope | period | scaling | identity")
      ->required();
  add_common(ver, ver_args, false);

  double period_tol = 0.01;
  auto* per = app.add_subcommand("period", "extracted vs predicted period");
  add_common(per, per_args);
  per->add_option("--period-tol", period_tol, "relative tolerance");

  double scaling_tol = 0.05;
  auto* scal =
      app.add_subcommand("scaling-check", "dilation ratio P_p/P_0(t/chi)");
  add_common(scal, scal_args);
  scal->add_option("--ratio-tol", scaling_tol, "settle tolerance");

  int figure_number = 1;
  auto* fig = app.add_subcommand("figure", "run a built-in figure preset");
  fig->add_option("number", figure_number, "1..9")->required();
  add_common(fig, fig_args, false);

  std::string plot_csv, plot_kind = "linear", plot_out = "plot.svg";
  double plot_detrend = 0.0;
  auto* plt = app.add_subcommand("plot", "CSV -> SVG");
  plt->add_option("csv", plot_csv, "input CSV")->required();
  plt->add_option("--kind", plot_kind,
                  "linear | short-time | loglog | detrended | ratio");
  plt->add_option("--detrend", plot_detrend, "exponent for detrended plots");
  plt->add_option("--output", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints message or help text
    return code == 0 ? 0 : 2;
  }

  try {
    if (*amp) return cli::cmd_amplitude(load(amp_args), amp_args.out_dir);
    if (*prob) return cli::cmd_probability(load(prob_args), prob_args.out_dir);
    if (*asym) return cli::cmd_asymptote(load(asym_args), asym_args.out_dir);
    if (*cls) return cli::cmd_classify(load(cls_args), cls_args.out_dir);
    if (*ver) {
      QuadConfig cfg;
      if (ver_args.tol) cfg.rel_tol = *ver_args.tol;
      return cli::cmd_verify(verify_check, cfg, ver_args.out_dir);
    }
    if (*per)
      return cli::cmd_period(load(per_args), per_args.out_dir, period_tol);
    if (*scal)
      return cli::cmd_scaling_check(load(scal_args), scal_args.out_dir,
                                    scaling_tol);
    if (*fig) return cli::cmd_figure(figure_number, fig_args.out_dir);
    if (*plt)
      return cli::cmd_plot(plot_csv, parse_kind(plot_kind), plot_detrend,
                           plot_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
