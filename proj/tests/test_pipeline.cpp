#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "decaylab/checks.hpp"
#include "decaylab/commands.hpp"
#include "decaylab/csv.hpp"
#include "doctest.h"

using namespace decaylab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path = fs::temp_directory_path() /
           ("decaylab_test_" + std::to_string(rng()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
  static int counter;
};
int TempDir::counter = 0;

Scenario small_scenario(int masses) {
  Scenario sc;
  sc.masses = {{"toy", 0.0, 1.0, {}}};
  if (masses == 2) sc.masses.push_back({"toy", 2.0, 2.0, {}});
  sc.momenta = {0.0, 2.0};
  sc.grid = {0.0, 6.0, 31, false};
  return sc;
}

}  // namespace

TEST_CASE("probability command writes one deterministic CSV per momentum") {
  TempDir dir;
  const Scenario sc = small_scenario(2);
  CHECK(cli::cmd_probability(sc, dir.str()) == 0);

  const fs::path p0 = dir.path / "probability_p0.csv";
  const fs::path p2 = dir.path / "probability_p2.csv";
  REQUIRE(fs::exists(p0));
  REQUIRE(fs::exists(p2));

  const CsvTable table = load_csv(p0.string());
  CHECK(table.columns ==
        std::vector<std::string>{"tau", "re_amp", "im_amp", "prob"});
  CHECK(table.column("prob").front() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(table.column("tau").size() == 31);

  const std::string bytes_before = read_text_file(p0.string());
  CHECK(cli::cmd_probability(sc, dir.str()) == 0);
  CHECK(read_text_file(p0.string()) == bytes_before);
}

TEST_CASE("scenario-declared output names and plot are honored") {
  TempDir dir;
  Scenario sc = small_scenario(2);
  sc.momenta = {0.0, 1.0};
  sc.csv_path = "sweep.csv";
  sc.plot_path = "sweep.svg";
  CHECK(cli::cmd_probability(sc, dir.str()) == 0);
  CHECK(fs::exists(dir.path / "sweep_p0.csv"));
  CHECK(fs::exists(dir.path / "sweep_p1.csv"));
  CHECK(fs::exists(dir.path / "sweep.svg"));
  const std::string svg = read_text_file((dir.path / "sweep.svg").string());
  CHECK(svg.find("p=1") != std::string::npos);

  sc.report_path = "model.txt";
  CHECK(cli::cmd_asymptote(sc, dir.str()) == 0);
  CHECK(fs::exists(dir.path / "model_p0.report.txt"));
}

TEST_CASE("tabulated scenario runs through the probability command") {
  TempDir dir;
  const std::string text =
      "masses = 1\n"
      "family1 = tabulated\n"
      "alpha1 = 0.5\n"
      "knots1 = 1.0 0.8, 1.5 0.55, 2.0 0.3, 3.0 0.1, 4.5 0.01, 6.0 0.0001\n"
      "momenta = 1\n"
      "tau_start = 0\n"
      "tau_stop = 4\n"
      "tau_points = 17\n";
  const Scenario sc = parse_scenario(text);
  CHECK(cli::cmd_probability(sc, dir.str()) == 0);
  const CsvTable table =
      load_csv((dir.path / "probability_p1.csv").string());
  CHECK(table.column("prob").front() == doctest::Approx(1.0).epsilon(1e-8));
  for (double pr : table.column("prob")) {
    CHECK(pr >= 0.0);
    CHECK(pr <= 1.0 + 1e-8);
  }
}

TEST_CASE("single-mass scenario passes the series through unchanged") {
  TempDir dir;
  Scenario sc = small_scenario(1);
  sc.momenta = {1.0};
  CHECK(cli::cmd_amplitude(sc, dir.str()) == 0);
  const std::string emitted =
      read_text_file((dir.path / "amplitude_p1.csv").string());

  const SeriesResult direct =
      series(build_mdd(sc.masses[0], sc.quad), 1.0, sc.grid.build(), sc.quad);
  CHECK(emitted == series_to_csv(direct));
}

TEST_CASE("asymptote command reports the dilated period and overlays") {
  TempDir dir;
  Scenario sc = small_scenario(2);
  sc.masses = {{"toy", 1.0, 1.0, {}}, {"toy", 1.0, 2.0, {}}};  // fig-8 family
  sc.momenta = {2.0};
  sc.grid = {10.0, 50.0, 101, false};
  CHECK(cli::cmd_asymptote(sc, dir.str()) == 0);

  const std::string report =
      read_text_file((dir.path / "asymptote_p2.report.txt").string());
  CHECK(report.find("period = 10.607053738238") != std::string::npos);
  CHECK(report.find("regime = damped-oscillation") != std::string::npos);
  CHECK(report.find("T_p_over_T0 = ") != std::string::npos);
  CHECK(report.find("ultra.") != std::string::npos);  // p > 0 includes it

  const CsvTable table =
      load_csv((dir.path / "asymptote_p2.csv").string());
  CHECK(table.has_column("asym_pl"));
  CHECK(table.has_column("asym_osc"));
  CHECK(table.has_column("asym_total"));
  // overlay approximates the data at the window's far end
  const auto& tau = table.column("tau");
  const auto& prob = table.column("prob");
  const auto& asym = table.column("asym_total");
  const size_t last = tau.size() - 1;
  CHECK(std::abs(asym[last] - prob[last]) / prob[last] < 0.2);
}

TEST_CASE("classify command names the regime") {
  TempDir dir;
  Scenario sc = small_scenario(2);
  CHECK(cli::cmd_classify(sc, dir.str()) == 0);
  const std::string text = read_text_file((dir.path / "classify.txt").string());
  CHECK(text.find("p=0 regime=power-law-distinct-alpha") != std::string::npos);
  CHECK(text.find("p=2 regime=power-law-distinct-alpha") != std::string::npos);
}

TEST_CASE("verify command runs the identity bundle") {
  TempDir dir;
  QuadConfig cfg;
  CHECK(cli::cmd_verify("identity", cfg, dir.str()) == 0);
  const std::string report =
      read_text_file((dir.path / "verify_identity.report.txt").string());
  CHECK(report.find("verdict = pass") != std::string::npos);
  CHECK_THROWS_AS(cli::cmd_verify("bogus", cfg, dir.str()), InvalidParameter);
}

TEST_CASE("figure command emits CSVs, report and SVG") {
  TempDir dir;
  CHECK(cli::cmd_figure(3, dir.str()) == 0);
  for (const char* name :
       {"fig3_a.csv", "fig3_b.csv", "fig3_c.csv", "fig3_d.csv", "fig3.svg",
        "fig3.report.txt"})
    CHECK(fs::exists(dir.path / name));
  const std::string svg = read_text_file((dir.path / "fig3.svg").string());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("(m_s t)^2") != std::string::npos);
}

TEST_CASE("plot command transforms CSVs and validates columns") {
  TempDir dir;
  Scenario sc = small_scenario(2);
  sc.momenta = {0.0};
  CHECK(cli::cmd_probability(sc, dir.str()) == 0);
  const std::string csv = (dir.path / "probability_p0.csv").string();
  const std::string svg = (dir.path / "out.svg").string();

  CHECK(cli::cmd_plot(csv, PlotKind::linear, 0.0, svg) == 0);
  CHECK(read_text_file(svg).rfind("<svg", 0) == 0);

  // ratio transform needs a ratio column
  CHECK_THROWS_AS(cli::cmd_plot(csv, PlotKind::ratio, 0.0, svg),
                  UnknownColumn);

  // CSV without data rows is rejected
  const std::string empty_csv = (dir.path / "empty.csv").string();
  write_text_file(empty_csv, "tau,prob\n");
  CHECK_THROWS_AS(cli::cmd_plot(empty_csv, PlotKind::linear, 0.0, svg),
                  ParseError);
}

TEST_CASE("scenario validation errors surface as input errors") {
  TempDir dir;
  Scenario sc = small_scenario(2);
  sc.grid.points = 0;
  CHECK_THROWS_AS(cli::cmd_probability(sc, dir.str()), InvalidParameter);

  Scenario single = small_scenario(1);
  CHECK_THROWS_AS(cli::cmd_asymptote(single, dir.str()), InvalidParameter);
  CHECK_THROWS_AS(cli::cmd_classify(single, dir.str()), InvalidParameter);
}

TEST_CASE("period command verdicts against the predicted period") {
  TempDir dir;
  Scenario sc;
  sc.masses = {{"toy", 1.0, 1.0, {}}, {"toy", 1.0, 2.0, {}}};
  sc.momenta = {0.0};
  sc.grid = {15.0, 80.0, 1301, false};
  CHECK(cli::cmd_period(sc, dir.str(), 0.01) == 0);
  const std::string report =
      read_text_file((dir.path / "period.report.txt").string());
  CHECK(report.find("check.period.p0.verdict = pass") != std::string::npos);

  const CsvTable joined = load_csv((dir.path / "period_p0.csv").string());
  CHECK(joined.has_column("detrended"));
  CHECK(joined.has_column("envelope"));
  const auto& det = joined.column("detrended");
  const auto& env = joined.column("envelope");
  for (size_t i = det.size() / 2; i < det.size(); ++i)
    CHECK(det[i] <= env[i] * 1.1);
}

TEST_CASE("log-log figure carries dashed asymptote overlays") {
  TempDir dir;
  CHECK(cli::cmd_figure(7, dir.str()) == 0);
  const std::string svg = read_text_file((dir.path / "fig7.svg").string());
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("log(m_s t)") != std::string::npos);
  const CsvTable table = load_csv((dir.path / "fig7_d.csv").string());
  CHECK(table.has_column("asym_total"));
}

TEST_CASE("scaling-check settles for distinct exponents at the tail") {
  TempDir dir;
  Scenario sc;
  sc.masses = {{"toy", 1.0, 1.0, {}}, {"toy", 2.0, 1.0, {}}};
  sc.momenta = {1.0};
  sc.grid = {15.0, 35.0, 201, false};
  CHECK(cli::cmd_scaling_check(sc, dir.str(), 0.05) == 0);
  CHECK(fs::exists(dir.path / "scaling_p1.csv"));

  // equal exponents: inconclusive by design, nonzero exit
  Scenario lost = sc;
  lost.masses = {{"toy", 1.0, 1.0, {}}, {"toy", 1.0, 2.0, {}}};
  CHECK(cli::cmd_scaling_check(lost, dir.str(), 0.05) == 1);
}
