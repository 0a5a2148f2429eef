#include "decaylab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace decaylab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, int line,
                    const std::string& field) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size())
      throw ParseError("trailing characters after number", line, field);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + value + "'", line, field);
  }
}

int parse_int(const std::string& value, int line, const std::string& field) {
  const double v = parse_double(value, line, field);
  if (v != std::floor(v))
    throw ParseError("expected an integer", line, field);
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

std::vector<double> GridSpec::build() const {
  if (points < 1) throw InvalidParameter("time grid needs at least one point");
  if (points == 1) return {start};
  if (!(start < stop)) throw InvalidParameter("time grid must be ascending");
  std::vector<double> grid(points);
  if (log_spacing) {
    if (!(start > 0.0))
      throw InvalidParameter("log-spaced grid needs a positive start");
    const double ratio = std::log(stop / start) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = start * std::exp(ratio * i);
    grid.back() = stop;
  } else {
    const double step = (stop - start) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = start + step * i;
    grid.back() = stop;
  }
  return grid;
}

void Scenario::validate() const {
  if (masses.empty() || masses.size() > 2)
    throw InvalidParameter("scenario needs 1 or 2 masses");
  for (const auto& m : masses) {
    if (m.family != "toy" && m.family != "tabulated")
      throw InvalidParameter("unknown MDD family '" + m.family + "'");
    if (!(m.alpha >= 0.0)) throw InvalidParameter("alpha must be >= 0");
    if (m.family == "toy" && !(m.xi0 > 0.0))
      throw InvalidParameter("xi0 must be positive");
  }
  if (masses.size() == 2) {
    if (!(w1 > 0.0 && w1 < 1.0 && w2 > 0.0 && w2 < 1.0))
      throw InvalidParameter("weights must lie in (0,1)");
    if (std::abs(w1 + w2 - 1.0) > 1e-12)
      throw InvalidParameter("weights must sum to 1");
  }
  if (momenta.empty()) throw InvalidParameter("scenario needs momenta");
  for (double p : momenta)
    if (!(p >= 0.0)) throw InvalidParameter("momenta must be nonnegative");
  grid.build();  // shares the grid validation
  quad.validate();
}

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  sc.masses.clear();
  sc.momenta.clear();
  MddDescriptor mass1, mass2;
  bool have_mass1 = false, have_mass2 = false;
  int mass_count = -1;

  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key", line);
    if (value.empty()) throw ParseError("missing value", line, key);
    if (seen.count(key))
      throw ParseError("duplicate key (first on line " +
                           std::to_string(seen[key]) + ")",
                       line, key);
    seen[key] = line;

    auto parse_knots = [&](MddDescriptor& m) {
      for (const std::string& pair : split(value, ',')) {
        std::istringstream ps(pair);
        double xi, om;
        if (!(ps >> xi >> om))
          throw ParseError("knots need 'xi omega0' pairs", line, key);
        std::string rest;
        if (ps >> rest) throw ParseError("malformed knot pair", line, key);
        m.knots.emplace_back(xi, om);
      }
    };

    if (key == "masses") {
      mass_count = parse_int(value, line, key);
      if (mass_count != 1 && mass_count != 2)
        throw ParseError("masses must be 1 or 2", line, key);
    } else if (key == "family1") {
      mass1.family = value;
      have_mass1 = true;
    } else if (key == "family2") {
      mass2.family = value;
      have_mass2 = true;
    } else if (key == "alpha1") {
      mass1.alpha = parse_double(value, line, key);
      have_mass1 = true;
    } else if (key == "alpha2") {
      mass2.alpha = parse_double(value, line, key);
      have_mass2 = true;
    } else if (key == "xi01") {
      mass1.xi0 = parse_double(value, line, key);
      have_mass1 = true;
    } else if (key == "xi02") {
      mass2.xi0 = parse_double(value, line, key);
      have_mass2 = true;
    } else if (key == "knots1") {
      parse_knots(mass1);
      have_mass1 = true;
    } else if (key == "knots2") {
      parse_knots(mass2);
      have_mass2 = true;
    } else if (key == "w1") {
      sc.w1 = parse_double(value, line, key);
    } else if (key == "w2") {
      sc.w2 = parse_double(value, line, key);
    } else if (key == "momenta") {
      for (const std::string& item : split(value, ','))
        sc.momenta.push_back(parse_double(item, line, key));
    } else if (key == "tau_start") {
      sc.grid.start = parse_double(value, line, key);
    } else if (key == "tau_stop") {
      sc.grid.stop = parse_double(value, line, key);
    } else if (key == "tau_points") {
      sc.grid.points = parse_int(value, line, key);
    } else if (key == "tau_spacing") {
      if (value == "linear")
        sc.grid.log_spacing = false;
      else if (value == "log")
        sc.grid.log_spacing = true;
      else
        throw ParseError("tau_spacing must be linear or log", line, key);
    } else if (key == "rel_tol") {
      sc.quad.rel_tol = parse_double(value, line, key);
    } else if (key == "abs_tol") {
      sc.quad.abs_tol = parse_double(value, line, key);
    } else if (key == "max_subdivisions") {
      sc.quad.max_subdivisions = parse_int(value, line, key);
    } else if (key == "csv") {
      sc.csv_path = value;
    } else if (key == "plot") {
      sc.plot_path = value;
    } else if (key == "report") {
      sc.report_path = value;
    } else {
      throw ParseError("unknown key", line, key);
    }
  }

  if (mass_count < 0) throw ParseError("missing 'masses' entry", line);
  if (have_mass1) sc.masses.push_back(mass1);
  if (mass_count == 2) {
    if (!have_mass2)
      throw ParseError("masses = 2 but no second mass given", line);
    sc.masses.push_back(mass2);
  } else if (have_mass2) {
    throw ParseError("masses = 1 but second mass given", line);
  }
  if (sc.momenta.empty()) sc.momenta.push_back(0.0);

  try {
    sc.validate();
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what(), line);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream os;
  os << "# decaylab scenario (all quantities in m_s = 1 units)\n";
  os << "masses = " << sc.masses.size() << "\n";
  for (size_t j = 0; j < sc.masses.size(); ++j) {
    const auto& m = sc.masses[j];
    const std::string idx = std::to_string(j + 1);
    os << "family" << idx << " = " << m.family << "\n";
    os << "alpha" << idx << " = " << fmt(m.alpha) << "\n";
    if (m.family == "toy") {
      os << "xi0" << idx << " = " << fmt(m.xi0) << "\n";
    } else {
      os << "knots" << idx << " = ";
      for (size_t i = 0; i < m.knots.size(); ++i) {
        if (i) os << ", ";
        os << fmt(m.knots[i].first) << " " << fmt(m.knots[i].second);
      }
      os << "\n";
    }
  }
  if (sc.masses.size() == 2) {
    os << "w1 = " << fmt(sc.w1) << "\n";
    os << "w2 = " << fmt(sc.w2) << "\n";
  }
  os << "momenta = ";
  for (size_t i = 0; i < sc.momenta.size(); ++i)
    os << (i ? ", " : "") << fmt(sc.momenta[i]);
  os << "\n";
  os << "tau_start = " << fmt(sc.grid.start) << "\n";
  os << "tau_stop = " << fmt(sc.grid.stop) << "\n";
  os << "tau_points = " << sc.grid.points << "\n";
  os << "tau_spacing = " << (sc.grid.log_spacing ? "log" : "linear") << "\n";
  os << "rel_tol = " << fmt(sc.quad.rel_tol) << "\n";
  os << "abs_tol = " << fmt(sc.quad.abs_tol) << "\n";
  os << "max_subdivisions = " << sc.quad.max_subdivisions << "\n";
  if (!sc.csv_path.empty()) os << "csv = " << sc.csv_path << "\n";
  if (!sc.plot_path.empty()) os << "plot = " << sc.plot_path << "\n";
  if (!sc.report_path.empty()) os << "report = " << sc.report_path << "\n";
  return os.str();
}

MddSpec build_mdd(const MddDescriptor& d, const QuadConfig& quad) {
  if (d.family == "toy") return make_toy_mdd({d.alpha, d.xi0});
  if (d.family == "tabulated")
    return normalize(make_tabulated_mdd(d.alpha, d.knots), quad);
  throw InvalidParameter("unknown MDD family '" + d.family + "'");
}

TwoMassState build_state(const Scenario& sc) {
  sc.validate();
  if (sc.masses.size() != 2)
    throw InvalidParameter("two-mass state requires a two-mass scenario");
  return {build_mdd(sc.masses[0], sc.quad), build_mdd(sc.masses[1], sc.quad),
          sc.w1, sc.w2};
}

TwoMassState build_state(const PresetCurve& c, const QuadConfig& quad) {
  MddDescriptor d1{"toy", c.alpha1, c.xi01, {}};
  MddDescriptor d2{"toy", c.alpha2, c.xi02, {}};
  return {build_mdd(d1, quad), build_mdd(d2, quad), 0.5, 0.5};
}

FigurePreset figure_preset(int number) {
  // Curve parameters mirror the presets used for the reference figures;
  // weights are always 1/2, 1/2 and the quadrature tolerance is pinned to
  // 1e-10 by the figure commands.
  FigurePreset f;
  f.number = number;
  switch (number) {
    case 1:
      f.curves = {{"a", 0, 2, 1, 2, 0},
                  {"b", 0, 2, 1, 2, 1},
                  {"c", 0, 2, 1, 2, 2},
                  {"d", 1, 2, 1, 2, 2}};
      f.grid = {0.0, 10.0, 801, false};
      f.plot = PlotKind::linear;
      break;
    case 2:
      f.curves = {{"a", 1, 2, 1, 1, 0},
                  {"b", 1, 2, 1, 1, 1},
                  {"c", 1, 2, 2, 2, 0},
                  {"d", 1, 2, 2, 2, 2}};
      f.grid = {0.0, 8.0, 801, false};
      f.plot = PlotKind::linear;
      break;
    case 3:
      f.curves = {{"a", 1, 2, 1, 2, 2},
                  {"b", 0, 2, 1, 2, 2},
                  {"c", 0, 2, 1, 2, 1},
                  {"d", 0, 2, 1, 2, 0}};
      f.grid = {0.0, 2.0, 801, false};
      f.plot = PlotKind::short_time_square;
      break;
    case 4:
      f.curves = {{"a", 1, 2, 2, 2, 2},
                  {"b", 1, 2, 2, 2, 0},
                  {"c", 1, 2, 1, 1, 1},
                  {"d", 1, 2, 1, 1, 0}};
      f.grid = {0.0, 2.0, 801, false};
      f.plot = PlotKind::short_time_square;
      break;
    case 5:
      f.curves = {{"a", 1, 2, 1, 2, 2},
                  {"b", 0, 2, 1, 2, 0},
                  {"c", 0, 2, 1, 2, 1},
                  {"d", 0, 2, 1, 2, 2}};
      f.grid = {10.0, 40.0, 1201, false};
      f.plot = PlotKind::linear;
      break;
    case 6:
      f.curves = {{"a", 0, 2, 1, 2, 2},
                  {"b", 0, 2, 1, 2, 1},
                  {"c", 0, 2, 1, 2, 0},
                  {"d", 1, 2, 1, 2, 2}};
      f.grid = {std::exp(-1.0), std::exp(5.0), 601, true};
      f.plot = PlotKind::loglog_abs;
      break;
    case 7:
      f.curves = {{"a", 1, 2, 2, 2, 2},
                  {"b", 1, 2, 2, 2, 0},
                  {"c", 1, 2, 1, 1, 1},
                  {"d", 1, 2, 1, 1, 0}};
      f.grid = {std::exp(-1.0), std::exp(3.0), 601, true};
      f.plot = PlotKind::loglog_abs;
      break;
    case 8:
      f.curves = {{"a", 1, 1, 1, 2, 0},
                  {"b", 1, 1, 1, 2, 1},
                  {"c", 1, 1, 1, 2, 2},
                  {"d", 2, 2, 1, 2, 0}};
      f.grid = {10.0, 50.0, 1601, false};
      f.plot = PlotKind::detrended;
      break;
    case 9:
      f.curves = {{"a", 1, 2, 1, 1, 1},
                  {"b", 1, 2, 2, 2, 2},
                  {"c", 1, 2, 1, 2, 1}};
      f.grid = {5.0, 35.0, 1201, false};
      f.plot = PlotKind::ratio;
      f.note =
          "source caption lists a fourth curve (d) with the same parameters "
          "as (c); the duplicate is carried once";
      break;
    default:
      throw InvalidParameter("figure preset number must be 1..9");
  }
  return f;
}

}  // namespace decaylab
