#include "decaylab/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace decaylab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string series_to_csv(const SeriesResult& series,
                          const std::vector<NamedColumn>& extra) {
  for (const auto& [name, values] : extra)
    if (values.size() != series.tau.size())
      throw InvalidParameter("joined column '" + name + "' has wrong length");

  std::ostringstream os;
  if (!series.provenance.empty())
    os << "# provenance: " << series.provenance << "\n";
  os << "tau,re_amp,im_amp,prob";
  for (const auto& [name, values] : extra) os << "," << name;
  os << "\n";
  for (size_t i = 0; i < series.tau.size(); ++i) {
    os << fmt(series.tau[i]) << "," << fmt(series.amp[i].real()) << ","
       << fmt(series.amp[i].imag()) << "," << fmt(series.prob[i]);
    for (const auto& [name, values] : extra) os << "," << fmt(values[i]);
    os << "\n";
  }
  return os.str();
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& c : columns)
    if (c == name) return true;
  return false;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return data[i];
  throw UnknownColumn("no column '" + name + "' in CSV");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      table.columns = cells;
      table.data.assign(cells.size(), {});
      have_header = true;
      continue;
    }
    if (cells.size() != table.columns.size())
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " cells, header has " +
                           std::to_string(table.columns.size()),
                       line_no);
    for (size_t i = 0; i < cells.size(); ++i) {
      try {
        table.data[i].push_back(std::stod(cells[i]));
      } catch (const std::exception&) {
        throw ParseError("bad number '" + cells[i] + "'", line_no,
                         table.columns[i]);
      }
    }
  }
  if (!have_header || table.data.empty() || table.data[0].empty())
    throw ParseError("CSV has no data rows", line_no);
  return table;
}

CsvTable load_csv(const std::string& path) {
  return parse_csv(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace decaylab
