#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decaylab/amplitude.hpp"

namespace decaylab {

using NamedColumn = std::pair<std::string, std::vector<double>>;

/// Series CSV: `tau, re_amp, im_amp, prob` plus any joined columns, floats
/// written with 17 significant digits so identical inputs give identical
/// bytes. The provenance tag rides along as a comment line.
std::string series_to_csv(const SeriesResult& series,
                          const std::vector<NamedColumn>& extra = {});

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // column-major

  bool has_column(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable load_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace decaylab
