#pragma once

// Run output as CSV: '#'-prefixed metadata lines echoing the resolved
// configuration, a header `x,t=<time>,...`, then one row per point of the
// reconstruction grid. Numbers carry 17 significant digits, so reading the
// file back reproduces every value exactly.

#include <string>
#include <utility>
#include <vector>

#include "ifd/harness.hpp"

namespace ifd {

void emit_csv(const RunResult& result, const std::string& path);

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;  ///< '# key = value' lines
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  ///< columns[0] is x
};

CsvTable read_csv(const std::string& path);

}  // namespace ifd
