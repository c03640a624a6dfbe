#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liesde {

/// A CSV result file: '#'-prefixed metadata lines, a header row, data rows.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest round-trip, locale-independent decimal form ("inf"/"nan" for
/// non-finite values).
std::string format_double(double x);
double parse_double(const std::string& s);

void write_csv(std::ostream& out, const CsvTable& table);
/// Writes to `path`, or to stdout when `path` is empty or "-".
void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(std::istream& in);

}  // namespace liesde
