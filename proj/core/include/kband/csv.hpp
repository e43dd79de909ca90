#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "kband/errors.hpp"

namespace kband {

/// Deterministic number formatting for CSV bodies (%.12g; no locale).
std::string csv_num(double v);
std::string csv_num(int v);

/// Minimal CSV writer: one header, rows of preformatted cells. Throws
/// io_error on failure.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& header);
  void row(const std::vector<std::string>& cells);
  ~CsvWriter();

private:
  std::ofstream out_;
  std::string path_;
};

} // namespace kband
