#include "kband/csv.hpp"

#include <cstdio>

namespace kband {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_num(int v) { return std::to_string(v); }

CsvWriter::CsvWriter(const std::string& path, const std::string& header)
    : out_(path), path_(path) {
  if (!out_) throw io_error("cannot open for writing: " + path);
  out_ << header << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw io_error("write failure: " + path_);
}

CsvWriter::~CsvWriter() = default;

} // namespace kband
