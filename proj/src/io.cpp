#include "pscli/io.hpp"

#include <cmath>
#include <cstdio>

#include "pscli/errors.hpp"

namespace pscli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string> header)
    : out_(out), columns_(header.size()) {
  row(std::vector<std::string>(header));
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw InvalidArgument("csv: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void write_trajectory_csv(std::ostream& out, std::span<const double> error_norms) {
  CsvWriter csv(out, {"k", "error_norm", "log10_error"});
  for (std::size_t k = 0; k < error_norms.size(); ++k)
    csv.row({std::to_string(k), format_double(error_norms[k]), format_double(std::log10(error_norms[k]))});
}

}  // namespace pscli
