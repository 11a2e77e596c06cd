#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "pscli/scli.hpp"

namespace pscli {

/// Round-trip formatting: 17 significant digits, '.' decimal point.
std::string format_double(double v);

/// Minimal CSV emitter: header once, then rows of preformatted cells.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string> header);

  void row(const std::vector<std::string>& cells);
  void row(std::initializer_list<double> values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Columns k,error_norm,log10_error.
void write_trajectory_csv(std::ostream& out, std::span<const double> error_norms);

}  // namespace pscli
