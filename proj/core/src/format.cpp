#include "halloss/format.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

namespace halloss::io {

std::string dtos(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void CsvWriter::header(std::span<const std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != 0) os_ << ',';
    os_ << names[i];
  }
  os_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) os_ << ',';
    os_ << dtos(values[i]);
  }
  os_ << '\n';
}

void CsvWriter::raw_row(std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

}  // namespace halloss::io
