#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace halloss::io {

/// Shortest decimal string that round-trips to the same double. All CSV
/// and report output goes through this so identical runs are byte-stable.
std::string dtos(double v);

/// Comma-separated, '.' decimal point, LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(std::span<const std::string> names);
  void row(std::span<const double> values);
  void raw_row(std::span<const std::string> cells);

 private:
  std::ostream& os_;
};

}  // namespace halloss::io
