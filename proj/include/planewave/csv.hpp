#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace planewave {

/// Locale-independent %.17g formatting (round-trip exact).
std::string format_double(double v);

/// Comma-separated output with a mandatory header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);
  CsvWriter(std::ostream& out, std::span<const std::string> header);

  void row(std::initializer_list<double> values);
  void row(std::span<const double> values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace planewave
