#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace equiflow {

/// 17 significant digits, '.' separator, independent of the locale.
std::string format_double(double v);

/// Comment lines "# key=value", then the header row, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view key, std::string_view value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

/// Two whitespace-separated columns, one point per line.
void write_plot_data(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace equiflow
