#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace limgreedy {

// Locale-independent, round-trippable enough for plotting; identical output
// for identical doubles on every platform with IEEE printf.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string format_optional(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string{};
}

// Writes rows of already-formatted cells. Cells never contain commas here,
// so no quoting is done.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), width_(header.size()) {
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::size_t width() const { return width_; }

 private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace limgreedy
