#include <ostream>

#include <fmt/format.h>

#include "catsim/csv.hpp"

namespace catsim::csv {

std::string num(double v) { return fmt::format("{:.17g}", v); }

void header(std::ostream& os, std::initializer_list<std::string_view> cols) {
  bool first = true;
  for (auto c : cols) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

void row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << num(v);
    first = false;
  }
  os << '\n';
}

}  // namespace catsim::csv
