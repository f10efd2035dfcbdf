#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace catsim::csv {

/// 17 significant digits: every double round-trips through text.
std::string num(double v);

void header(std::ostream& os, std::initializer_list<std::string_view> cols);
void row(std::ostream& os, std::initializer_list<double> values);

}  // namespace catsim::csv
