#include "catsim/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace catsim::numeric {

double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

cplx expm1i(double x) {
  // e^{ix} - 1 = 2i sin(x/2) e^{ix/2}
  const double s = std::sin(0.5 * x);
  return 2.0 * s * kI * std::polar(1.0, 0.5 * x);
}

double x_minus_sin(double x) {
  if (std::abs(x) < 0.1) {
    // x^3/6 - x^5/120 + x^7/5040 - x^9/362880
    const double x2 = x * x;
    return x * x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0)));
  }
  return x - std::sin(x);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double one_minus_sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0)));
  }
  return 1.0 - std::sin(x) / x;
}

double wrap_angle(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double rel_diff(double a, double b, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / scale;
}

}  // namespace catsim::numeric
