#pragma once

#include <complex>

namespace catsim {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

namespace numeric {

// Cancellation-free forms of the small-argument combinations that show up in
// the closed-form evolutions. At the parameters of interest (ωt ~ 1e-11)
// the naive expressions lose every significant digit.

/// 1 - cos(x)
double one_minus_cos(double x);

/// e^{ix} - 1
cplx expm1i(double x);

/// x - sin(x)
double x_minus_sin(double x);

/// sin(x) / x, with sinc(0) = 1
double sinc(double x);

/// 1 - sin(x) / x
double one_minus_sinc(double x);

/// Maps an angle into (-π, π].
double wrap_angle(double x);

/// Relative difference |a - b| / max(|a|, |b|, floor).
double rel_diff(double a, double b, double floor = 1e-300);

}  // namespace numeric
}  // namespace catsim
