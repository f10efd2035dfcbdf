#include "catsim/kernels.hpp"

#include <omp.h>

namespace catsim::kernels {

namespace {

// Complex arithmetic is spelled out on the real and imaginary parts: the
// std::complex operator* goes through the C99 Annex G NaN-recovery path,
// which is several times slower and adds nothing here.
inline void row_times_matrix(const cplx* Arow, const cplx* B, cplx* Crow, std::size_t n) {
  auto* c = reinterpret_cast<double*>(Crow);
  for (std::size_t j = 0; j < 2 * n; ++j) c[j] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = Arow[k].real();
    const double ai = Arow[k].imag();
    if (ar == 0.0 && ai == 0.0) continue;
    const auto* b = reinterpret_cast<const double*>(B + k * n);
    for (std::size_t j = 0; j < n; ++j) {
      const double br = b[2 * j];
      const double bi = b[2 * j + 1];
      c[2 * j] += ar * br - ai * bi;
      c[2 * j + 1] += ar * bi + ai * br;
    }
  }
}

inline cplx row_dot(const cplx* Arow, const cplx* x, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = Arow[k].real();
    const double ai = Arow[k].imag();
    const double xr = x[k].real();
    const double xi = x[k].imag();
    re += ar * xr - ai * xi;
    im += ar * xi + ai * xr;
  }
  return {re, im};
}

}  // namespace

void matmul(const cplx* A, const cplx* B, cplx* C, std::size_t n) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t i = 0; i < rows; ++i) row_times_matrix(A + i * n, B, C + i * n, n);
}

void matvec(const cplx* A, const cplx* x, cplx* y, std::size_t n) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 128)
  for (std::ptrdiff_t i = 0; i < rows; ++i) y[i] = row_dot(A + i * n, x, n);
}

namespace serial {

void matmul(const cplx* A, const cplx* B, cplx* C, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) row_times_matrix(A + i * n, B, C + i * n, n);
}

void matvec(const cplx* A, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = row_dot(A + i * n, x, n);
}

}  // namespace serial

int max_threads() { return omp_get_max_threads(); }

}  // namespace catsim::kernels
