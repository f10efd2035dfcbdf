#pragma once

// Dense complex linear-algebra kernels used by the number-basis oracle.
// Matrices are square, row-major, n x n. The default entry points are
// OpenMP-parallel over output rows; the serial namespace holds the reference
// implementations. Both accumulate every output element in the same order,
// so their results are bitwise identical.

#include <cstddef>

#include "catsim/numeric.hpp"

namespace catsim::kernels {

/// C = A B
void matmul(const cplx* A, const cplx* B, cplx* C, std::size_t n);

/// y = A x
void matvec(const cplx* A, const cplx* x, cplx* y, std::size_t n);

namespace serial {
void matmul(const cplx* A, const cplx* B, cplx* C, std::size_t n);
void matvec(const cplx* A, const cplx* x, cplx* y, std::size_t n);
}  // namespace serial

/// Number of threads OpenMP would use for a parallel region.
int max_threads();

}  // namespace catsim::kernels
