#pragma once

// Truncated number-basis simulator of a single bosonic mode. It is slow and
// brute force on purpose: every closed-form quantum result in the library is
// checked against it.

#include <cstddef>
#include <variant>
#include <vector>

#include "catsim/gaussian.hpp"
#include "catsim/numeric.hpp"

namespace catsim::fock {

inline constexpr std::size_t kMaxDim = 256;
inline constexpr double kNormTolerance = 1e-8;
inline constexpr double kTailTolerance = 1e-10;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n);

  static DenseMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const cplx* data() const { return data_.data(); }
  cplx* data() { return data_.data(); }

  DenseMatrix adjoint() const;
  double norm1() const;  // max column sum
  bool is_hermitian() const;  // exact comparison

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator*=(cplx s);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(cplx s, DenseMatrix a);
/// OpenMP-parallel product.
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
/// Same product through the serial kernel.
DenseMatrix multiply_serial(const DenseMatrix& a, const DenseMatrix& b);

struct FockVector {
  std::vector<cplx> amps;

  std::size_t dim() const { return amps.size(); }
  double norm() const;
  double tail_mass() const { return amps.empty() ? 0.0 : std::norm(amps.back()); }
};

FockVector operator*(const DenseMatrix& m, const FockVector& v);

DenseMatrix annihilation(std::size_t n);
DenseMatrix creation(std::size_t n);
DenseMatrix number(std::size_t n);

/// Smallest dimension accepted for a coherent state of amplitude α.
std::size_t required_dim(cplx alpha);

/// e^{-|α|²/2} αⁿ/√n!. Throws TruncationError if n <= 4|α|² + 25 or
/// n > kMaxDim.
FockVector coherent_to_fock(cplx alpha, std::size_t n);

/// weight · |α>
FockVector branch_to_fock(const gaussian::CoherentBranch& b, std::size_t n);

/// e^A by scaling and squaring of a degree-18 Taylor polynomial.
DenseMatrix expm(const DenseMatrix& a);

/// e^{-iHt} applied in `steps` equal slices (H in rad/s, ħ = 1). Throws
/// NormDriftError if the norm moves by more than kNormTolerance and
/// TruncationError if the final state leaks into the last level.
FockVector evolve_schrodinger(const FockVector& psi, const DenseMatrix& h, double t,
                              int steps = 1);

struct Segment {
  DenseMatrix h;
  double duration = 0.0;
  int steps = 1;
};

/// Piecewise-constant Hamiltonian, one exponential per segment slice.
FockVector evolve_piecewise(const FockVector& psi, const std::vector<Segment>& segments);

struct Displace {
  cplx alpha;
};
struct Squeeze {
  cplx z;  // S(z) = exp(½(z a†² - z* a²))
};
struct Rotate {
  double phi;  // R(φ) = exp(iφ a†a)
};
using Gate = std::variant<Displace, Squeeze, Rotate>;

DenseMatrix gate_matrix(const Gate& gate, std::size_t n);

/// Throws TruncationError when the result leaks into the last level.
FockVector apply_gate(const FockVector& psi, const Gate& gate);

/// <a|b>
cplx overlap(const FockVector& a, const FockVector& b);
/// |<a|b>|²
double fidelity(const FockVector& a, const FockVector& b);
double distance(const FockVector& a, const FockVector& b);
cplx expectation(const FockVector& psi, const DenseMatrix& op);

/// ω a†a + g(a + a†)
DenseMatrix displaced_oscillator_hamiltonian(std::size_t n, double omega, double g);

/// Sudden-quench Hamiltonian written in the mode of frequency ω₁:
/// -(ω₁/4)(a† - a)² + (ω₂²/4ω₁)(a + a†)² + g₁(a + a†). The squares are the
/// projections of the exact operators, so the matrix is exactly Hermitian.
DenseMatrix quench_hamiltonian(std::size_t n, double omega1, double omega2, double g1);

/// S(z)D(ε)R(φ)|α> assembled from the closed-form quench parameters.
FockVector quench_decomposition_state(cplx alpha, const gaussian::QuenchParams& q,
                                      std::size_t n);

}  // namespace catsim::fock
