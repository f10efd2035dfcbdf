#include "catsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "catsim/errors.hpp"
#include "catsim/kernels.hpp"

namespace catsim::fock {

DenseMatrix::DenseMatrix(std::size_t n) : n_(n), data_(n * n, cplx(0.0, 0.0)) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

double DenseMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n_; ++i) col += std::abs((*this)(i, j));
    best = std::max(best, col);
  }
  return best;
}

bool DenseMatrix::is_hermitian() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if ((*this)(i, j) != std::conj((*this)(j, i))) return false;
  return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("matrix dimensions differ");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator*(cplx s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimensions differ");
  DenseMatrix c(a.dim());
  kernels::matmul(a.data(), b.data(), c.data(), a.dim());
  return c;
}

DenseMatrix multiply_serial(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimensions differ");
  DenseMatrix c(a.dim());
  kernels::serial::matmul(a.data(), b.data(), c.data(), a.dim());
  return c;
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

FockVector operator*(const DenseMatrix& m, const FockVector& v) {
  if (m.dim() != v.dim()) throw std::invalid_argument("matrix and vector dimensions differ");
  FockVector out;
  out.amps.resize(v.dim());
  kernels::matvec(m.data(), v.amps.data(), out.amps.data(), v.dim());
  return out;
}

DenseMatrix annihilation(std::size_t n) {
  DenseMatrix a(n);
  for (std::size_t k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  return a;
}

DenseMatrix creation(std::size_t n) { return annihilation(n).adjoint(); }

DenseMatrix number(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return m;
}

std::size_t required_dim(cplx alpha) {
  return static_cast<std::size_t>(std::floor(4.0 * std::norm(alpha) + 25.0)) + 1;
}

FockVector coherent_to_fock(cplx alpha, std::size_t n) {
  const std::size_t need = required_dim(alpha);
  if (n < need || n > kMaxDim) {
    throw TruncationError("coherent state |alpha| = " + std::to_string(std::abs(alpha)) +
                              " needs dimension N >= " + std::to_string(need) + " (max " +
                              std::to_string(kMaxDim) + "), got " + std::to_string(n),
                          need);
  }
  FockVector v;
  v.amps.resize(n);
  v.amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t k = 1; k < n; ++k)
    v.amps[k] = v.amps[k - 1] * alpha / std::sqrt(static_cast<double>(k));
  return v;
}

FockVector branch_to_fock(const gaussian::CoherentBranch& b, std::size_t n) {
  FockVector v = coherent_to_fock(b.alpha, n);
  for (auto& a : v.amps) a *= b.weight;
  return v;
}

DenseMatrix expm(const DenseMatrix& a) {
  constexpr int kDegree = 18;
  const std::size_t n = a.dim();
  const double norm = a.norm1();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  DenseMatrix scaled = std::ldexp(1.0, -squarings) * a;

  // Horner: I + A(I + A/2(I + A/3(...)))
  const DenseMatrix id = DenseMatrix::identity(n);
  DenseMatrix p = id + cplx(1.0 / kDegree) * scaled;
  for (int k = kDegree - 1; k >= 1; --k) p = id + cplx(1.0 / k) * (scaled * p);
  for (int s = 0; s < squarings; ++s) p = p * p;
  return p;
}

namespace {

void check_tail(const FockVector& psi, const char* where) {
  const double tail = psi.tail_mass() / std::max(psi.norm() * psi.norm(), 1e-300);
  if (tail >= kTailTolerance) {
    throw TruncationError(std::string(where) + ": population of the last level " +
                              std::to_string(tail) + " exceeds " +
                              std::to_string(kTailTolerance) + "; increase N",
                          2 * psi.dim());
  }
}

void check_norm(double before, double after, const char* where) {
  if (std::abs(after - before) > kNormTolerance * before) {
    throw NormDriftError(std::string(where) + ": norm drifted from " + std::to_string(before) +
                         " to " + std::to_string(after) + "; increase N or the step count");
  }
}

}  // namespace

FockVector evolve_schrodinger(const FockVector& psi, const DenseMatrix& h, double t, int steps) {
  return evolve_piecewise(psi, {Segment{h, t, steps}});
}

FockVector evolve_piecewise(const FockVector& psi, const std::vector<Segment>& segments) {
  const double n0 = psi.norm();
  FockVector cur = psi;
  for (const auto& seg : segments) {
    if (seg.steps < 1) throw std::invalid_argument("segment needs at least one step");
    if (seg.h.dim() != psi.dim()) throw std::invalid_argument("Hamiltonian dimension differs");
    const DenseMatrix u = expm(cplx(0.0, -seg.duration / seg.steps) * seg.h);
    for (int s = 0; s < seg.steps; ++s) {
      cur = u * cur;
      check_norm(n0, cur.norm(), "evolve_schrodinger");
    }
  }
  check_tail(cur, "evolve_schrodinger");
  return cur;
}

namespace {

// Projections of a² and a†² onto the truncated space.
DenseMatrix lower_square(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t k = 0; k + 2 < n; ++k)
    m(k, k + 2) = std::sqrt(static_cast<double>((k + 1) * (k + 2)));
  return m;
}

}  // namespace

DenseMatrix gate_matrix(const Gate& gate, std::size_t n) {
  return std::visit(
      [n](const auto& g) -> DenseMatrix {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Displace>) {
          DenseMatrix gen = g.alpha * creation(n) + (-std::conj(g.alpha)) * annihilation(n);
          return expm(gen);
        } else if constexpr (std::is_same_v<T, Squeeze>) {
          const DenseMatrix a2 = lower_square(n);
          DenseMatrix gen = (0.5 * g.z) * a2.adjoint() + (-0.5 * std::conj(g.z)) * a2;
          return expm(gen);
        } else {
          DenseMatrix m(n);
          for (std::size_t k = 0; k < n; ++k)
            m(k, k) = std::polar(1.0, g.phi * static_cast<double>(k));
          return m;
        }
      },
      gate);
}

FockVector apply_gate(const FockVector& psi, const Gate& gate) {
  FockVector out = gate_matrix(gate, psi.dim()) * psi;
  check_tail(out, "apply_gate");
  return out;
}

cplx overlap(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimensions differ");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(a.amps[k]) * b.amps[k];
  return s;
}

double fidelity(const FockVector& a, const FockVector& b) { return std::norm(overlap(a, b)); }

double distance(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimensions differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += std::norm(a.amps[k] - b.amps[k]);
  return std::sqrt(s);
}

cplx expectation(const FockVector& psi, const DenseMatrix& op) {
  return overlap(psi, op * psi);
}

DenseMatrix displaced_oscillator_hamiltonian(std::size_t n, double omega, double g) {
  DenseMatrix h = cplx(omega) * number(n);
  h += cplx(g) * (annihilation(n) + creation(n));
  return h;
}

DenseMatrix quench_hamiltonian(std::size_t n, double omega1, double omega2, double g1) {
  // (a + a†)² = a² + a†² + 2n + 1 and (a† - a)² = a² + a†² - (2n + 1)
  const DenseMatrix a2 = lower_square(n);
  const DenseMatrix pair = a2 + a2.adjoint();
  DenseMatrix diag(n);
  for (std::size_t k = 0; k < n; ++k) diag(k, k) = 2.0 * static_cast<double>(k) + 1.0;
  const double cp = -omega1 / 4.0;
  const double cx = omega2 * omega2 / (4.0 * omega1);
  DenseMatrix h = cplx(cp + cx) * pair;
  h += cplx(cx - cp) * diag;
  h += cplx(g1) * (annihilation(n) + creation(n));
  return h;
}

FockVector quench_decomposition_state(cplx alpha, const gaussian::QuenchParams& q,
                                      std::size_t n) {
  FockVector v = coherent_to_fock(alpha, n);
  v = apply_gate(v, Rotate{q.phi});
  v = apply_gate(v, Displace{q.epsilon});
  v = apply_gate(v, Squeeze{q.z});
  return v;
}

}  // namespace catsim::fock
