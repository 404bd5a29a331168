#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "golden/fock.hpp"
#include "golden/golden_number.hpp"

namespace golden {

/**
 * Operator on the 2d-dimensional fermion (x) boson space, stored as four
 * d x d blocks. The fermion index is the outer one, so a column vector reads
 * (fermion-vacuum component, one-fermion component).
 *
 * depth counts the maximum number of ladder factors folded into any block;
 * identities are asserted on the leading dim - depth rows of each block.
 */
struct SuperOperator {
  unsigned k = 0;
  int dim = 0;  // boson-space dimension d; the full matrix is 2d x 2d
  int depth = 0;
  Mat ul, ur, ll, lr;

  int safe_rows() const { return std::max(0, dim - depth); }

  Mat full() const {
    Mat m(2 * dim, 2 * dim);
    m.topLeftCorner(dim, dim) = ul;
    m.topRightCorner(dim, dim) = ur;
    m.bottomLeftCorner(dim, dim) = ll;
    m.bottomRightCorner(dim, dim) = lr;
    return m;
  }

  SuperOperator adjoint() const {
    return {k, dim, depth, ul.adjoint(), ll.adjoint(), ur.adjoint(), lr.adjoint()};
  }

  void require_same_space(const SuperOperator& o) const {
    if (dim != o.dim)
      throw std::invalid_argument("SuperOperator: cutoff mismatch " + std::to_string(dim) +
                                  " vs " + std::to_string(o.dim));
  }

  SuperOperator operator*(const SuperOperator& o) const {
    require_same_space(o);
    return {k,
            dim,
            depth + o.depth,
            ul * o.ul + ur * o.ll,
            ul * o.ur + ur * o.lr,
            ll * o.ul + lr * o.ll,
            ll * o.ur + lr * o.lr};
  }
  SuperOperator operator+(const SuperOperator& o) const {
    require_same_space(o);
    return {k, dim, std::max(depth, o.depth), ul + o.ul, ur + o.ur, ll + o.ll, lr + o.lr};
  }
  SuperOperator operator-(const SuperOperator& o) const {
    require_same_space(o);
    return {k, dim, std::max(depth, o.depth), ul - o.ul, ur - o.ur, ll - o.ll, lr - o.lr};
  }
  SuperOperator operator*(Complex s) const { return {k, dim, depth, s * ul, s * ur, s * ll, s * lr}; }

  /// Max absolute entry across all four blocks, restricted to safe rows.
  double max_abs_safe() const {
    const int r = safe_rows();
    double m = 0.0;
    for (const Mat* b : {&ul, &ur, &ll, &lr}) m = std::max(m, max_abs_rows(*b, r));
    return m;
  }
};

inline SuperOperator anticommutator(const SuperOperator& a, const SuperOperator& b) {
  return a * b + b * a;
}
inline SuperOperator commutator(const SuperOperator& a, const SuperOperator& b) {
  return a * b - b * a;
}

/**
 * Normalized vector of the fermion (x) boson space, held as the two boson
 * components (psi0, psi1).
 */
struct SuperState {
  unsigned k = 0;
  Vec psi0, psi1;

  int dim() const { return static_cast<int>(psi0.size()); }
  double norm_sq() const { return psi0.squaredNorm() + psi1.squaredNorm(); }

  SuperState& normalize() {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw std::invalid_argument("SuperState: cannot normalize zero vector");
    psi0 /= n;
    psi1 /= n;
    return *this;
  }

  bool is_normalized(double tol = 1e-12) const { return std::abs(norm_sq() - 1.0) < tol; }
};

inline SuperState apply(const SuperOperator& op, const SuperState& s) {
  return {s.k, op.ul * s.psi0 + op.ur * s.psi1, op.ll * s.psi0 + op.lr * s.psi1};
}

inline Complex super_dot(const SuperState& a, const SuperState& b) {
  return a.psi0.dot(b.psi0) + a.psi1.dot(b.psi1);
}

/// Point on the super-Bloch sphere, theta in [0, pi], phi in [0, 2*pi).
struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;

  BlochPoint(double theta_, double phi_) : theta(theta_), phi(phi_) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw std::out_of_range("BlochPoint: theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
      throw std::out_of_range("BlochPoint: phi must lie in [0, 2*pi)");
  }
};

/**
 * Supercharge pair: Q has b_k in the lower-left block and zeros elsewhere,
 * Q^dag is its adjoint. Both are nilpotent by block structure, exactly so
 * even at finite cutoff.
 */
inline std::pair<SuperOperator, SuperOperator> supercharges(unsigned k, int d) {
  auto [b, bdag] = ladder_ops(k, d);
  const Mat z = Mat::Zero(d, d);
  SuperOperator q{k, d, 1, z, z, b.mat, z};
  return {q, q.adjoint()};
}

/**
 * Super Hamiltonian hbar_omega/2 * blockdiag(F_N^(k), F_{N+1}^(k)), built
 * from exact tables so all 2d rows are valid (depth 0). The anticommutator
 * route {Q, Q^dag} reproduces it on safe rows only.
 */
inline SuperOperator super_hamiltonian(unsigned k, int d, double hbar_omega = 1.0) {
  if (d < 2) throw std::invalid_argument("super_hamiltonian: d must be at least 2");
  auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d));
  Mat upper = Mat::Zero(d, d), lower = Mat::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    upper(n, n) = 0.5 * hbar_omega * fib[static_cast<std::size_t>(n)];
    lower(n, n) = 0.5 * hbar_omega * fib[static_cast<std::size_t>(n) + 1];
  }
  return {k, d, 0, upper, Mat::Zero(d, d), Mat::Zero(d, d), lower};
}

/// Super-number operator blockdiag(N, N + 1).
inline SuperOperator super_number_op(unsigned k, int d) {
  Mat upper = Mat::Zero(d, d), lower = Mat::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    upper(n, n) = n;
    lower(n, n) = n + 1;
  }
  return {k, d, 0, upper, Mat::Zero(d, d), Mat::Zero(d, d), lower};
}

/**
 * Super Fibonacci-divisor operator evaluated through the two-base quotient
 * (phi^(k nu) - phi'^(k nu)) / (phi^k - phi'^k) applied entrywise to the
 * diagonal super-number operator (eigenvalues nu = n and n + 1).
 */
inline SuperOperator super_fib_binet(unsigned k, int d) {
  if (d < 2) throw std::invalid_argument("super_fib_binet: d must be at least 2");
  Mat upper = Mat::Zero(d, d), lower = Mat::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    upper(n, n) = binet_real(k, static_cast<unsigned>(n));
    lower(n, n) = binet_real(k, static_cast<unsigned>(n) + 1);
  }
  return {k, d, 0, upper, Mat::Zero(d, d), Mat::Zero(d, d), lower};
}

/// Exact table form of the same operator, the oracle super_fib_binet is
/// checked against.
inline SuperOperator super_fib_table(unsigned k, int d) {
  return super_hamiltonian(k, d, 2.0);
}

/**
 * Partial trace over the fermion: blockdiag(X, Y) -> X + Y. Throws if the
 * off-diagonal blocks are not numerically zero.
 */
inline FockOperator partial_trace_fermion_op(const SuperOperator& h, double tol = 1e-12) {
  const double off = std::max(h.ur.cwiseAbs().maxCoeff(), h.ll.cwiseAbs().maxCoeff());
  if (off > tol)
    throw std::invalid_argument("partial_trace_fermion_op: input is not block-diagonal (max "
                                "off-block entry " +
                                std::to_string(off) + ")");
  return {h.k, h.dim, h.safe_rows(), h.ul + h.lr};
}

/**
 * Super number state with n super-particles at Bloch point (theta, phi):
 * cos(theta/2)|0>_f|n;k> + sin(theta/2)e^{i phi}|1>_f|n-1;k>.
 * The fermion-vacuum coefficient is kept real non-negative (global phase).
 */
inline SuperState super_number_state(int n, unsigned k, const BlochPoint& p, int d) {
  if (n < 1 || n > d - 1)
    throw std::out_of_range("super_number_state: need 1 <= n <= d-1, got n=" + std::to_string(n) +
                            " d=" + std::to_string(d));
  SuperState s{k, Vec::Zero(d), Vec::Zero(d)};
  s.psi0(n) = std::cos(p.theta / 2.0);
  s.psi1(n - 1) = std::sin(p.theta / 2.0) * std::exp(Complex(0.0, p.phi));
  return s;
}

/// Expectation of the super-number operator (fermions plus bosons).
inline double super_number_expectation(const SuperState& s) {
  double acc = 0.0;
  for (int n = 0; n < s.dim(); ++n) {
    acc += n * std::norm(s.psi0(n));
    acc += (n + 1) * std::norm(s.psi1(n));
  }
  return acc;
}

/**
 * Energy-ratio iteration lambda_{n+1} = L_k + (-1)^(k-1) / lambda_n,
 * converging to phi^k. Returns all iterates including the seed.
 */
inline std::vector<double> energy_ratio_iter(unsigned k, double lambda0, int steps) {
  if (lambda0 == 0.0) throw std::invalid_argument("energy_ratio_iter: lambda0 must be nonzero");
  const double lk = lucas(k).convert_to<double>();
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(lambda0);
  double lam = lambda0;
  for (int i = 0; i < steps; ++i) {
    if (lam == 0.0)
      throw std::domain_error("energy_ratio_iter: iterate hit zero at step " + std::to_string(i));
    lam = lk + sign / lam;
    out.push_back(lam);
  }
  return out;
}

}  // namespace golden
