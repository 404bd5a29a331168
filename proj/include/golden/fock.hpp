#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "golden/golden_number.hpp"
#include "golden/qcalc.hpp"

namespace golden {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/**
 * Dense operator on the truncated d-dimensional Fock space of the level-k
 * oscillator.
 *
 * Truncation corrupts the top of the basis: a product of m ladder factors is
 * only trustworthy on the leading d - m rows. safe_rows carries that count;
 * composition shrinks it by the combined boundary depth of the factors.
 */
struct FockOperator {
  unsigned k = 0;
  int dim = 0;
  int safe_rows = 0;
  Mat mat;

  int depth() const { return dim - safe_rows; }

  FockOperator adjoint() const { return {k, dim, safe_rows, mat.adjoint()}; }

  void require_same_space(const FockOperator& o) const {
    if (dim != o.dim)
      throw std::invalid_argument("FockOperator: cutoff mismatch " + std::to_string(dim) +
                                  " vs " + std::to_string(o.dim));
  }

  FockOperator operator*(const FockOperator& o) const {
    require_same_space(o);
    return {k, dim, std::max(0, dim - (depth() + o.depth())), mat * o.mat};
  }
  FockOperator operator+(const FockOperator& o) const {
    require_same_space(o);
    return {k, dim, std::min(safe_rows, o.safe_rows), mat + o.mat};
  }
  FockOperator operator-(const FockOperator& o) const {
    require_same_space(o);
    return {k, dim, std::min(safe_rows, o.safe_rows), mat - o.mat};
  }
  FockOperator operator*(Complex s) const { return {k, dim, safe_rows, s * mat}; }
};

/// Max absolute entry over the leading `rows` rows of m.
inline double max_abs_rows(const Mat& m, int rows) {
  if (rows <= 0) return 0.0;
  return m.topRows(rows).cwiseAbs().maxCoeff();
}

/// Diagonal operator from explicit entries; exact on all rows.
inline FockOperator diagonal_op(unsigned k, const std::vector<double>& entries) {
  const int d = static_cast<int>(entries.size());
  FockOperator op{k, d, d, Mat::Zero(d, d)};
  for (int n = 0; n < d; ++n) op.mat(n, n) = entries[n];
  return op;
}

/**
 * Ladder pair (b_k, b_k^dag) at cutoff d:
 * b_k|n> = sqrt(F_n^(k))|n-1>, b_k^dag|n> = sqrt(F_{n+1}^(k))|n+1>.
 */
inline std::pair<FockOperator, FockOperator> ladder_ops(unsigned k, int d) {
  if (d < 2) throw std::invalid_argument("ladder_ops: cutoff d must be at least 2");
  auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d));
  FockOperator b{k, d, d - 1, Mat::Zero(d, d)};
  for (int n = 1; n < d; ++n) b.mat(n - 1, n) = std::sqrt(fib[static_cast<std::size_t>(n)]);
  return {b, b.adjoint()};
}

/// Boson number operator diag(0, 1, ..., d-1).
inline FockOperator number_op(unsigned k, int d) {
  std::vector<double> e(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) e[static_cast<std::size_t>(n)] = n;
  return diagonal_op(k, e);
}

/// Fibonacci-divisor number operator diag(F_0^(k), ..., F_{d-1}^(k)).
inline FockOperator fib_divisor_op(unsigned k, int d) {
  if (d < 1) throw std::invalid_argument("fib_divisor_op: d must be at least 1");
  return diagonal_op(k, detail::fib_divisor_doubles(k, static_cast<std::size_t>(d) - 1));
}

/// Shifted divisor operator diag(F_1^(k), ..., F_d^(k)), i.e. F at N+1.
inline FockOperator fib_divisor_op_shifted(unsigned k, int d) {
  auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d));
  return diagonal_op(k, std::vector<double>(fib.begin() + 1, fib.end()));
}

/**
 * Bosonic Hamiltonian diag(hbar_omega/2 * (F_n^(k) + F_{n+1}^(k))), built
 * from exact tables so every row is valid.
 */
inline FockOperator hamiltonian_boson(unsigned k, int d, double hbar_omega = 1.0) {
  if (d < 2) throw std::invalid_argument("hamiltonian_boson: d must be at least 2");
  auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d));
  std::vector<double> e(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n)
    e[static_cast<std::size_t>(n)] =
        0.5 * hbar_omega * (fib[static_cast<std::size_t>(n)] + fib[static_cast<std::size_t>(n) + 1]);
  return diagonal_op(k, e);
}

/**
 * Difference Hamiltonian diag(hbar_omega/2 * (F_{n+1}^(k) - F_n^(k))),
 * defined for odd k only. It acts on the boson Fock space; no anticommuting
 * modes are modeled.
 */
inline FockOperator hamiltonian_fermionic(unsigned k, int d, double hbar_omega = 1.0) {
  if (k % 2 == 0)
    throw std::invalid_argument("hamiltonian_fermionic: level k must be odd, got " +
                                std::to_string(k));
  if (d < 2) throw std::invalid_argument("hamiltonian_fermionic: d must be at least 2");
  auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d));
  std::vector<double> e(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n)
    e[static_cast<std::size_t>(n)] =
        0.5 * hbar_omega * (fib[static_cast<std::size_t>(n) + 1] - fib[static_cast<std::size_t>(n)]);
  return diagonal_op(k, e);
}

/**
 * Closed-form bosonic level E_n^(k) in hyperbolic form, exact for all
 * integer k (and continuous in k through the even-parity expression, which
 * recovers hbar_omega*(n + 1/2) as k -> 0).
 *
 * With L = ln(phi), A = (n + 1/2) k L:
 *   even k:  sinh(A) / sinh(kL/2)
 *   odd k, even n: (phi^{k/2} sinh A + phi^{-k/2} cosh A) / cosh(kL)
 *   odd k, odd n:  (phi^{k/2} cosh A + phi^{-k/2} sinh A) / cosh(kL)
 * all times hbar_omega/2.
 */
inline double spectrum_closed_form(double k, unsigned n, double hbar_omega = 1.0) {
  const double L = std::log(phi_real());
  if (k == 0.0) return hbar_omega * (static_cast<double>(n) + 0.5);
  const double A = (static_cast<double>(n) + 0.5) * k * L;
  const long long kr = std::llround(k);
  const bool integer_k = std::abs(k - static_cast<double>(kr)) < 1e-9;
  if (integer_k && kr % 2 != 0) {
    const double w = std::exp(0.5 * k * L);  // phi^(k/2)
    const double s = std::sinh(A), c = std::cosh(A);
    const double num = (n % 2 == 0) ? (w * s + c / w) : (w * c + s / w);
    return 0.5 * hbar_omega * num / std::cosh(k * L);
  }
  return 0.5 * hbar_omega * std::sinh(A) / std::sinh(0.5 * k * L);
}

/**
 * Large-n hyperbolic approximation of the level: identical to the closed
 * form for even k; for odd k it keeps only the dominant term, with error
 * phi^{-k(n+1)} / cosh(k ln phi) in units of hbar_omega/2.
 */
inline double spectrum_closed_form_asymptotic(unsigned k, unsigned n, double hbar_omega = 1.0) {
  const double L = std::log(phi_real());
  if (k == 0) return hbar_omega * (static_cast<double>(n) + 0.5);
  const double A = (static_cast<double>(n) + 0.5) * k * L;
  if (k % 2 != 0) {
    const double factor = 2.0 * std::cosh(0.5 * k * L) / std::cosh(k * L);
    return 0.5 * hbar_omega * factor * (n % 2 == 0 ? std::sinh(A) : std::cosh(A));
  }
  return 0.5 * hbar_omega * std::sinh(A) / std::sinh(0.5 * k * L);
}

/**
 * Residual of the nonlinear ladder map b_k = b * sqrt(F_N^(k) / N) at cutoff
 * d: max entry deviation over safe rows, relative to the largest ladder
 * element. The 0/0 entry at n = 0 multiplies the zero column of b and is
 * fixed to 1 by convention; it is never observable.
 */
inline double nonlinear_map_check(unsigned k, int d) {
  if (d < 3) throw std::invalid_argument("nonlinear_map_check: d must be at least 3");
  auto [bk, bkdag] = ladder_ops(k, d);
  auto [b0, b0dag] = ladder_ops(0, d);
  auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d) - 1);
  std::vector<double> g(static_cast<std::size_t>(d));
  g[0] = 1.0;
  for (int n = 1; n < d; ++n)
    g[static_cast<std::size_t>(n)] = std::sqrt(fib[static_cast<std::size_t>(n)] / n);
  FockOperator mapped = b0 * diagonal_op(k, g);
  const int rows = std::min(bk.safe_rows, mapped.safe_rows);
  const double scale = std::max(1.0, max_abs_rows(bk.mat, rows));
  return max_abs_rows((bk - mapped).mat, rows) / scale;
}

enum class SpectrumKind { Bosonic, Fermionic, Susy };

inline const char* to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::Bosonic: return "bosonic";
    case SpectrumKind::Fermionic: return "fermionic";
    case SpectrumKind::Susy: return "susy";
  }
  return "?";
}

/**
 * Exact spectrum column: half_units[n] is E_n in units of hbar_omega/2 as an
 * exact big integer, energies[n] the closed-form float value.
 */
struct SpectrumTable {
  unsigned k = 0;
  double hbar_omega = 1.0;
  SpectrumKind kind = SpectrumKind::Bosonic;
  std::vector<BigInt> half_units;
  std::vector<double> energies;
};

inline SpectrumTable make_spectrum(SpectrumKind kind, unsigned k, std::size_t n_max,
                                   double hbar_omega = 1.0) {
  if (kind == SpectrumKind::Fermionic && k % 2 == 0)
    throw std::invalid_argument("make_spectrum: fermionic kind requires odd k");
  auto fib = FibDivisorTable::build(k, n_max + 1);
  SpectrumTable t{k, hbar_omega, kind, {}, {}};
  t.half_units.reserve(n_max + 1);
  t.energies.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    switch (kind) {
      case SpectrumKind::Bosonic:
        t.half_units.push_back(fib.at(n) + fib.at(n + 1));
        t.energies.push_back(spectrum_closed_form(static_cast<double>(k),
                                                  static_cast<unsigned>(n), hbar_omega));
        break;
      case SpectrumKind::Fermionic:
        t.half_units.push_back(fib.at(n + 1) - fib.at(n));
        t.energies.push_back(0.5 * hbar_omega * t.half_units.back().convert_to<double>());
        break;
      case SpectrumKind::Susy:
        t.half_units.push_back(fib.at(n));
        t.energies.push_back(0.5 * hbar_omega * binet_real(k, n));
        break;
    }
  }
  return t;
}

}  // namespace golden
