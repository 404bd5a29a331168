#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "golden/golden_number.hpp"

namespace golden {

using BigRat = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/**
 * Golden factorials F_n^(k)! = prod_{m=1..n} F_m^(k), with F_0^(k)! = 1.
 * These are the Fock-state normalizers of the level-k oscillator.
 */
struct GoldenFactorialTable {
  unsigned k = 1;
  std::vector<BigInt> values;  // values[n] = F_n^(k)!

  static GoldenFactorialTable build(unsigned k, std::size_t n_max) {
    auto fib = FibDivisorTable::build(k, n_max);
    GoldenFactorialTable t;
    t.k = k;
    t.values.reserve(n_max + 1);
    BigInt acc = 1;
    t.values.push_back(acc);
    for (std::size_t n = 1; n <= n_max; ++n) {
      acc *= fib.at(n);
      t.values.push_back(acc);
    }
    return t;
  }

  const BigInt& at(std::size_t n) const { return values.at(n); }
};

/// Two-base quantum number [n]_pq = (p^n - q^n)/(p - q).
inline double pq_number(double p, double q, unsigned n) {
  if (p == q) throw std::invalid_argument("pq_number: degenerate bases p == q");
  return (std::pow(p, static_cast<double>(n)) - std::pow(q, static_cast<double>(n))) / (p - q);
}

/**
 * Truncated power series sum_n coeffs[n] z^n at hierarchy level k.
 * tail_bound bounds the dropped remainder at the |z| the series was built for.
 */
struct GoldenSeries {
  unsigned k = 0;
  std::vector<Complex> coeffs;
  double tail_bound = 0.0;
};

/// Exact-coefficient twin of GoldenSeries, used for identities that must
/// hold in rationals rather than to float tolerance.
struct ExactSeries {
  unsigned k = 0;
  std::vector<BigRat> coeffs;
};

struct GoldenExpSum {
  Complex value{1.0, 0.0};
  double tail_bound = 0.0;
  int terms = 1;
};

namespace detail {

/**
 * Scaling limit of a symmetric difference quotient by Richardson
 * extrapolation. The central quotient has an even error series that
 * terminates for polynomials, so the full tableau contains a near-exact
 * entry; the one with the smallest neighbor disagreement is returned.
 */
template <typename F>
double derivative_limit(F&& f, double x) {
  constexpr int kTab = 12;
  const double con = 1.6, con2 = con * con;
  double h = 0.25 * std::max(1.0, std::abs(x));
  double a[kTab][kTab];
  a[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
  double ans = a[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTab; ++i) {
    h /= con;
    a[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con2;
      const double errt =
          std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        ans = a[j][i];
      }
    }
  }
  return ans;
}

// Divisors F_n^(k) as doubles, n = 0..n_max. k = 0 avoids the table.
inline std::vector<double> fib_divisor_doubles(unsigned k, std::size_t n_max) {
  if (k == 0) {
    std::vector<double> v(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) v[n] = static_cast<double>(n);
    return v;
  }
  return FibDivisorTable::build(k, n_max).as_double();
}

}  // namespace detail

/**
 * Level-k golden exponential e_F(z) = sum_n z^n / F_n^(k)!.
 *
 * The series is entire for every k. Summation stops once the next term drops
 * below tol*(1 + |partial|) (floored at tol*1e-3) and the remaining tail is
 * provably below that threshold; a 10000-term cap guards the k = 0 series at
 * absurd |z|.
 */
inline GoldenExpSum golden_exp_full(unsigned k, Complex z, double tol = 1e-15) {
  if (!(tol > 0.0)) throw std::invalid_argument("golden_exp: tol must be positive");
  constexpr int kMaxTerms = 10000;

  GoldenExpSum out;
  Complex sum{1.0, 0.0};  // n = 0 term
  Complex term{1.0, 0.0};
  const double az = std::abs(z);

  std::size_t chunk = 64;
  std::vector<double> fib = detail::fib_divisor_doubles(k, chunk);
  auto divisor = [&](std::size_t n) {
    while (n >= fib.size()) {
      chunk *= 2;
      fib = detail::fib_divisor_doubles(k, chunk);
    }
    return fib[n];
  };

  for (int n = 0; n < kMaxTerms; ++n) {
    const Complex next = term * z / divisor(static_cast<std::size_t>(n) + 1);
    const double thresh = std::max(tol * (1.0 + std::abs(sum)), tol * 1e-3);
    const double ratio = (divisor(static_cast<std::size_t>(n) + 2) > 0.0)
                             ? az / divisor(static_cast<std::size_t>(n) + 2)
                             : 2.0;
    if (ratio < 0.5 && std::abs(next) / (1.0 - ratio) < thresh) {
      out.value = sum;
      out.tail_bound = std::abs(next) / (1.0 - ratio);
      out.terms = n + 1;
      return out;
    }
    sum += next;
    term = next;
  }
  throw std::runtime_error("golden_exp: series did not converge within term cap");
}

inline Complex golden_exp(unsigned k, Complex z, double tol = 1e-15) {
  return golden_exp_full(k, z, tol).value;
}

inline double golden_exp(unsigned k, double x, double tol = 1e-15) {
  return golden_exp_full(k, Complex{x, 0.0}, tol).value.real();
}

/// Coefficient series of the level-k golden exponential, float mode.
inline GoldenSeries golden_exp_series(unsigned k, std::size_t n_terms) {
  auto fact = GoldenFactorialTable::build(k, n_terms);
  GoldenSeries s;
  s.k = k;
  s.coeffs.reserve(n_terms + 1);
  for (std::size_t n = 0; n <= n_terms; ++n)
    s.coeffs.emplace_back(1.0 / fact.at(n).convert_to<double>(), 0.0);
  return s;
}

/// Same coefficients as exact rationals 1/F_n^(k)!.
inline ExactSeries golden_exp_series_exact(unsigned k, std::size_t n_terms) {
  auto fact = GoldenFactorialTable::build(k, n_terms);
  ExactSeries s;
  s.k = k;
  s.coeffs.reserve(n_terms + 1);
  for (std::size_t n = 0; n <= n_terms; ++n) s.coeffs.emplace_back(BigRat(1, fact.at(n)));
  return s;
}

/**
 * Golden derivative at a point:
 * D_k f(x) = (f(phi^k x) - f(phi'^k x)) / ((phi^k - phi'^k) x).
 * Acts on monomials as x^n -> F_n^(k) x^(n-1). At k = 0 the two bases
 * coincide and the quotient degenerates to the classical derivative, taken
 * here as an extrapolated scaling limit.
 */
template <typename F>
double golden_derivative_point(unsigned k, F&& f, double x) {
  if (x == 0.0) throw std::domain_error("golden_derivative_point: singular at x = 0");
  if (k == 0) return detail::derivative_limit(f, x);
  const double p = std::pow(phi_real(), static_cast<double>(k));
  const double q = (k % 2 == 0 ? 1.0 : -1.0) / p;
  return (f(p * x) - f(q * x)) / ((p - q) * x);
}

/// Coefficient action of D_k: c_n z^n -> F_n^(k) c_n z^(n-1).
inline GoldenSeries golden_derivative_series(unsigned k, const GoldenSeries& s) {
  GoldenSeries out;
  out.k = k;
  out.tail_bound = s.tail_bound;
  if (s.coeffs.size() <= 1) return out;
  auto fib = detail::fib_divisor_doubles(k, s.coeffs.size() - 1);
  out.coeffs.reserve(s.coeffs.size() - 1);
  for (std::size_t n = 1; n < s.coeffs.size(); ++n) out.coeffs.push_back(fib[n] * s.coeffs[n]);
  return out;
}

inline ExactSeries golden_derivative_series_exact(unsigned k, const ExactSeries& s) {
  ExactSeries out;
  out.k = k;
  if (s.coeffs.size() <= 1) return out;
  auto fib = FibDivisorTable::build(k, s.coeffs.size() - 1);
  out.coeffs.reserve(s.coeffs.size() - 1);
  for (std::size_t n = 1; n < s.coeffs.size(); ++n)
    out.coeffs.push_back(BigRat(fib.at(n)) * s.coeffs[n]);
  return out;
}

inline Complex eval_series(const GoldenSeries& s, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace golden
