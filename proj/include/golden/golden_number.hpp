#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace golden {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a quantity that is provably an exact integer fails its
/// divisibility check. This signals corrupted sequence data, never user error.
struct divisibility_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * Element a + b*phi of the ring Z[phi], phi = (1+sqrt(5))/2.
 *
 * Products reduce through phi^2 = phi + 1, so the pair (a, b) is a unique
 * representation. The conjugate maps phi to phi' = 1 - phi = -1/phi and is
 * integer-closed: (a, b) -> (a + b, -b). It is a ring homomorphism and an
 * involution, with phi * phi' = -1 and phi + phi' = 1 holding exactly.
 */
struct GoldenNumber {
  BigInt a{0};  ///< coefficient of 1
  BigInt b{0};  ///< coefficient of phi

  GoldenNumber() = default;
  GoldenNumber(BigInt a_, BigInt b_) : a(std::move(a_)), b(std::move(b_)) {}

  static GoldenNumber zero() { return {0, 0}; }
  static GoldenNumber one() { return {1, 0}; }
  static GoldenNumber phi() { return {0, 1}; }
  /// phi' = 1 - phi, the algebraic conjugate of phi (the "silver" root).
  static GoldenNumber phi_conj() { return {1, -1}; }

  GoldenNumber conj() const { return {a + b, -b}; }

  bool operator==(const GoldenNumber&) const = default;

  GoldenNumber operator+(const GoldenNumber& o) const { return {a + o.a, b + o.b}; }
  GoldenNumber operator-(const GoldenNumber& o) const { return {a - o.a, b - o.b}; }
  GoldenNumber operator-() const { return {-a, -b}; }

  // (a1 + b1 phi)(a2 + b2 phi) with phi^2 = phi + 1
  GoldenNumber operator*(const GoldenNumber& o) const {
    return {a * o.a + b * o.b, a * o.b + b * o.a + b * o.b};
  }
  GoldenNumber operator*(const BigInt& s) const { return {a * s, b * s}; }

  std::string str() const {
    return a.str() + (b >= 0 ? "+" : "") + b.str() + "*phi";
  }
};

inline GoldenNumber gmul(const GoldenNumber& x, const GoldenNumber& y) { return x * y; }

/// x^n by binary square-and-multiply. For x = phi the result is
/// (F_{n-1}, F_n) with F_{-1} = 1.
inline GoldenNumber gpow(GoldenNumber x, unsigned long long n) {
  GoldenNumber r = GoldenNumber::one();
  while (n > 0) {
    if (n & 1ULL) r = r * x;
    x = x * x;
    n >>= 1ULL;
  }
  return r;
}

/// Evaluate a + b*phi in double precision. Conjugate-small values of large
/// height cancel catastrophically here; exact comparisons stay in Z[phi].
inline double to_real(const GoldenNumber& x) {
  static const double phi_d = (1.0 + std::sqrt(5.0)) / 2.0;
  return x.a.convert_to<double>() + x.b.convert_to<double>() * phi_d;
}

/// F_n with F_0 = 0, F_1 = 1, by iterated addition.
inline BigInt fibonacci(unsigned long long n) {
  BigInt a = 0, b = 1;
  for (unsigned long long i = 0; i < n; ++i) {
    BigInt t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// L_n with L_0 = 2, L_1 = 1.
inline BigInt lucas(unsigned long long n) {
  BigInt a = 2, b = 1;
  if (n == 0) return a;
  for (unsigned long long i = 1; i < n; ++i) {
    BigInt t = a + b;
    a = b;
    b = t;
  }
  return b;
}

/**
 * Fibonacci divisor F_n^(k) = F_{kn} / F_k, an exact integer for k >= 1.
 * The k = 0 member of the hierarchy is the limit value n.
 *
 * Throws divisibility_error if the division leaves a remainder, which would
 * falsify the divisibility theorem the whole hierarchy rests on.
 */
inline BigInt fib_divisor(unsigned k, unsigned long long n) {
  if (k == 0) return BigInt(n);
  BigInt num = fibonacci(static_cast<unsigned long long>(k) * n);
  BigInt den = fibonacci(k);
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) {
    throw divisibility_error("fib_divisor: F_" + std::to_string(k) +
                             " does not divide F_" + std::to_string(k * n));
  }
  return q;
}

/**
 * Precomputed column of the hierarchy: values[n] = F_n^(k) for n = 0..n_max.
 *
 * Built from the defining quotient F_{kn}/F_k (one Fibonacci sweep, then
 * exact divisions), not from the triple recurrence; the recurrence is one of
 * the identities verified against this table.
 */
struct FibDivisorTable {
  unsigned k = 1;
  std::vector<BigInt> values;

  static FibDivisorTable build(unsigned k, std::size_t n_max) {
    FibDivisorTable t;
    t.k = k;
    t.values.reserve(n_max + 1);
    if (k == 0) {
      for (std::size_t n = 0; n <= n_max; ++n) t.values.emplace_back(n);
      return t;
    }
    BigInt den = fibonacci(k);
    BigInt a = 0, b = 1;  // runs through F_m
    for (std::size_t m = 0, n = 0; n <= n_max; ++m) {
      if (m == static_cast<std::size_t>(k) * n) {
        BigInt q, r;
        boost::multiprecision::divide_qr(a, den, q, r);
        if (r != 0) throw divisibility_error("FibDivisorTable: remainder at n=" + std::to_string(n));
        t.values.push_back(q);
        ++n;
      }
      BigInt s = a + b;
      a = b;
      b = s;
    }
    return t;
  }

  const BigInt& at(std::size_t n) const { return values.at(n); }
  std::size_t n_max() const { return values.size() - 1; }

  std::vector<double> as_double() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.convert_to<double>());
    return out;
  }
};

inline double phi_real() { return (1.0 + std::sqrt(5.0)) / 2.0; }
inline double phi_conj_real() { return (1.0 - std::sqrt(5.0)) / 2.0; }
inline double phi_pow(unsigned k) { return std::pow(phi_real(), static_cast<double>(k)); }
inline double phi_conj_pow(unsigned k) { return std::pow(phi_conj_real(), static_cast<double>(k)); }

/// F_n^(k) through the two-base quotient (phi^kn - phi'^kn)/(phi^k - phi'^k),
/// evaluated in doubles. The k = 0 member is the limit value n.
inline double binet_real(unsigned k, unsigned long long n) {
  if (k == 0) return static_cast<double>(n);
  const double p = std::pow(phi_real(), static_cast<double>(k));
  const double q = (k % 2 == 0 ? 1.0 : -1.0) / p;
  const double qn_mag = std::pow(std::abs(q), static_cast<double>(n));
  const double qn = (q < 0.0 && n % 2 == 1) ? -qn_mag : qn_mag;
  return (std::pow(p, static_cast<double>(n)) - qn) / (p - q);
}

}  // namespace golden
