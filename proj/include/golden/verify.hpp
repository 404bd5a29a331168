#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "golden/coherent.hpp"
#include "golden/entangle.hpp"
#include "golden/fock.hpp"
#include "golden/golden_number.hpp"
#include "golden/qcalc.hpp"
#include "golden/susy.hpp"

namespace golden {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  std::string detail;
};

/**
 * Knobs for the identity suite. tol rescales every float threshold relative
 * to its reference value (quoted per check at tol = 1e-10), so tightening
 * tol exposes which identities live closest to double precision. Exact
 * big-integer checks ignore tol entirely.
 */
struct VerifyConfig {
  std::vector<unsigned> k_list{0, 1, 2, 3, 4, 5};
  int n_max = 30;       // float identity range; exact checks use pinned ranges
  int dim = 16;         // operator cutoff
  double tol = 1e-10;
  std::uint64_t seed = 20240901;
  double hbar_omega = 1.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
};

namespace detail {

/// Deterministic generator: all sampling goes through explicit arithmetic on
/// mt19937_64 words so output is stable across standard libraries.
struct Rng {
  std::mt19937_64 eng;
  bool have_cached = false;
  double cached = 0.0;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    if (have_cached) {
      have_cached = false;
      return cached;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached = r * std::sin(2.0 * std::numbers::pi * u2);
    have_cached = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cnormal() { return {normal(), normal()}; }
};

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Max relative deviation between two matrices over the leading rows.
inline double rel_rows(const Mat& a, const Mat& b, int rows) {
  if (rows <= 0) return 0.0;
  const double scale = std::max({1.0, max_abs_rows(a, rows), max_abs_rows(b, rows)});
  return (a.topRows(rows) - b.topRows(rows)).cwiseAbs().maxCoeff() / scale;
}

inline double rel_super(const SuperOperator& a, const SuperOperator& b) {
  const int r = std::min(a.safe_rows(), b.safe_rows());
  double m = 0.0;
  m = std::max(m, rel_rows(a.ul, b.ul, r));
  m = std::max(m, rel_rows(a.ur, b.ur, r));
  m = std::max(m, rel_rows(a.ll, b.ll, r));
  m = std::max(m, rel_rows(a.lr, b.lr, r));
  return m;
}

/// Like rel_super but with one scale across all four blocks: the natural
/// norm for identities whose phi'-side block is exponentially smaller than
/// the phi-side one.
inline double rel_super_global(const SuperOperator& a, const SuperOperator& b) {
  const int r = std::min(a.safe_rows(), b.safe_rows());
  if (r <= 0) return 0.0;
  double scale = 1.0, diff = 0.0;
  for (auto [x, y] : {std::pair<const Mat*, const Mat*>{&a.ul, &b.ul},
                      {&a.ur, &b.ur},
                      {&a.ll, &b.ll},
                      {&a.lr, &b.lr}}) {
    scale = std::max({scale, max_abs_rows(*x, r), max_abs_rows(*y, r)});
    diff = std::max(diff, (x->topRows(r) - y->topRows(r)).cwiseAbs().maxCoeff());
  }
  return diff / scale;
}

/// Backward-relative residual of the identity A - B = rhs over the leading
/// rows; the cancelling operands set the scale.
inline double identity_residual(const Mat& a, const Mat& b, const Mat& rhs, int rows) {
  if (rows <= 0) return 0.0;
  const double scale = std::max(
      {1.0, max_abs_rows(a, rows), max_abs_rows(b, rows), max_abs_rows(rhs, rows)});
  return (a.topRows(rows) - b.topRows(rows) - rhs.topRows(rows)).cwiseAbs().maxCoeff() / scale;
}

inline std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

inline CheckResult make_result(std::string name, double max_residual, double threshold,
                               std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.max_residual = max_residual;
  r.pass = max_residual <= threshold;
  r.detail = (detail.empty() ? std::string("threshold ") : detail + "; threshold ") +
             fmt_sci(threshold);
  return r;
}

inline SuperState random_super_state(Rng& rng, unsigned k, int d) {
  SuperState s{k, Vec(d), Vec(d)};
  for (int n = 0; n < d; ++n) {
    s.psi0(n) = rng.cnormal();
    s.psi1(n) = rng.cnormal();
  }
  return s.normalize();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// golden-core
// ---------------------------------------------------------------------------

/// phi^kn - phi'^kn  ==  (phi^k - phi'^k) * F_n^(k), entirely in Z[phi],
/// for k <= 8, n <= 64. Divisibility of F_kn by F_k is implicit in the table.
inline CheckResult check_binet_exactness() {
  const GoldenNumber phi = GoldenNumber::phi();
  const GoldenNumber psi = GoldenNumber::phi_conj();
  for (unsigned k = 1; k <= 8; ++k) {
    auto table = FibDivisorTable::build(k, 64);
    const GoldenNumber base = gpow(phi, k) - gpow(psi, k);
    for (unsigned long long n = 0; n <= 64; ++n) {
      const GoldenNumber lhs = gpow(phi, k * n) - gpow(psi, k * n);
      if (lhs != base * table.at(n))
        return {"binet-exactness", false, 1.0, "failed at k=" + std::to_string(k) +
                                                   " n=" + std::to_string(n)};
    }
  }
  return {"binet-exactness", true, 0.0, "exact, k<=8 n<=64"};
}

/// F_{n+1}^(k) = L_k F_n^(k) + (-1)^(k-1) F_{n-1}^(k), exact over bigints.
inline CheckResult check_triple_recurrence(const FibDivisorTable& table) {
  const BigInt lk = lucas(table.k);
  const int sign = (table.k % 2 == 1) ? 1 : -1;
  for (std::size_t n = 1; n + 1 < table.values.size(); ++n) {
    if (table.at(n + 1) != lk * table.at(n) + sign * table.at(n - 1))
      return {"triple-recurrence", false, 1.0,
              "failed at k=" + std::to_string(table.k) + " n=" + std::to_string(n)};
  }
  return {"triple-recurrence", true, 0.0, "exact, k=" + std::to_string(table.k)};
}

inline CheckResult check_triple_recurrence_all() {
  for (unsigned k = 0; k <= 8; ++k) {
    auto r = check_triple_recurrence(FibDivisorTable::build(k, 64));
    if (!r.pass) return r;
  }
  return {"triple-recurrence", true, 0.0, "exact, k<=8 n<=64"};
}

/// conj(x*y) == conj(x)*conj(y) on random ring elements, plus the defining
/// constants phi*phi' = -1 and phi + phi' = 1.
inline CheckResult check_conjugation_homomorphism(std::uint64_t seed) {
  detail::Rng rng(seed);
  auto random_elem = [&]() {
    auto word = [&]() { return BigInt(rng.eng()) - BigInt(rng.eng()); };
    return GoldenNumber{word(), word()};
  };
  for (int i = 0; i < 64; ++i) {
    const GoldenNumber x = random_elem(), y = random_elem();
    if ((x * y).conj() != x.conj() * y.conj())
      return {"conjugation-homomorphism", false, 1.0, "product case failed"};
    if (x.conj().conj() != x)
      return {"conjugation-homomorphism", false, 1.0, "involution case failed"};
  }
  const GoldenNumber phi = GoldenNumber::phi(), psi = GoldenNumber::phi_conj();
  if (phi * psi != GoldenNumber{-1, 0} || phi + psi != GoldenNumber::one())
    return {"conjugation-homomorphism", false, 1.0, "constants failed"};
  return {"conjugation-homomorphism", true, 0.0, "64 random samples"};
}

/// phi^(kn) = phi^k F_n^(k) + (-1)^(k+1) F_{n-1}^(k) and its conjugate,
/// exact in Z[phi].
inline CheckResult check_power_split() {
  const GoldenNumber phi = GoldenNumber::phi(), psi = GoldenNumber::phi_conj();
  for (unsigned k = 1; k <= 8; ++k) {
    auto t = FibDivisorTable::build(k, 64);
    const BigInt sign = (k % 2 == 0) ? -1 : 1;  // (-1)^(k+1)
    for (unsigned long long n = 1; n <= 64; ++n) {
      const GoldenNumber rhs_p = gpow(phi, k) * t.at(n) + GoldenNumber{sign * t.at(n - 1), 0};
      const GoldenNumber rhs_q = gpow(psi, k) * t.at(n) + GoldenNumber{sign * t.at(n - 1), 0};
      if (gpow(phi, k * n) != rhs_p || gpow(psi, k * n) != rhs_q)
        return {"golden-power-split", false, 1.0,
                "failed at k=" + std::to_string(k) + " n=" + std::to_string(n)};
    }
  }
  return {"golden-power-split", true, 0.0, "exact, k<=8 n<=64"};
}

// ---------------------------------------------------------------------------
// qcalc
// ---------------------------------------------------------------------------

/// [n] at bases (phi^k, phi'^k) matches the exact divisor: bit-exact after
/// rounding while the float error stays under half a unit (through ~2^44),
/// relative to 1e-12 beyond.
inline CheckResult check_pq_fibonacci(double tol) {
  double worst = 0.0;
  for (unsigned k = 1; k <= 6; ++k) {  // the k = 0 limit has coincident bases
    auto t = FibDivisorTable::build(k, 30);
    const double p = std::pow(phi_real(), static_cast<double>(k));
    const double q = (k % 2 == 0 ? 1.0 : -1.0) / p;
    for (unsigned n = 0; n <= 30; ++n) {
      const double exact = t.at(n).convert_to<double>();
      const double val = pq_number(p, q, n);
      if (exact < 1.7e13 && std::llround(val) != std::llround(exact))
        return {"pq-fibonacci-match", false, 1.0,
                "rounding mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n)};
      worst = std::max(worst, detail::rel(val, exact));
    }
  }
  return detail::make_result("pq-fibonacci-match", worst, 1e-12 * (tol / 1e-10));
}

/// The exact-coefficient golden exponential is a fixed point of the series
/// derivative: F_n / F_n! = 1 / F_{n-1}! in rationals.
inline CheckResult check_exp_fixed_point() {
  for (unsigned k = 0; k <= 6; ++k) {
    auto s = golden_exp_series_exact(k, 40);
    auto d = golden_derivative_series_exact(k, s);
    for (std::size_t n = 0; n < d.coeffs.size(); ++n) {
      if (d.coeffs[n] != s.coeffs[n])
        return {"exp-fixed-point", false, 1.0,
                "coefficient mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n)};
    }
  }
  return {"exp-fixed-point", true, 0.0, "exact rationals, k<=6, 40 terms"};
}

/// Two-point derivative vs coefficient derivative on random polynomials.
inline CheckResult check_derivative_point_vs_series(std::uint64_t seed, double tol) {
  detail::Rng rng(seed);
  double worst = 0.0;
  for (unsigned k = 0; k <= 6; ++k) {
    GoldenSeries poly;
    poly.k = k;
    for (int n = 0; n <= 10; ++n) poly.coeffs.emplace_back(rng.uniform(-1.0, 1.0), 0.0);
    GoldenSeries dpoly = golden_derivative_series(k, poly);
    for (int i = 0; i < 20; ++i) {
      double x = rng.uniform(0.15, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      const double via_point = golden_derivative_point(
          k, [&](double t) { return eval_series(poly, Complex{t, 0.0}).real(); }, x);
      const double via_series = eval_series(dpoly, Complex{x, 0.0}).real();
      worst = std::max(worst, detail::rel(via_point, via_series));
    }
  }
  return detail::make_result("derivative-point-vs-series", worst, tol);
}

/// e_F is increasing on the positive axis and commutes with conjugation.
inline CheckResult check_exp_positivity_conjugation(double tol) {
  double worst = 0.0;
  for (unsigned k = 0; k <= 6; ++k) {
    double prev = golden_exp(k, 0.0);
    for (int i = 1; i <= 24; ++i) {
      const double z = 0.25 * i;
      const double cur = golden_exp(k, z);
      if (cur <= prev)
        return {"exp-positivity-conjugation", false, 1.0,
                "not increasing at k=" + std::to_string(k) + " z=" + std::to_string(z)};
      prev = cur;
      const Complex zc{0.3 * i, 0.41 * i};
      worst = std::max(worst,
                       std::abs(golden_exp(k, std::conj(zc)) - std::conj(golden_exp(k, zc))));
    }
  }
  return detail::make_result("exp-positivity-conjugation", worst, tol);
}

// ---------------------------------------------------------------------------
// fock
// ---------------------------------------------------------------------------

/// b b+ - phi^k b+ b = diag(phi'^kn) and the conjugate pairing, safe rows.
inline CheckResult check_quantum_algebra(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = cfg.dim;
  for (unsigned k : cfg.k_list) {
    auto [b, bdag] = ladder_ops(k, d);
    const double pk = phi_pow(k), qk = phi_conj_pow(k);
    std::vector<double> qn(static_cast<std::size_t>(d)), pn(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) {
      pn[static_cast<std::size_t>(n)] = std::pow(pk, n);
      qn[static_cast<std::size_t>(n)] = std::pow(qk, n);
    }
    FockOperator bbd = b * bdag;
    FockOperator bdb = bdag * b;
    const int rows = std::max(0, d - 2);
    worst = std::max(worst, detail::identity_residual(bbd.mat, pk * bdb.mat,
                                                      diagonal_op(k, qn).mat, rows));
    worst = std::max(worst, detail::identity_residual(bbd.mat, qk * bdb.mat,
                                                      diagonal_op(k, pn).mat, rows));
  }
  return detail::make_result("quantum-algebra", worst, cfg.tol);
}

/// [N, b+] = b+, [N, b] = -b, and [b, b+] = F_{N+1} - F_N on safe rows.
inline CheckResult check_number_ladder_commutators(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = cfg.dim;
  for (unsigned k : cfg.k_list) {
    auto [b, bdag] = ladder_ops(k, d);
    FockOperator nop = number_op(k, d);
    const int rows = std::max(0, d - 2);
    worst = std::max(worst, detail::identity_residual((nop * bdag).mat, (bdag * nop).mat,
                                                      bdag.mat, rows));
    worst = std::max(worst, detail::identity_residual((nop * b).mat, (b * nop).mat,
                                                      (b * Complex{-1.0, 0.0}).mat, rows));
    FockOperator diff = fib_divisor_op_shifted(k, d) - fib_divisor_op(k, d);
    worst = std::max(worst, detail::identity_residual((b * bdag).mat, (bdag * b).mat,
                                                      diff.mat, rows));
  }
  return detail::make_result("ladder-commutators", worst, cfg.tol);
}

/// b+ f(F_{N+1}) = f(F_N) b+ and b f(F_N) = f(F_{N+1}) b, f = id and square.
inline CheckResult check_shift_identities(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = cfg.dim;
  for (unsigned k : cfg.k_list) {
    auto [b, bdag] = ladder_ops(k, d);
    FockOperator fn = fib_divisor_op(k, d);
    FockOperator fn1 = fib_divisor_op_shifted(k, d);
    for (int power = 1; power <= 2; ++power) {
      FockOperator gn = (power == 1) ? fn : fn * fn;
      FockOperator gn1 = (power == 1) ? fn1 : fn1 * fn1;
      FockOperator l1 = bdag * gn1, r1 = gn * bdag;
      FockOperator l2 = b * gn, r2 = gn1 * b;
      worst = std::max(worst, detail::rel_rows(l1.mat, r1.mat, std::min(l1.safe_rows, r1.safe_rows)));
      worst = std::max(worst, detail::rel_rows(l2.mat, r2.mat, std::min(l2.safe_rows, r2.safe_rows)));
    }
  }
  return detail::make_result("shift-identities", worst, cfg.tol);
}

/// The four scalar recursions as diagonal identities in floats, n <= n_max.
/// Residuals are backward-relative: the phi'-side identity cancels two
/// F_n-sized terms down to phi'^(kn), so the operands set the scale.
inline CheckResult check_diagonal_recursions(const VerifyConfig& cfg) {
  double worst = 0.0;
  auto backward = [](double lhs, double t1, double t2) {
    return std::abs(lhs - (t1 + t2)) /
           std::max({1.0, std::abs(lhs), std::abs(t1), std::abs(t2)});
  };
  for (unsigned k : cfg.k_list) {
    auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(cfg.n_max) + 1);
    const double pk = phi_pow(k), qk = phi_conj_pow(k);
    const double lk = lucas(k).convert_to<double>();
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^(k-1) = (-1)^(k+1)
    for (int n = 1; n <= cfg.n_max; ++n) {
      const std::size_t m = static_cast<std::size_t>(n);
      const double pkn = std::pow(pk, n), qkn = std::pow(qk, n);
      worst = std::max(worst, backward(fib[m + 1], lk * fib[m], sign * fib[m - 1]));
      worst = std::max(worst, backward(pkn, pk * fib[m], sign * fib[m - 1]));
      worst = std::max(worst, backward(qkn, qk * fib[m], sign * fib[m - 1]));
      worst = std::max(worst, backward(fib[m + 1], pk * fib[m], qkn));
      worst = std::max(worst, backward(fib[m + 1], qk * fib[m], pkn));
    }
  }
  return detail::make_result("diagonal-recursions", worst, cfg.tol);
}

/// E_{n+1} = L_k E_n + (-1)^(k-1) E_{n-1} exactly over big integers, for
/// the bosonic and susy spectra.
inline CheckResult check_spectrum_recurrence() {
  for (unsigned k = 0; k <= 8; ++k) {
    const BigInt lk = lucas(k);
    const int sign = (k % 2 == 1) ? 1 : -1;
    for (auto kind : {SpectrumKind::Bosonic, SpectrumKind::Susy}) {
      auto t = make_spectrum(kind, k, 64);
      for (std::size_t n = 1; n + 1 < t.half_units.size(); ++n) {
        if (t.half_units[n + 1] != lk * t.half_units[n] + sign * t.half_units[n - 1])
          return {"spectrum-recurrence", false, 1.0,
                  "failed at k=" + std::to_string(k) + " n=" + std::to_string(n) + " kind " +
                      to_string(kind)};
      }
    }
  }
  return {"spectrum-recurrence", true, 0.0, "exact, k<=8 n<=64"};
}

/// E_n^(k) = hbar w / 2 (F_{kn+1} + F_n^(k) (F_{k-1} + 1)), exact bigints.
inline CheckResult check_spectrum_alt_form() {
  for (unsigned k = 1; k <= 8; ++k) {
    auto t = FibDivisorTable::build(k, 65);
    for (unsigned long long n = 0; n <= 64; ++n) {
      const BigInt lhs = t.at(n) + t.at(n + 1);
      const BigInt rhs = fibonacci(k * n + 1) + t.at(n) * (fibonacci(k - 1) + 1);
      if (lhs != rhs)
        return {"spectrum-alt-form", false, 1.0,
                "failed at k=" + std::to_string(k) + " n=" + std::to_string(n)};
    }
  }
  return {"spectrum-alt-form", true, 0.0, "exact, k<=8 n<=64"};
}

/// Hyperbolic closed form against the exact table, the continuous k -> 0
/// limit, the large-n growth ratio, and the error bound of the dominant-term
/// approximation for odd k.
inline CheckResult check_spectrum_closed_form(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k : cfg.k_list) {
    auto t = make_spectrum(SpectrumKind::Bosonic, k, static_cast<std::size_t>(cfg.n_max),
                           cfg.hbar_omega);
    for (int n = 0; n <= cfg.n_max; ++n) {
      const double exact =
          0.5 * cfg.hbar_omega * t.half_units[static_cast<std::size_t>(n)].convert_to<double>();
      worst = std::max(worst, detail::rel(spectrum_closed_form(k, static_cast<unsigned>(n),
                                                               cfg.hbar_omega),
                                          exact));
      if (k % 2 == 1) {
        // analytic gap of the dominant-term form, plus room for float noise
        // on levels that have outgrown the gap
        const double bound = 0.5 * cfg.hbar_omega *
                                 std::pow(phi_real(), -static_cast<double>(k) * (n + 1)) /
                                 std::cosh(k * std::log(phi_real())) *
                                 (1.0 + 1e-9) +
                             1e-13 * std::max(1.0, exact);
        const double err = std::abs(spectrum_closed_form_asymptotic(k, static_cast<unsigned>(n),
                                                                    cfg.hbar_omega) -
                                    exact);
        if (err > bound)
          return {"spectrum-closed-form", false, err,
                  "dominant-term error bound violated at k=" + std::to_string(k) +
                      " n=" + std::to_string(n)};
      }
    }
  }
  for (unsigned n = 0; n <= 6; ++n) {
    const double lim = spectrum_closed_form(1e-8, n, cfg.hbar_omega);
    if (std::abs(lim - cfg.hbar_omega * (n + 0.5)) > 1e-6)
      return {"spectrum-closed-form", false, std::abs(lim - cfg.hbar_omega * (n + 0.5)),
              "k->0 limit failed at n=" + std::to_string(n)};
  }
  {  // growth ratio E_{n+1}/E_n -> phi^k
    const double r = spectrum_closed_form(2.0, 41) / spectrum_closed_form(2.0, 40);
    if (std::abs(r - phi_pow(2)) > 1e-4)
      return {"spectrum-closed-form", false, std::abs(r - phi_pow(2)), "growth ratio failed"};
  }
  return detail::make_result("spectrum-closed-form", worst, cfg.tol);
}

inline CheckResult check_nonlinear_map(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k : cfg.k_list) worst = std::max(worst, nonlinear_map_check(k, cfg.dim));
  return detail::make_result("nonlinear-map", worst, 1e-12 * (cfg.tol / 1e-10));
}

/// Difference Hamiltonian diag vs table; k = 1 reduces to F_{n-1}/2.
inline CheckResult check_fermionic_difference(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k : cfg.k_list) {
    if (k % 2 == 0) continue;
    auto h = hamiltonian_fermionic(k, cfg.dim, cfg.hbar_omega);
    auto t = make_spectrum(SpectrumKind::Fermionic, k, static_cast<std::size_t>(cfg.dim) - 1,
                           cfg.hbar_omega);
    for (int n = 0; n < cfg.dim; ++n)
      worst = std::max(worst, detail::rel(h.mat(n, n).real(),
                                          t.energies[static_cast<std::size_t>(n)]));
  }
  // k = 1: gaps are plain Fibonacci numbers shifted down one index
  auto h1 = hamiltonian_fermionic(1, cfg.dim, cfg.hbar_omega);
  for (int n = 0; n < cfg.dim; ++n) {
    const double fnm1 =
        (n == 0) ? 1.0 : fibonacci(static_cast<unsigned long long>(n) - 1).convert_to<double>();
    worst = std::max(worst, detail::rel(h1.mat(n, n).real(), 0.5 * cfg.hbar_omega * fnm1));
  }
  return detail::make_result("fermionic-difference", worst, cfg.tol);
}

// ---------------------------------------------------------------------------
// susy
// ---------------------------------------------------------------------------

/// Q^2 = 0 exactly; hbar w/2 {Q, Q+} matches the table Hamiltonian on safe rows.
inline CheckResult check_supercharges(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k : cfg.k_list) {
    auto [q, qdag] = supercharges(k, cfg.dim);
    if ((q * q).full().cwiseAbs().maxCoeff() != 0.0 ||
        (qdag * qdag).full().cwiseAbs().maxCoeff() != 0.0)
      return {"supercharge-nilpotent", false, 1.0, "Q^2 != 0 at k=" + std::to_string(k)};
    SuperOperator h = anticommutator(q, qdag) * Complex{0.5 * cfg.hbar_omega, 0.0};
    worst = std::max(worst, detail::rel_super(h, super_hamiltonian(k, cfg.dim, cfg.hbar_omega)));
  }
  return detail::make_result("supercharge-nilpotent", worst, cfg.tol);
}

/// Binet evaluation of the super divisor operator vs the exact table.
inline CheckResult check_super_binet(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = std::max(cfg.dim, 20);
  for (unsigned k : cfg.k_list) {
    if (k > 5) continue;
    SuperOperator binet = super_fib_binet(k, d);
    SuperOperator table = super_fib_table(k, d);
    worst = std::max(worst, detail::rel_super(binet, table));
  }
  return detail::make_result("super-binet", worst, cfg.tol);
}

/// Tr_f H^s = H_k, and the supercharge route agrees on safe rows.
inline CheckResult check_partial_trace(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k : cfg.k_list) {
    FockOperator traced = partial_trace_fermion_op(super_hamiltonian(k, cfg.dim, cfg.hbar_omega));
    FockOperator direct = hamiltonian_boson(k, cfg.dim, cfg.hbar_omega);
    worst = std::max(worst, detail::rel_rows(traced.mat, direct.mat, cfg.dim));
    auto [q, qdag] = supercharges(k, cfg.dim);
    FockOperator via_q =
        partial_trace_fermion_op(anticommutator(q, qdag) * Complex{0.5 * cfg.hbar_omega, 0.0});
    worst = std::max(worst, detail::rel_rows(via_q.mat, direct.mat, via_q.safe_rows));
  }
  return detail::make_result("partial-trace", worst, cfg.tol);
}

/// Super-number states: eigenvector residual, double degeneracy of the two
/// separable members, and super-particle counting, at 10 Bloch points.
inline CheckResult check_super_number_states(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = std::max(cfg.dim, 8);
  for (unsigned k = 0; k <= 4; ++k) {
    SuperOperator f = super_fib_table(k, d);
    auto fib = detail::fib_divisor_doubles(k, static_cast<std::size_t>(d));
    for (int n = 1; n <= 6; ++n) {
      const double fn = fib[static_cast<std::size_t>(n)];
      for (int i = 0; i < 10; ++i) {
        const double theta = std::numbers::pi * i / 9.0;
        const double phi_az = 2.0 * std::numbers::pi * i / 10.0;
        SuperState s = super_number_state(n, k, BlochPoint{theta, phi_az}, d);
        SuperState fs = apply(f, s);
        fs.psi0 -= fn * s.psi0;
        fs.psi1 -= fn * s.psi1;
        worst = std::max(worst, std::sqrt(fs.norm_sq()) / std::max(1.0, fn));
        worst = std::max(worst, std::abs(super_number_expectation(s) - n));
      }
      // the two poles are separable eigenvectors with the same eigenvalue
      SuperState north = super_number_state(n, k, BlochPoint{0.0, 0.0}, d);
      SuperState south = super_number_state(n, k, BlochPoint{std::numbers::pi, 0.0}, d);
      for (const SuperState* s : {&north, &south}) {
        SuperState fs = apply(f, *s);
        fs.psi0 -= fn * s->psi0;
        fs.psi1 -= fn * s->psi1;
        worst = std::max(worst, std::sqrt(fs.norm_sq()) / std::max(1.0, fn));
      }
    }
  }
  return detail::make_result("super-number-states", worst, cfg.tol);
}

/// Ratio iteration converges to phi^k, which solves x^2 = L_k x + (-1)^(k-1).
inline CheckResult check_energy_ratio(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k = 1; k <= 5; ++k) {
    auto iters = energy_ratio_iter(k, 1.0 + 0.5 * k, 60);
    const double lam = iters.back();
    worst = std::max(worst, std::abs(lam - phi_pow(k)) / phi_pow(k));
    const double lk = lucas(k).convert_to<double>();
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    worst = std::max(worst, detail::rel(lam * lam, lk * lam + sign));
  }
  return detail::make_result("energy-ratio", worst, 1e-8 * (cfg.tol / 1e-10));
}

/// E_n = phi^(kn)/(phi^k - phi'^k) up to a relative error phi^(-2kn) that is
/// negligible by n = 30; the ratio test E_{n+1}/E_n -> phi^k rides along.
inline CheckResult check_susy_asymptotics(const VerifyConfig& cfg) {
  const unsigned k = 2, n = 30;
  auto t = make_spectrum(SpectrumKind::Susy, k, n + 1);
  const double en = t.half_units[n].convert_to<double>();
  const double en1 = t.half_units[n + 1].convert_to<double>();
  const double predicted = std::pow(phi_pow(k), static_cast<double>(n)) / (phi_pow(k) - phi_conj_pow(k));
  double worst = std::abs(en / predicted - 1.0);
  worst = std::max(worst, std::abs(en1 / en - phi_pow(k)) / phi_pow(k));
  return detail::make_result("susy-asymptotics", worst, 1e-2 * (cfg.tol / 1e-10),
                             "1% growth-law window");
}

// ---------------------------------------------------------------------------
// coherent
// ---------------------------------------------------------------------------

/// b_k eigenvalue residual for plain and lambda-scaled coherent states.
inline CheckResult check_coherent_eigenstates(const VerifyConfig& cfg) {
  detail::Rng rng(cfg.seed ^ 0xc0ffee);
  double worst = 0.0;
  for (unsigned k = 0; k <= 3; ++k) {
    const double bmax = (k == 0) ? 1.5 : 1.0;
    for (int i = 0; i < 8; ++i) {
      const Complex beta = std::polar(bmax * (i + 1) / 8.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
      worst = std::max(worst, eigen_residual(coherent_state(k, beta)));
      double lam = rng.uniform(0.5, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      worst = std::max(worst, eigen_residual(coherent_vector(k, beta, lam, false, false)));
    }
  }
  return detail::make_result("coherent-eigenstates", worst, cfg.tol);
}

/// All closed-form inner products against direct amplitude sums.
inline CheckResult check_coherent_inner_products(const VerifyConfig& cfg) {
  detail::Rng rng(cfg.seed ^ 0xabcdef);
  double worst = 0.0;
  for (unsigned k = 0; k <= 4; ++k) {
    for (int i = 0; i < 6; ++i) {
      const Complex beta =
          std::polar(rng.uniform(0.1, 1.5), rng.uniform(0.0, 2.0 * std::numbers::pi));
      const Complex alpha =
          std::polar(rng.uniform(0.1, 1.5), rng.uniform(0.0, 2.0 * std::numbers::pi));
      const double lam = rng.uniform(0.6, 1.8) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      const double mu = rng.uniform(0.6, 1.8);

      auto cb = coherent_state(k, beta);
      auto ca = coherent_state(k, alpha);
      worst = std::max(worst, detail::rel(inner(cb, ca), inner_plain_closed(k, beta, alpha)));
      worst = std::max(worst,
                       detail::rel(inner(cb, cb).real(), inner_scaled_closed(k, beta, 1.0, 1.0)));

      auto s_lam = coherent_vector(k, beta, lam, false, false);
      auto s_mu = coherent_vector(k, beta, mu, false, false);
      worst = std::max(worst, detail::rel(inner(s_lam, s_mu).real(),
                                          inner_scaled_closed(k, beta, lam, mu)));

      auto p_lam = derived_state(k, beta, lam);
      auto p_mu = derived_state(k, beta, mu);
      worst = std::max(worst, detail::rel(inner(p_lam, s_mu),
                                          inner_primed_plain_closed(k, beta, lam, mu)));
      worst = std::max(worst, detail::rel(inner(s_mu, p_lam),
                                          std::conj(inner_primed_plain_closed(k, beta, lam, mu))));
      const Complex pp = inner(p_lam, p_mu);
      worst = std::max(worst,
                       detail::rel(pp.real(), inner_primed_primed_closed(k, beta, lam, mu, true)));
      worst = std::max(worst,
                       detail::rel(pp.real(), inner_primed_primed_closed(k, beta, lam, mu, false)));
    }
  }
  return detail::make_result("coherent-inner-products", worst, cfg.tol);
}

/// b_k |beta'/(-1)^k> = (beta/phi^k)|beta'/(-1)^k> + (-1)^k |beta/phi'^k>
/// and the phi/phi'-swapped version, as truncated vector identities.
inline CheckResult check_two_term_relation(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k = 0; k <= 3; ++k) {
    const double mk = (k % 2 == 0) ? 1.0 : -1.0;
    const double pk = phi_pow(k), qk = phi_conj_pow(k);
    for (double babs : {0.3, 0.7, 1.0}) {
      const Complex beta = std::polar(babs, 0.7);
      const int d = 28;
      Vec primed = detail::coherent_amps(k, beta, mk, true, d);
      Vec on_phi_conj = detail::coherent_amps(k, beta, qk, false, d);
      Vec on_phi = detail::coherent_amps(k, beta, pk, false, d);
      auto [b, bdag] = ladder_ops(k, d);
      const Vec lhs = b.mat * primed;
      const Vec rhs1 = (beta / pk) * primed + mk * on_phi_conj;
      const Vec rhs2 = (beta / qk) * primed + mk * on_phi;
      const int rows = d - 1;
      const double scale = std::max(1.0, lhs.head(rows).cwiseAbs().maxCoeff());
      worst = std::max(worst, (lhs - rhs1).head(rows).cwiseAbs().maxCoeff() / scale);
      worst = std::max(worst, (lhs - rhs2).head(rows).cwiseAbs().maxCoeff() / scale);
    }
  }
  return detail::make_result("two-term-relation", worst, cfg.tol);
}

/// The six super-coherent families: eigenvalue residuals, closed-form
/// normalizers (validated inside super_coherent), and cutoff bound.
inline CheckResult check_super_coherent_families(const VerifyConfig& cfg) {
  double worst = 0.0;
  int max_dim_used = 0;
  for (unsigned k = 0; k <= 3; ++k) {
    const double bmax = (k == 0) ? 1.5 : 1.0;
    for (int i = 0; i <= 4; ++i) {
      const Complex beta = std::polar(bmax * i / 4.0, 0.4 * i);
      for (Family f : {Family::SepUp, Family::SepDown, Family::LPlus, Family::LMinus,
                       Family::BPlus, Family::BMinus}) {
        auto fam = super_coherent(f, k, beta);
        worst = std::max(worst, fam.residual);
        worst = std::max(worst, std::abs(fam.norm_sq_direct - fam.norm_sq_closed) /
                                    std::max(1.0, fam.norm_sq_closed));
        max_dim_used = std::max(max_dim_used, fam.dim);
      }
    }
  }
  if (max_dim_used > 32)
    return {"super-coherent-families", false, static_cast<double>(max_dim_used),
            "adaptive cutoff exceeded 32"};
  return detail::make_result("super-coherent-families", worst, 1e-8 * (cfg.tol / 1e-10),
                             "cutoff <= " + std::to_string(max_dim_used));
}

/// Reference states: annihilation, one super-particle, combinations, and the
/// beta -> 0 limit of the coherent families.
inline CheckResult check_reference_states(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = std::max(cfg.dim, 8);
  for (unsigned k = 0; k <= 4; ++k) {
    auto refs = reference_states(k, d);
    auto kill = [&](const SuperOperator& a, const SuperState& s) {
      return std::sqrt(apply(a, s).norm_sq());
    };
    worst = std::max(worst, kill(super_annihilator(k, Sign::Plus, false, d), refs.L_minus));
    worst = std::max(worst, kill(super_annihilator(k, Sign::Minus, false, d), refs.L_plus));
    worst = std::max(worst, kill(super_annihilator(k, Sign::Plus, true, d), refs.B_minus));
    worst = std::max(worst, kill(super_annihilator(k, Sign::Minus, true, d), refs.B_plus));

    // one super-particle: F |L+-> = 1 |L+->
    SuperOperator f = super_fib_table(k, d);
    for (const SuperState* s : {&refs.L_plus, &refs.L_minus}) {
      SuperState fs = apply(f, *s);
      fs.psi0 -= s->psi0;
      fs.psi1 -= s->psi1;
      worst = std::max(worst, std::sqrt(fs.norm_sq()));
      worst = std::max(worst, std::abs(super_number_expectation(*s) - 1.0));
    }

    // combinations stay in the kernel
    for (auto [c0, c1] : {std::pair<Complex, Complex>{{1.0, 0.0}, {0.0, 0.0}},
                          {{0.0, 0.0}, {1.0, 0.0}},
                          {{std::sqrt(0.5), 0.0}, {0.0, std::sqrt(0.5)}}}) {
      SuperState combo = reference_combination(c0, c1, k, Sign::Plus, ReferenceSide::L, d);
      worst = std::max(worst, kill(super_annihilator(k, Sign::Plus, false, d), combo));
      SuperState combo_b = reference_combination(c0, c1, k, Sign::Plus, ReferenceSide::B, d);
      worst = std::max(worst, kill(super_annihilator(k, Sign::Plus, true, d), combo_b));
    }

    if (k <= 3) {  // beta -> 0 limit of the families
      for (auto [fam, ref] : {std::pair<Family, const SuperState*>{Family::LPlus, &refs.L_plus},
                              {Family::LMinus, &refs.L_minus},
                              {Family::BPlus, &refs.B_plus},
                              {Family::BMinus, &refs.B_minus}}) {
        auto built = super_coherent(fam, k, Complex{0.0, 0.0});
        const int dd = std::min(built.state.dim(), d);
        double diff = 0.0;
        diff = std::max(diff, (built.state.psi0.head(dd) - ref->psi0.head(dd)).cwiseAbs().maxCoeff());
        diff = std::max(diff, (built.state.psi1.head(dd) - ref->psi1.head(dd)).cwiseAbs().maxCoeff());
        worst = std::max(worst, diff);
      }
    }
  }
  return detail::make_result("reference-states", worst, cfg.tol);
}

/// [A_{+-k}, S_{-+k}] = 0 and both closed forms of A^n and S^n against
/// iterated products (1e-9 class), plus symmetry-generated eigenstates at
/// the family residual budget (1e-8 class).
inline CheckResult check_symmetry_operator(const VerifyConfig& cfg) {
  double worst = 0.0, worst_generated = 0.0;
  const int d = 16;
  for (unsigned k = 0; k <= 4; ++k) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const Sign opp = (s == Sign::Plus) ? Sign::Minus : Sign::Plus;
      SuperOperator a = super_annihilator(k, s, false, d);
      SuperOperator sym = symmetry_operator(k, opp, d);
      const double scale = std::max(1.0, (a * sym).max_abs_safe());
      worst = std::max(worst, commutator(a, sym).max_abs_safe() / scale);

      SuperOperator an = a, sn = sym;
      for (unsigned n = 1; n <= 5; ++n) {
        if (n > 1) {
          an = an * a;
          sn = sn * sym;
        }
        worst = std::max(worst, detail::rel_super_global(an, super_annihilator_power(k, s, n, d)));
        worst =
            std::max(worst, detail::rel_super_global(an, super_annihilator_power_split(k, s, n, d)));
        worst = std::max(worst, detail::rel_super_global(sn, symmetry_power(k, opp, n, d)));
        worst = std::max(worst, detail::rel_super_global(sn, symmetry_power_split(k, opp, n, d)));
      }
    }
    if (k <= 3) {
      // S maps |beta, L-+> to another eigenstate of A_{+-k} with eigenvalue beta
      const Complex beta{0.45, 0.2};
      auto fam = super_coherent(Family::LMinus, k, beta);
      const int dd = fam.state.dim();
      SuperOperator a = super_annihilator(k, Sign::Plus, false, dd);
      SuperOperator sym = symmetry_operator(k, Sign::Minus, dd);
      SuperState mapped = apply(sym, fam.state);
      const double nrm = std::sqrt(mapped.norm_sq());
      mapped.psi0 /= nrm;
      mapped.psi1 /= nrm;
      SuperState r = apply(a, mapped);
      r.psi0 -= beta * mapped.psi0;
      r.psi1 -= beta * mapped.psi1;
      worst_generated = std::max(worst_generated, std::sqrt(r.norm_sq()));
    }
  }
  const double algebra_tol = 1e-9 * (cfg.tol / 1e-10);
  const double generated_tol = 1e-8 * (cfg.tol / 1e-10);
  CheckResult r = detail::make_result(
      "symmetry-operator", worst, algebra_tol,
      "generated-state residual " + detail::fmt_sci(worst_generated));
  r.pass = r.pass && worst_generated <= generated_tol;
  return r;
}

/// 1/phi'^(2k) and phi^(2k) (the sep-down / B normalizer exponents) agree.
inline CheckResult check_normalizer_exponents(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k = 0; k <= 6; ++k)
    worst = std::max(worst, detail::rel(1.0 / (phi_conj_pow(k) * phi_conj_pow(k)),
                                        phi_pow(k) * phi_pow(k)));
  return detail::make_result("normalizer-exponents", worst, 1e-13 * (cfg.tol / 1e-10));
}

// ---------------------------------------------------------------------------
// entangle
// ---------------------------------------------------------------------------

/// Gram, minors and purity concurrences coincide on random pure states, and
/// the two reduced purities match.
inline CheckResult check_representation_triangle(const VerifyConfig& cfg) {
  detail::Rng rng(cfg.seed);
  double worst_c = 0.0, worst_p = 0.0, worst_id = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + static_cast<int>(rng.uniform() * 10.99);  // 2..12
    SuperState s = detail::random_super_state(rng, 1, d);
    const double cg = concurrence_gram(s);
    const double cm = concurrence_minors(s);
    DensityMatrix rb = reduce_boson(s);
    DensityMatrix rf = reduce_fermion(s);
    const double cp = concurrence_from_purity(rb);
    worst_c = std::max({worst_c, std::abs(cg - cm), std::abs(cg - cp), std::abs(cm - cp)});
    worst_p = std::max(worst_p, std::abs(rb.purity() - rf.purity()));

    // Gram determinant = sum of fermionic-pair determinants
    GramForm g = gram_form(s.psi0, s.psi1);
    double pair_sum = 0.0;
    for (int n = 0; n < d; ++n)
      for (int m = n + 1; m < d; ++m)
        pair_sum += std::norm(s.psi0(n) * s.psi1(m) - s.psi0(m) * s.psi1(n));
    worst_id = std::max(worst_id, std::abs(g.det() - pair_sum));
    if (g.det() < -1e-12)
      return {"representation-triangle", false, -g.det(), "Cauchy-Schwarz violated"};
  }
  // concurrence routes agree at tol; the purity match and the Gram/pair-sum
  // identity carry the tighter 1e-12 budget
  const double tight_tol = 1e-12 * (cfg.tol / 1e-10);
  CheckResult r = detail::make_result(
      "representation-triangle", worst_c, cfg.tol,
      "200 states; purity gap " + detail::fmt_sci(worst_p) + ", Gram identity gap " +
          detail::fmt_sci(worst_id));
  r.pass = r.pass && worst_p <= tight_tol && worst_id <= tight_tol;
  return r;
}

/// Random unit-trace spectra never exceed C_max(n) = sqrt(2 (n-1)/n); the
/// flat spectrum attains it.
inline CheckResult check_frobenius_extremum(const VerifyConfig& cfg) {
  detail::Rng rng(cfg.seed ^ 0xfeedface);
  double worst = 0.0;
  for (int n : {2, 3, 4, 16}) {
    const double cmax = std::sqrt(2.0 * (n - 1.0) / n);
    for (int i = 0; i < 1000; ++i) {
      double sum = 0.0;
      std::vector<double> lam(static_cast<std::size_t>(n));
      for (auto& l : lam) {
        l = -std::log(1.0 - rng.uniform());  // exponential -> Dirichlet(1)
        sum += l;
      }
      double sq = 0.0;
      for (auto& l : lam) {
        l /= sum;
        sq += l * l;
      }
      const double c = std::sqrt(2.0 * std::max(0.0, 1.0 - sq));
      worst = std::max(worst, c - cmax);
    }
    Mat flat = Mat::Identity(n, n) / static_cast<double>(n);
    auto rep = frobenius_classify(DensityMatrix::from(std::move(flat)));
    worst = std::max(worst, std::abs(rep.concurrence - cmax));
    worst = std::max(worst, std::abs(rep.shell_position - 1.0 / std::sqrt(n)));
    worst = std::max(worst,
                     std::abs(principal_minors_concurrence_sq(DensityMatrix::from(
                                  Mat(Mat::Identity(n, n) / static_cast<double>(n)))) -
                              rep.concurrence * rep.concurrence));
  }
  return detail::make_result("frobenius-extremum", worst, 1e-12 * (cfg.tol / 1e-10));
}

/// Fermionic entropy equals the concurrence form on random pure states.
inline CheckResult check_entropy_consistency(const VerifyConfig& cfg) {
  detail::Rng rng(cfg.seed ^ 0x5eed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    SuperState s = detail::random_super_state(rng, 1, 2 + static_cast<int>(rng.uniform() * 9));
    const double c = std::min(1.0, concurrence_gram(s));
    worst = std::max(worst,
                     std::abs(von_neumann(reduce_fermion(s)) - entropy_from_concurrence(c)));
  }
  return detail::make_result("entropy-consistency", worst, cfg.tol);
}

/// C = sin(theta) for super-number states, and purity 1 - sin^2(theta)/2.
inline CheckResult check_bloch_concurrence(const VerifyConfig& cfg) {
  double worst = 0.0;
  const int d = 8;
  for (unsigned k = 0; k <= 4; ++k) {
    for (int n = 1; n <= 6; ++n) {
      for (int i = 0; i < 10; ++i) {
        const double theta = std::numbers::pi * i / 9.0;
        SuperState s = super_number_state(n, k, BlochPoint{theta, 0.3}, d);
        worst = std::max(worst, std::abs(concurrence_gram(s) - std::abs(std::sin(theta))));
        worst = std::max(worst, std::abs(reduce_boson(s).purity() -
                                         (1.0 - 0.5 * std::pow(std::sin(theta), 2))));
      }
    }
  }
  return detail::make_result("bloch-concurrence", worst, 1e-12 * (cfg.tol / 1e-10));
}

/// Closed-form coherent concurrence vs the Gram oracle on a beta grid, plus
/// the beta -> 0 reference limit.
inline CheckResult check_coherent_concurrence(const VerifyConfig& cfg) {
  double worst = 0.0;
  for (unsigned k = 0; k <= 3; ++k) {
    const double bmax = (k == 0) ? 1.5 : 1.0;
    for (auto [side, fam] : {std::pair<ReferenceSide, Family>{ReferenceSide::L, Family::LPlus},
                             {ReferenceSide::B, Family::BMinus}}) {
      for (int i = 1; i <= 20; ++i) {
        const Complex beta = std::polar(bmax * i / 20.0, 2.0 * std::numbers::pi * i / 20.0);
        const double closed = coherent_concurrence_closed(k, beta, side);
        const double gram = concurrence_gram(super_coherent(fam, k, beta).state);
        worst = std::max(worst, std::abs(closed - gram));
      }
      const double at_zero = coherent_concurrence_closed(k, Complex{0.0, 0.0}, side);
      worst = std::max(worst, std::abs(at_zero - reference_concurrence_closed(k)));
    }
  }
  return detail::make_result("coherent-concurrence-closed", worst, 1e-8 * (cfg.tol / 1e-10));
}

/// C = 2A on random real states; the projected-area Pythagoras identity; and
/// the reference rectangle: side ratio phi^k (phi F_k + F_{k-1} in Z[phi]),
/// area phi^k/(1 + phi^(2k)).
inline CheckResult check_geometry_area(const VerifyConfig& cfg) {
  detail::Rng rng(cfg.seed ^ 0xa4ea);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + static_cast<int>(rng.uniform() * 9);
    SuperState s{1, Vec(d), Vec(d)};
    for (int n = 0; n < d; ++n) {
      s.psi0(n) = rng.normal();
      s.psi1(n) = rng.normal();
    }
    s.normalize();
    worst = std::max(worst, std::abs(concurrence_real_area(s) - concurrence_gram(s)));
    const Eigen::VectorXd a = s.psi0.real(), b = s.psi1.real();
    worst = std::max(worst, std::abs(parallelogram_area_sq_projected(a, b) -
                                     std::pow(parallelogram_area(a, b), 2)));
  }
  for (unsigned k = 0; k <= 6; ++k) {
    // |b| / |a| = phi^k, exact in Z[phi] via phi^k = phi F_k + F_{k-1}
    const GoldenNumber expected{k == 0 ? BigInt(1) : fibonacci(k - 1), fibonacci(k)};
    if (gpow(GoldenNumber::phi(), k) != expected)
      return {"geometry-area", false, 1.0, "rectangle ratio failed at k=" + std::to_string(k)};
    const double pk = phi_pow(k);
    auto refs = reference_states(k, 4);
    const Eigen::VectorXd a = refs.L_plus.psi0.real(), b = refs.L_plus.psi1.real();
    worst = std::max(worst, std::abs(b.norm() / a.norm() - pk));
    worst = std::max(worst, std::abs(parallelogram_area(a, b) - pk / (1.0 + pk * pk)));
    worst = std::max(worst,
                     std::abs(2.0 * parallelogram_area(a, b) - reference_concurrence_closed(k)));
  }
  return detail::make_result("geometry-area", worst, cfg.tol);
}

/// Reference concurrence and entropy closed forms vs the eigen route, and
/// monotone decay of C with k.
inline CheckResult check_reference_entanglement(const VerifyConfig& cfg) {
  double worst = 0.0;
  double prev_c = 2.0;
  for (unsigned k = 0; k <= 12; ++k) {
    const double c = reference_concurrence_closed(k);
    if (c >= prev_c)
      return {"reference-entanglement", false, c, "C(k) not strictly decreasing"};
    prev_c = c;
    if (k > 6) continue;
    auto refs = reference_states(k, 4);
    for (const SuperState* s : {&refs.L_plus, &refs.L_minus, &refs.B_plus, &refs.B_minus})
      worst = std::max(worst, std::abs(concurrence_gram(*s) - c));
    worst = std::max(worst, std::abs(von_neumann(reduce_fermion(refs.L_plus)) -
                                     reference_entropy_closed(k)));
    worst = std::max(worst, std::abs(entropy_from_concurrence(c) - reference_entropy_closed(k)));
  }
  return detail::make_result("reference-entanglement", worst, cfg.tol);
}

// ---------------------------------------------------------------------------

inline VerifyReport run_verify(const VerifyConfig& cfg = {}) {
  VerifyReport rep;
  auto add = [&](CheckResult r) {
    rep.all_pass = rep.all_pass && r.pass;
    rep.checks.push_back(std::move(r));
  };

  add(check_binet_exactness());
  add(check_triple_recurrence_all());
  add(check_conjugation_homomorphism(cfg.seed));
  add(check_power_split());

  add(check_pq_fibonacci(cfg.tol));
  add(check_exp_fixed_point());
  add(check_derivative_point_vs_series(cfg.seed, cfg.tol));
  add(check_exp_positivity_conjugation(cfg.tol));

  add(check_quantum_algebra(cfg));
  add(check_number_ladder_commutators(cfg));
  add(check_shift_identities(cfg));
  add(check_diagonal_recursions(cfg));
  add(check_spectrum_recurrence());
  add(check_spectrum_alt_form());
  add(check_spectrum_closed_form(cfg));
  add(check_nonlinear_map(cfg));
  add(check_fermionic_difference(cfg));

  add(check_supercharges(cfg));
  add(check_super_binet(cfg));
  add(check_partial_trace(cfg));
  add(check_super_number_states(cfg));
  add(check_energy_ratio(cfg));
  add(check_susy_asymptotics(cfg));

  add(check_coherent_eigenstates(cfg));
  add(check_coherent_inner_products(cfg));
  add(check_two_term_relation(cfg));
  add(check_super_coherent_families(cfg));
  add(check_reference_states(cfg));
  add(check_symmetry_operator(cfg));
  add(check_normalizer_exponents(cfg));

  add(check_representation_triangle(cfg));
  add(check_frobenius_extremum(cfg));
  add(check_entropy_consistency(cfg));
  add(check_bloch_concurrence(cfg));
  add(check_coherent_concurrence(cfg));
  add(check_geometry_area(cfg));
  add(check_reference_entanglement(cfg));

  return rep;
}

}  // namespace golden
