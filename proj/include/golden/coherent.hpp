#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "golden/fock.hpp"
#include "golden/qcalc.hpp"
#include "golden/susy.hpp"

namespace golden {

enum class Sign { Plus, Minus };
inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

/// Raised when a closed-form normalizer disagrees with the directly summed
/// norm; carries both values instead of silently picking one.
struct normalizer_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct cutoff_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoherentOptions {
  int max_dim = 48;
  int min_dim = 2;
  double residual_target = 5e-11;   // per-component truncation budget
  double family_residual = 1e-9;    // assembled super-coherent eigen residual
};

/**
 * Boson-space vector with the coherent amplitude law at level k.
 *
 * derived = false: amp_n = (beta/lambda)^n / sqrt(F_n^(k)!)   (state |beta/lambda>)
 * derived = true:  amp_0 = 0, amp_n = F_n^(k) beta^(n-1) / (lambda^n sqrt(F_n^(k)!))
 * i.e. the image |beta'/lambda> of |beta/lambda> under the golden derivative.
 * The derived state is DEFINED by this amplitude law, not by applying an
 * operator at finite cutoff.
 */
struct CoherentVector {
  unsigned k = 0;
  Complex beta{0.0, 0.0};
  double scale = 1.0;
  bool derived = false;
  bool normalized = false;
  Vec amps;
  double norm_sq = 0.0;  // squared norm of the unnormalized amplitude law

  int dim() const { return static_cast<int>(amps.size()); }
};

namespace detail {

inline Vec coherent_amps(unsigned k, Complex beta, double lambda, bool derived, int d) {
  auto fib = fib_divisor_doubles(k, static_cast<std::size_t>(d));
  Vec amps = Vec::Zero(d);
  const Complex bl = beta / lambda;
  if (!derived) {
    Complex a{1.0, 0.0};
    amps(0) = a;
    for (int n = 1; n < d; ++n) {
      a *= bl / std::sqrt(fib[static_cast<std::size_t>(n)]);
      amps(n) = a;
    }
  } else {
    if (d >= 2) {
      Complex a = Complex{1.0, 0.0} / lambda;  // F_1 = 1, sqrt(F_1!) = 1
      amps(1) = a;
      for (int n = 2; n < d; ++n) {
        const double fn = fib[static_cast<std::size_t>(n)];
        const double fprev = fib[static_cast<std::size_t>(n) - 1];
        a *= (fn / fprev) * bl / std::sqrt(fn);
        amps(n) = a;
      }
    }
  }
  return amps;
}

inline int adaptive_dim(unsigned k, Complex beta, double lambda, bool derived,
                        const CoherentOptions& opts) {
  auto fib = fib_divisor_doubles(k, static_cast<std::size_t>(opts.max_dim) + 1);
  const double r = std::abs(beta / lambda);
  const double gain = std::max(1.0, std::max(std::abs(beta), r));
  double a = derived ? (1.0 / std::abs(lambda)) : 1.0;
  double norm_sq = derived ? 0.0 : 1.0;
  int n = derived ? 1 : 0;
  if (derived) norm_sq = a * a;
  for (; n + 1 < opts.max_dim;) {
    const double norm = std::sqrt(norm_sq);
    const bool tail_ok = a * a < 1e-16 * norm_sq;
    const bool resid_ok = a < opts.residual_target * norm / gain;
    if (tail_ok && resid_ok && n + 1 >= opts.min_dim) return n + 1;
    ++n;
    const double fn = fib[static_cast<std::size_t>(n)];
    double step = r / std::sqrt(fn);
    if (derived && n >= 2) step *= fn / fib[static_cast<std::size_t>(n) - 1];
    a *= step;
    norm_sq += a * a;
  }
  throw cutoff_error("coherent state tail does not meet criterion within max_dim=" +
                     std::to_string(opts.max_dim) + " (raise it)");
}

}  // namespace detail

/// Build the amplitude law at an explicit cutoff.
inline CoherentVector coherent_vector_at(unsigned k, Complex beta, double lambda, bool derived,
                                         bool normalize, int d) {
  if (lambda == 0.0) throw std::invalid_argument("coherent_vector: scale lambda must be nonzero");
  CoherentVector v;
  v.k = k;
  v.beta = beta;
  v.scale = lambda;
  v.derived = derived;
  v.amps = detail::coherent_amps(k, beta, lambda, derived, d);
  v.norm_sq = v.amps.squaredNorm();
  if (normalize) {
    if (v.norm_sq == 0.0) throw std::invalid_argument("coherent_vector: zero state");
    v.amps /= std::sqrt(v.norm_sq);
    v.normalized = true;
  }
  return v;
}

/// Build with adaptive cutoff: the last kept amplitude passes the tail
/// criterion and stays below the truncation budget.
inline CoherentVector coherent_vector(unsigned k, Complex beta, double lambda, bool derived,
                                      bool normalize, const CoherentOptions& opts = {}) {
  const int d = detail::adaptive_dim(k, beta, lambda, derived, opts);
  return coherent_vector_at(k, beta, lambda, derived, normalize, d);
}

/// Eigenstate |beta> of b_k (normalized on request).
inline CoherentVector coherent_state(unsigned k, Complex beta, bool normalize = false,
                                     const CoherentOptions& opts = {}) {
  return coherent_vector(k, beta, 1.0, false, normalize, opts);
}

/// Golden-derivative image |beta'/lambda>, unnormalized.
inline CoherentVector derived_state(unsigned k, Complex beta, double lambda,
                                    const CoherentOptions& opts = {}) {
  return coherent_vector(k, beta, lambda, true, false, opts);
}

/// <x|y> over the stored amplitudes (zero-padded to the longer cutoff).
inline Complex inner(const CoherentVector& x, const CoherentVector& y) {
  const int d = std::min(x.dim(), y.dim());
  return x.amps.head(d).dot(y.amps.head(d));
}

/// Relative eigenvalue residual ||(b_k - beta/lambda)|v>|| / ||v||.
inline double eigen_residual(const CoherentVector& v) {
  auto [b, bdag] = ladder_ops(v.k, std::max(2, v.dim()));
  const Vec r = b.mat * v.amps - (v.beta / v.scale) * v.amps;
  return r.norm() / v.amps.norm();
}

// --- closed-form inner products for the unnormalized amplitude laws ---

/// <beta|alpha> = e_F^(conj(beta) alpha)
inline Complex inner_plain_closed(unsigned k, Complex beta, Complex alpha) {
  return golden_exp(k, std::conj(beta) * alpha);
}

/// <beta/lambda|beta/mu> = e_F^(|beta|^2/(lambda mu))
inline double inner_scaled_closed(unsigned k, Complex beta, double lambda, double mu) {
  return golden_exp(k, std::norm(beta) / (lambda * mu));
}

/// <beta'/lambda|beta/mu> = beta/(lambda mu) e_F^(|beta|^2/(lambda mu))
inline Complex inner_primed_plain_closed(unsigned k, Complex beta, double lambda, double mu) {
  const double x = std::norm(beta) / (lambda * mu);
  return beta / (lambda * mu) * golden_exp(k, x);
}

/**
 * <beta'/lambda|beta'/mu>, which has two equivalent representations:
 *   phi form:  (phi^k x e_F^x + e_F^(phi'^k x)) / (lambda mu)
 *   phi' form: (phi'^k x e_F^x + e_F^(phi^k x)) / (lambda mu)
 * with x = |beta|^2/(lambda mu).
 */
inline double inner_primed_primed_closed(unsigned k, Complex beta, double lambda, double mu,
                                         bool phi_form = true) {
  const double x = std::norm(beta) / (lambda * mu);
  if (phi_form) return (phi_pow(k) * x * golden_exp(k, x) + golden_exp(k, phi_conj_pow(k) * x)) / (lambda * mu);
  return (phi_conj_pow(k) * x * golden_exp(k, x) + golden_exp(k, phi_pow(k) * x)) / (lambda * mu);
}

// --- super-annihilation, symmetry, and the coherent families ---

/**
 * Golden super-annihilation operator
 *   A_{+-k}   = [[phi^k b_k, +-1], [0, phi'^k b_k]]
 * and its block transpose (the +-1 moves to the lower-left corner).
 */
inline SuperOperator super_annihilator(unsigned k, Sign sign, bool transposed, int d) {
  if (d < 2) throw std::invalid_argument("super_annihilator: d must be at least 2");
  auto [b, bdag] = ladder_ops(k, d);
  const Mat corner = sign_value(sign) * Mat::Identity(d, d);
  const Mat z = Mat::Zero(d, d);
  const Mat upper = phi_pow(k) * b.mat;
  const Mat lower = phi_conj_pow(k) * b.mat;
  if (transposed) return {k, d, 1, upper, z, corner, lower};
  return {k, d, 1, upper, corner, z, lower};
}

/// Closed form A^n_{+-k} = [[phi^(kn) b^n, +-F_n^(k) b^(n-1)], [0, phi'^(kn) b^n]].
inline SuperOperator super_annihilator_power(unsigned k, Sign sign, unsigned n, int d) {
  if (n < 1) throw std::invalid_argument("super_annihilator_power: n must be >= 1");
  auto [b, bdag] = ladder_ops(k, d);
  Mat bn = Mat::Identity(d, d), bnm1 = Mat::Identity(d, d);
  for (unsigned i = 0; i < n; ++i) {
    if (i == n - 1) bnm1 = bn;
    bn = b.mat * bn;
  }
  const double fn = fib_divisor(k, n).convert_to<double>();
  return {k, d, static_cast<int>(n),
          std::pow(phi_pow(k), static_cast<double>(n)) * bn,
          sign_value(sign) * fn * bnm1,
          Mat::Zero(d, d),
          std::pow(phi_conj_pow(k), static_cast<double>(n)) * bn};
}

/**
 * Alternative split of the same power:
 * F_n^(k) [[phi^k b^n, +-b^(n-1)], [0, phi'^k b^n]]
 * + (-1)^(k+1) F_{n-1}^(k) blockdiag(b^n, b^n).
 */
inline SuperOperator super_annihilator_power_split(unsigned k, Sign sign, unsigned n, int d) {
  if (n < 1) throw std::invalid_argument("super_annihilator_power_split: n must be >= 1");
  auto [b, bdag] = ladder_ops(k, d);
  Mat bn = Mat::Identity(d, d), bnm1 = Mat::Identity(d, d);
  for (unsigned i = 0; i < n; ++i) {
    if (i == n - 1) bnm1 = bn;
    bn = b.mat * bn;
  }
  const double fn = fib_divisor(k, n).convert_to<double>();
  const double fnm1 = fib_divisor(k, n - 1).convert_to<double>();
  const double parity = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
  return {k, d, static_cast<int>(n),
          fn * phi_pow(k) * bn + parity * fnm1 * bn,
          sign_value(sign) * fn * bnm1,
          Mat::Zero(d, d),
          fn * phi_conj_pow(k) * bn + parity * fnm1 * bn};
}

/**
 * Symmetry operator S_{-+k} = [[phi'^k b_k, -+1], [0, phi^k b_k]]; the sign
 * argument is the corner sign, so [A_{+-k}, S_{-+k}] = 0 pairs opposite signs.
 */
inline SuperOperator symmetry_operator(unsigned k, Sign sign, int d) {
  if (d < 2) throw std::invalid_argument("symmetry_operator: d must be at least 2");
  auto [b, bdag] = ladder_ops(k, d);
  return {k, d, 1,
          phi_conj_pow(k) * b.mat,
          sign_value(sign) * Mat::Identity(d, d),
          Mat::Zero(d, d),
          phi_pow(k) * b.mat};
}

/// Closed form S^n: [[phi'^(kn) b^n, sign*F_n^(k) b^(n-1)], [0, phi^(kn) b^n]].
inline SuperOperator symmetry_power(unsigned k, Sign sign, unsigned n, int d) {
  SuperOperator a = super_annihilator_power(k, sign, n, d);
  std::swap(a.ul, a.lr);
  return a;
}

inline SuperOperator symmetry_power_split(unsigned k, Sign sign, unsigned n, int d) {
  SuperOperator a = super_annihilator_power_split(k, sign, n, d);
  std::swap(a.ul, a.lr);
  return a;
}

enum class Family { SepUp, SepDown, LPlus, LMinus, BPlus, BMinus };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::SepUp: return "sep-up";
    case Family::SepDown: return "sep-down";
    case Family::LPlus: return "L+";
    case Family::LMinus: return "L-";
    case Family::BPlus: return "B+";
    case Family::BMinus: return "B-";
  }
  return "?";
}

/// The annihilation operator whose eigenstate the family is: A for sep-up and
/// L-+ (opposite corner sign), the block transpose for sep-down and B-+.
inline SuperOperator family_annihilator(Family f, unsigned k, int d) {
  switch (f) {
    case Family::SepUp: return super_annihilator(k, Sign::Plus, false, d);
    case Family::LPlus: return super_annihilator(k, Sign::Minus, false, d);
    case Family::LMinus: return super_annihilator(k, Sign::Plus, false, d);
    case Family::SepDown: return super_annihilator(k, Sign::Plus, true, d);
    case Family::BPlus: return super_annihilator(k, Sign::Minus, true, d);
    case Family::BMinus: return super_annihilator(k, Sign::Plus, true, d);
  }
  throw std::logic_error("family_annihilator: unknown family");
}

struct SuperCoherentFamily {
  Family family = Family::SepUp;
  unsigned k = 0;
  Complex beta{0.0, 0.0};
  SuperState state;          // normalized
  double norm_sq_closed = 0.0;
  double norm_sq_direct = 0.0;
  double residual = 0.0;     // ||(A - beta) state||
  int dim = 0;
};

namespace detail {

inline std::pair<Vec, Vec> family_components(Family f, unsigned k, Complex beta, int d) {
  const double pk = phi_pow(k);
  const double qk = phi_conj_pow(k);
  const double mk = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
  const Vec zero = Vec::Zero(d);
  switch (f) {
    case Family::SepUp:
      return {coherent_amps(k, beta, pk, false, d), zero};
    case Family::SepDown:
      return {zero, coherent_amps(k, beta, qk, false, d)};
    case Family::LPlus:
    case Family::LMinus: {
      const double s = (f == Family::LPlus) ? 1.0 : -1.0;
      Vec up = mk * coherent_amps(k, beta, mk, true, d);
      Vec low = s * pk * coherent_amps(k, beta, qk, false, d);
      return {up, low};
    }
    case Family::BPlus:
    case Family::BMinus: {
      const double s = (f == Family::BPlus) ? 1.0 : -1.0;
      Vec up = s * qk * coherent_amps(k, beta, pk, false, d);
      Vec low = mk * coherent_amps(k, beta, mk, true, d);
      return {up, low};
    }
  }
  throw std::logic_error("family_components: unknown family");
}

inline double family_norm_sq_closed(Family f, unsigned k, Complex beta) {
  const double x = std::norm(beta);
  const double pk = phi_pow(k);
  const double qk = phi_conj_pow(k);
  switch (f) {
    case Family::SepUp:
      return golden_exp(k, x / (pk * pk));
    case Family::SepDown:
      return golden_exp(k, x / (qk * qk));
    case Family::LPlus:
    case Family::LMinus:
      return pk * pk * golden_exp(k, pk * pk * x) + pk * x * golden_exp(k, x) +
             golden_exp(k, qk * x);
    case Family::BPlus:
    case Family::BMinus:
      return qk * qk * golden_exp(k, qk * qk * x) + qk * x * golden_exp(k, x) +
             golden_exp(k, pk * x);
  }
  throw std::logic_error("family_norm_sq_closed: unknown family");
}

}  // namespace detail

/**
 * Build a normalized super-coherent state of the given family and check it:
 * the eigenvalue residual against the paired annihilation operator and the
 * closed-form normalizer against the directly summed norm. A normalizer
 * disagreement beyond 1e-8 relative raises normalizer_mismatch.
 */
inline SuperCoherentFamily super_coherent(Family f, unsigned k, Complex beta,
                                          const CoherentOptions& opts = {}) {
  // Component cutoffs only seed the dimension; the assembled residual is
  // measured below and the state regrown until it meets family_residual.
  CoherentOptions comp = opts;
  comp.residual_target = 8.0 * opts.residual_target / std::max(1.0, phi_pow(k));
  int d = opts.min_dim;
  const double pk = phi_pow(k), qk = phi_conj_pow(k), mk = (k % 2 == 0) ? 1.0 : -1.0;
  for (auto [lam, der] : {std::pair<double, bool>{pk, false}, {qk, false}, {mk, true}}) {
    d = std::max(d, detail::adaptive_dim(k, beta, lam, der, comp));
  }

  for (;; d += 4) {
    auto [up, low] = detail::family_components(f, k, beta, d);
    SuperCoherentFamily out;
    out.family = f;
    out.k = k;
    out.beta = beta;
    out.dim = d;
    out.norm_sq_direct = up.squaredNorm() + low.squaredNorm();
    out.norm_sq_closed = detail::family_norm_sq_closed(f, k, beta);
    const double rel = std::abs(out.norm_sq_direct - out.norm_sq_closed) /
                       std::max(1.0, out.norm_sq_closed);
    if (rel > 1e-8)
      throw normalizer_mismatch("super_coherent " + std::string(to_string(f)) +
                                ": closed-form normalizer " + std::to_string(out.norm_sq_closed) +
                                " vs direct norm " + std::to_string(out.norm_sq_direct));
    const double nrm = std::sqrt(out.norm_sq_direct);
    out.state = SuperState{k, up / nrm, low / nrm};
    SuperOperator a = family_annihilator(f, k, d);
    SuperState r = apply(a, out.state);
    r.psi0 -= beta * out.state.psi0;
    r.psi1 -= beta * out.state.psi1;
    out.residual = std::sqrt(r.norm_sq());
    if (out.residual <= opts.family_residual) return out;
    if (d + 4 > opts.max_dim)
      throw cutoff_error("super_coherent: residual " + std::to_string(out.residual) +
                         " above target at max_dim");
  }
}

struct ReferenceStates {
  SuperState L_plus, L_minus, B_plus, B_minus;
};

/**
 * The four beta -> 0 limits:
 *   |L+-> = (|0>_f |1;k> +- phi^k |1>_f |0;k>) / sqrt(1 + phi^(2k))
 *   |B+-> = (+-phi'^k |0>_f |0;k> + |1>_f |1;k>) / sqrt(1 + phi'^(2k))
 * annihilated by A_{+-k} and its transpose respectively.
 */
inline ReferenceStates reference_states(unsigned k, int d) {
  if (d < 2) throw std::invalid_argument("reference_states: d must be at least 2");
  const double pk = phi_pow(k), qk = phi_conj_pow(k);
  const double nl = std::sqrt(1.0 + pk * pk);
  const double nb = std::sqrt(1.0 + qk * qk);
  ReferenceStates r;
  for (SuperState* s : {&r.L_plus, &r.L_minus, &r.B_plus, &r.B_minus})
    *s = SuperState{k, Vec::Zero(d), Vec::Zero(d)};
  r.L_plus.psi0(1) = 1.0 / nl;
  r.L_plus.psi1(0) = pk / nl;
  r.L_minus.psi0(1) = 1.0 / nl;
  r.L_minus.psi1(0) = -pk / nl;
  r.B_plus.psi0(0) = qk / nb;
  r.B_plus.psi1(1) = 1.0 / nb;
  r.B_minus.psi0(0) = -qk / nb;
  r.B_minus.psi1(1) = 1.0 / nb;
  return r;
}

enum class ReferenceSide { L, B };

/**
 * Normalized combination of same-kernel reference states: on the L side
 * c0 |0, sep-up> + c1 |L_{-+}>, annihilated by A_{+-k}; on the B side the
 * sep-down/B combination annihilated by the transpose.
 */
inline SuperState reference_combination(Complex c0, Complex c1, unsigned k, Sign sign,
                                        ReferenceSide side, int d) {
  if (c0 == Complex{0.0, 0.0} && c1 == Complex{0.0, 0.0})
    throw std::invalid_argument("reference_combination: zero coefficients");
  auto refs = reference_states(k, d);
  SuperState s{k, Vec::Zero(d), Vec::Zero(d)};
  if (side == ReferenceSide::L) {
    s.psi0(0) = c0;  // vacuum sep-up limit
    const SuperState& l = (sign == Sign::Plus) ? refs.L_minus : refs.L_plus;
    s.psi0 += c1 * l.psi0;
    s.psi1 += c1 * l.psi1;
  } else {
    s.psi1(0) = c0;  // vacuum sep-down limit
    const SuperState& bref = (sign == Sign::Plus) ? refs.B_minus : refs.B_plus;
    s.psi0 += c1 * bref.psi0;
    s.psi1 += c1 * bref.psi1;
  }
  return s.normalize();
}

}  // namespace golden
