#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "golden/coherent.hpp"
#include "golden/susy.hpp"

namespace golden {

struct real_state_required : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/**
 * Hermitian, unit-trace, positive-semidefinite matrix. Hermiticity and trace
 * are enforced on construction; positivity is checked where eigenvalues are
 * actually computed (clamping round-off above -1e-10).
 */
struct DensityMatrix {
  Mat rho;

  int dim() const { return static_cast<int>(rho.rows()); }

  static DensityMatrix from(Mat m, double tol = 1e-12) {
    if (m.rows() != m.cols()) throw std::invalid_argument("DensityMatrix: not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol)
      throw std::invalid_argument("DensityMatrix: trace must be 1");
    return {std::move(m)};
  }

  double purity() const { return rho.squaredNorm(); }  // tr rho^2 = ||rho||_F^2

  std::vector<double> eigenvalues(double clamp = 1e-10) const {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
      double v = es.eigenvalues()(i);
      if (v < -clamp)
        throw std::domain_error("DensityMatrix: negative eigenvalue " + std::to_string(v));
      out.push_back(std::max(v, 0.0));
    }
    return out;
  }
};

/// rho_b = |psi0><psi0| + |psi1><psi1| for a normalized state.
inline DensityMatrix reduce_boson(const SuperState& s) {
  if (!s.is_normalized())
    throw std::invalid_argument("reduce_boson: state is not normalized");
  Mat rho = s.psi0 * s.psi0.adjoint() + s.psi1 * s.psi1.adjoint();
  return DensityMatrix::from(std::move(rho));
}

/// 2x2 fermionic reduction; entry (i, j) = <psi_j|psi_i>.
inline DensityMatrix reduce_fermion(const SuperState& s) {
  if (!s.is_normalized())
    throw std::invalid_argument("reduce_fermion: state is not normalized");
  Mat rho(2, 2);
  rho(0, 0) = s.psi0.squaredNorm();
  rho(1, 1) = s.psi1.squaredNorm();
  rho(0, 1) = s.psi1.dot(s.psi0);
  rho(1, 0) = std::conj(rho(0, 1));
  return DensityMatrix::from(std::move(rho));
}

/// 2x2 Hermitian metric of the two boson components.
struct GramForm {
  double g00 = 0.0, g11 = 0.0;
  Complex g01{0.0, 0.0};

  double det() const { return g00 * g11 - std::norm(g01); }
};

inline GramForm gram_form(const Vec& psi0, const Vec& psi1) {
  GramForm g;
  g.g00 = psi0.squaredNorm();
  g.g11 = psi1.squaredNorm();
  g.g01 = psi0.dot(psi1);
  return g;
}

/// C = 2 sqrt(det G); Cauchy-Schwarz guarantees det G >= 0, so negative
/// round-off is clamped before the root.
inline double concurrence_gram(const Vec& psi0, const Vec& psi1) {
  return 2.0 * std::sqrt(std::max(0.0, gram_form(psi0, psi1).det()));
}

inline double concurrence_gram(const SuperState& s) { return concurrence_gram(s.psi0, s.psi1); }

/// C = 2 sqrt(sum_{n<m} |c_{0n} c_{1m} - c_{0m} c_{1n}|^2) over the 2 x d
/// coefficient array (rows are the fermion components).
inline double concurrence_minors(const Eigen::Matrix2Xcd& c) {
  double acc = 0.0;
  const int d = static_cast<int>(c.cols());
  for (int n = 0; n < d; ++n)
    for (int m = n + 1; m < d; ++m) acc += std::norm(c(0, n) * c(1, m) - c(0, m) * c(1, n));
  return 2.0 * std::sqrt(acc);
}

inline double concurrence_minors(const SuperState& s) {
  Eigen::Matrix2Xcd c(2, s.dim());
  c.row(0) = s.psi0.transpose();
  c.row(1) = s.psi1.transpose();
  return concurrence_minors(c);
}

/// C = sqrt(2) sqrt(1 - tr rho^2), the linear-entropy form. Works for the
/// reduced matrix of either subsystem and any dimension.
inline double concurrence_from_purity(const DensityMatrix& rho) {
  return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - rho.purity()));
}

inline double log2_safe(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

/// Von Neumann entropy -sum lambda_i log2 lambda_i with 0 log 0 = 0.
inline double von_neumann(const DensityMatrix& rho) {
  double e = 0.0;
  for (double lam : rho.eigenvalues()) e -= lam * log2_safe(lam);
  return e;
}

/// Entropy of a pure bipartite state with fermionic concurrence C: the 2x2
/// reduction has spectrum (1 +- sqrt(1 - C^2))/2.
inline double entropy_from_concurrence(double c) {
  if (c < 0.0 || c > 1.0 + 1e-12)
    throw std::domain_error("entropy_from_concurrence: need 0 <= C <= 1");
  const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
  const double lp = (1.0 + r) / 2.0, lm = (1.0 - r) / 2.0;
  return -lp * log2_safe(lp) - lm * log2_safe(lm);
}

/// Reference-state concurrence 2 phi^k / (1 + phi^(2k)); equals 1 at k = 0
/// and decays to zero with k.
inline double reference_concurrence_closed(unsigned k) {
  const double pk = phi_pow(k);
  return 2.0 * pk / (1.0 + pk * pk);
}

/// Reference-state entropy log2(phi^(2k)+1) - 2 phi^(2k)/(phi^(2k)+1) log2(phi^k).
inline double reference_entropy_closed(unsigned k) {
  const double p2 = phi_pow(k) * phi_pow(k);
  return std::log2(p2 + 1.0) - 2.0 * p2 / (p2 + 1.0) * std::log2(phi_pow(k));
}

struct FrobeniusReport {
  double frobenius_norm_sq = 0.0;  // tr rho^2
  double concurrence = 0.0;        // sqrt(2 (1 - tr rho^2))
  double c_max = 0.0;              // sqrt(2 (n-1)/n)
  double shell_position = 0.0;     // ||rho||_F, lies in [1/sqrt(n), 1]
};

/**
 * Locate a reduced density matrix in the Frobenius shell: separable
 * reductions sit on the unit sphere, maximally mixed ones at radius
 * 1/sqrt(n) where the concurrence peaks at C_max(n).
 */
inline FrobeniusReport frobenius_classify(const DensityMatrix& rho) {
  FrobeniusReport r;
  r.frobenius_norm_sq = rho.purity();
  r.concurrence = concurrence_from_purity(rho);
  const double n = static_cast<double>(rho.dim());
  r.c_max = std::sqrt(2.0 * (n - 1.0) / n);
  r.shell_position = std::sqrt(r.frobenius_norm_sq);
  return r;
}

/// 4 * sum of 2x2 principal minors of rho; equals C^2 for unit trace.
inline double principal_minors_concurrence_sq(const DensityMatrix& rho) {
  double acc = 0.0;
  const int n = rho.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      acc += rho.rho(i, i).real() * rho.rho(j, j).real() - std::norm(rho.rho(i, j));
  return 4.0 * acc;
}

/// Area of the parallelogram spanned by two real vectors,
/// A = sqrt(|a|^2 |b|^2 - (a.b)^2).
inline double parallelogram_area(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("parallelogram_area: size mismatch");
  const double det = a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2);
  return std::sqrt(std::max(0.0, det));
}

/// Sum of squared projected areas onto the coordinate planes; equals A^2.
inline double parallelogram_area_sq_projected(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double acc = 0.0;
  for (int n = 0; n < a.size(); ++n)
    for (int m = n + 1; m < a.size(); ++m) acc += std::pow(a(n) * b(m) - a(m) * b(n), 2);
  return acc;
}

/**
 * C = 2A for a normalized state with real amplitudes. Complex inputs are
 * rejected: the area reading only applies to real states.
 */
inline double concurrence_real_area(const SuperState& s, double imag_tol = 1e-14) {
  for (const Vec* v : {&s.psi0, &s.psi1})
    if (v->imag().cwiseAbs().maxCoeff() > imag_tol)
      throw real_state_required("concurrence_real_area: state has complex amplitudes");
  return 2.0 * parallelogram_area(s.psi0.real(), s.psi1.real());
}

/**
 * Closed-form concurrence of the entangled super-coherent families, built
 * from level-k golden exponentials of x = |beta|^2. Validated for the
 * |beta| ranges the adaptive cutoff supports (|beta| <= 1.5 at k = 0,
 * |beta| <= 3 for k >= 1).
 */
inline double coherent_concurrence_closed(unsigned k, Complex beta, ReferenceSide side) {
  const double limit = (k == 0) ? 1.5 : 3.0;
  if (std::abs(beta) > limit)
    throw std::domain_error("coherent_concurrence_closed: |beta| outside supported range");
  const double x = std::norm(beta);
  const double pk = phi_pow(k), qk = phi_conj_pow(k);
  auto e = [&](double arg) { return golden_exp(k, arg); };
  if (side == ReferenceSide::L) {
    const double inner = e(pk * x) * e(pk * pk * x) + qk * x * e(x) * e(pk * pk * x) -
                         pk * pk * x * e(pk * x) * e(pk * x);
    const double norm = pk * pk * e(pk * pk * x) + pk * x * e(x) + e(qk * x);
    return 2.0 * pk * std::sqrt(std::max(0.0, inner)) / norm;
  }
  const double inner = e(qk * x) * e(qk * qk * x) + pk * x * e(x) * e(qk * qk * x) -
                       qk * qk * x * e(qk * x) * e(qk * x);
  const double norm = qk * qk * e(qk * qk * x) + qk * x * e(x) + e(pk * x);
  return 2.0 * std::abs(qk) * std::sqrt(std::max(0.0, inner)) / norm;
}

}  // namespace golden
