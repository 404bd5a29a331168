#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "golden/entangle.hpp"

using golden::Complex;
using golden::DensityMatrix;
using golden::SuperState;

namespace {
SuperState random_state(std::mt19937_64& eng, int d) {
  auto uni = [&]() { return (eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  SuperState s{1, golden::Vec(d), golden::Vec(d)};
  for (int n = 0; n < d; ++n) {
    s.psi0(n) = Complex{uni(), uni()};
    s.psi1(n) = Complex{uni(), uni()};
  }
  return s.normalize();
}
}  // namespace

TEST_CASE("reductions of separable and Bloch states") {
  const int d = 6;
  // separable |0>_f (x) |n>: pure boson reduction
  SuperState sep{1, golden::Vec::Zero(d), golden::Vec::Zero(d)};
  sep.psi0(3) = 1.0;
  auto rb = golden::reduce_boson(sep);
  CHECK_THAT(rb.purity(), Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK(golden::concurrence_gram(sep) == 0.0);

  // equator state: tr rho_b^2 = 1/2
  SuperState eq = golden::super_number_state(2, 1, golden::BlochPoint{std::numbers::pi / 2, 0.0}, d);
  CHECK_THAT(golden::reduce_boson(eq).purity(), Catch::Matchers::WithinAbs(0.5, 1e-13));

  // |L+> at k = 1: tr rho_b^2 = 1 - C^2/2 = 3/5
  auto refs = golden::reference_states(1, d);
  CHECK_THAT(golden::reduce_boson(refs.L_plus).purity(),
             Catch::Matchers::WithinAbs(0.6, 1e-13));
  CHECK_THAT(golden::concurrence_gram(refs.L_plus),
             Catch::Matchers::WithinAbs(0.89442719099991586, 1e-12));

  // rejects unnormalized input
  sep.psi0(3) = 2.0;
  CHECK_THROWS_AS(golden::reduce_boson(sep), std::invalid_argument);
}

TEST_CASE("three concurrence representations coincide") {
  std::mt19937_64 eng(31);
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + static_cast<int>(eng() % 11);  // 2..12
    SuperState s = random_state(eng, d);
    const double cg = golden::concurrence_gram(s);
    const double cm = golden::concurrence_minors(s);
    const double cp = golden::concurrence_from_purity(golden::reduce_boson(s));
    CHECK(std::abs(cg - cm) < 1e-10);
    CHECK(std::abs(cg - cp) < 1e-10);
    CHECK(std::abs(golden::reduce_boson(s).purity() - golden::reduce_fermion(s).purity()) < 1e-12);

    // Gram determinant equals the fermionic-pair determinant sum
    auto g = golden::gram_form(s.psi0, s.psi1);
    double pair_sum = 0.0;
    for (int n = 0; n < d; ++n)
      for (int m = n + 1; m < d; ++m)
        pair_sum += std::norm(s.psi0(n) * s.psi1(m) - s.psi0(m) * s.psi1(n));
    CHECK(std::abs(g.det() - pair_sum) < 1e-12);
    CHECK(g.det() > -1e-12);
  }
}

TEST_CASE("bell-like minors") {
  Eigen::Matrix2Xcd c = Eigen::Matrix2Xcd::Zero(2, 4);
  c(0, 0) = std::sqrt(0.5);
  c(1, 1) = std::sqrt(0.5);
  CHECK_THAT(golden::concurrence_minors(c), Catch::Matchers::WithinAbs(1.0, 1e-14));

  // psi1 = 0 is separable
  Eigen::Matrix2Xcd sep = Eigen::Matrix2Xcd::Zero(2, 4);
  sep(0, 2) = 1.0;
  CHECK(golden::concurrence_minors(sep) == 0.0);
}

TEST_CASE("concurrence from purity endpoints") {
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(3, 3);
  pure(0, 0) = 1.0;
  CHECK(golden::concurrence_from_purity(DensityMatrix::from(pure)) == 0.0);

  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  CHECK_THAT(golden::concurrence_from_purity(DensityMatrix::from(mixed)),
             Catch::Matchers::WithinAbs(1.0, 1e-14));

  // the d -> infinity ceiling is sqrt(2)
  const int n = 512;
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
  CHECK_THAT(golden::concurrence_from_purity(DensityMatrix::from(big)),
             Catch::Matchers::WithinAbs(std::sqrt(2.0), 2e-3));
}

TEST_CASE("C = sin(theta) for super-number states") {
  const int d = 8;
  for (int i = 0; i <= 10; ++i) {
    const double theta = std::numbers::pi * i / 10.0;
    SuperState s = golden::super_number_state(3, 2, golden::BlochPoint{theta, 1.1}, d);
    CHECK_THAT(golden::concurrence_gram(s),
               Catch::Matchers::WithinAbs(std::abs(std::sin(theta)), 1e-12));
  }
}

TEST_CASE("von Neumann entropy") {
  // C = 0 -> E = 0; C = 1 -> E = 1
  CHECK(golden::entropy_from_concurrence(0.0) == 0.0);
  CHECK_THAT(golden::entropy_from_concurrence(1.0), Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(golden::entropy_from_concurrence(1.5), std::domain_error);

  // k = 0 reference states are Bell pairs
  CHECK_THAT(golden::reference_entropy_closed(0), Catch::Matchers::WithinAbs(1.0, 1e-15));

  // k = 1: frozen from the eigen-decomposition oracle
  CHECK_THAT(golden::reference_entropy_closed(1),
             Catch::Matchers::WithinAbs(0.85048962510216164, 1e-14));

  for (unsigned k = 0; k <= 6; ++k) {
    auto refs = golden::reference_states(k, 4);
    const double via_eigen = golden::von_neumann(golden::reduce_fermion(refs.L_plus));
    CHECK_THAT(via_eigen, Catch::Matchers::WithinAbs(golden::reference_entropy_closed(k), 1e-10));
    const double via_c =
        golden::entropy_from_concurrence(golden::reference_concurrence_closed(k));
    CHECK_THAT(via_c, Catch::Matchers::WithinAbs(golden::reference_entropy_closed(k), 1e-12));
  }

  // entropy consistency on random pure states
  std::mt19937_64 eng(77);
  for (int i = 0; i < 50; ++i) {
    SuperState s = random_state(eng, 2 + static_cast<int>(eng() % 9));
    const double c = std::min(1.0, golden::concurrence_gram(s));
    CHECK_THAT(golden::von_neumann(golden::reduce_fermion(s)),
               Catch::Matchers::WithinAbs(golden::entropy_from_concurrence(c), 1e-10));
  }
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad_trace = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::from(bad_trace), std::invalid_argument);

  Eigen::MatrixXcd not_herm(2, 2);
  not_herm << Complex{0.5, 0}, Complex{0.3, 0.1}, Complex{0.1, 0.2}, Complex{0.5, 0};
  CHECK_THROWS_AS(DensityMatrix::from(not_herm), std::invalid_argument);

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << Complex{1.5, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-0.5, 0};
  CHECK_THROWS_AS(DensityMatrix::from(indefinite).eigenvalues(), std::domain_error);
}

TEST_CASE("Frobenius classification") {
  auto report = [&](int n) {
    Eigen::MatrixXcd flat = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    return golden::frobenius_classify(DensityMatrix::from(flat));
  };
  CHECK_THAT(report(2).c_max, Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK_THAT(report(3).c_max, Catch::Matchers::WithinAbs(2.0 / std::sqrt(3.0), 1e-15));
  CHECK_THAT(report(4).c_max, Catch::Matchers::WithinAbs(std::sqrt(1.5), 1e-15));

  // flat spectrum attains the maximum and sits at shell radius 1/sqrt(n)
  for (int n : {2, 3, 4, 16}) {
    auto r = report(n);
    CHECK_THAT(r.concurrence, Catch::Matchers::WithinAbs(r.c_max, 1e-13));
    CHECK_THAT(r.shell_position, Catch::Matchers::WithinAbs(1.0 / std::sqrt(n), 1e-13));
  }

  // pure state sits on the unit sphere
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(4, 4);
  pure(2, 2) = 1.0;
  auto rp = golden::frobenius_classify(DensityMatrix::from(pure));
  CHECK_THAT(rp.shell_position, Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK(rp.concurrence == 0.0);

  // Lagrange extremum: random spectra never beat C_max
  std::mt19937_64 eng(5);
  auto uni = [&]() { return (eng() >> 11) * 0x1.0p-53; };
  for (int n : {2, 3, 4, 16}) {
    const double cmax = std::sqrt(2.0 * (n - 1.0) / n);
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> lam(static_cast<std::size_t>(n));
      double sum = 0.0;
      for (auto& l : lam) {
        l = -std::log(1.0 - uni());
        sum += l;
      }
      double sq = 0.0;
      for (auto& l : lam) sq += (l / sum) * (l / sum);
      CHECK(std::sqrt(2.0 * std::max(0.0, 1.0 - sq)) <= cmax + 1e-12);
    }
  }

  // C^2 equals 4 * sum of 2x2 principal minors
  std::mt19937_64 eng2(13);
  for (int i = 0; i < 20; ++i) {
    SuperState s = random_state(eng2, 6);
    auto rho = golden::reduce_boson(s);
    CHECK_THAT(golden::principal_minors_concurrence_sq(rho),
               Catch::Matchers::WithinAbs(std::pow(golden::concurrence_from_purity(rho), 2), 1e-11));
  }
}

TEST_CASE("parallelogram geometry") {
  Eigen::VectorXd a(3), b(3);
  a << 1, 2, 3;
  b << 2, 4, 6;  // parallel
  CHECK(golden::parallelogram_area(a, b) == 0.0);

  b << 0, 1, 0;
  CHECK_THAT(golden::parallelogram_area_sq_projected(a, b),
             Catch::Matchers::WithinRel(std::pow(golden::parallelogram_area(a, b), 2), 1e-13));

  // C = 2A for random real states
  std::mt19937_64 eng(3);
  for (int i = 0; i < 100; ++i) {
    auto uni = [&]() { return (eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    const int d = 2 + static_cast<int>(eng() % 9);
    SuperState s{1, golden::Vec(d), golden::Vec(d)};
    for (int n = 0; n < d; ++n) {
      s.psi0(n) = uni();
      s.psi1(n) = uni();
    }
    s.normalize();
    CHECK(std::abs(golden::concurrence_real_area(s) - golden::concurrence_gram(s)) < 1e-10);
  }

  // complex input is a typed error
  SuperState cplx{1, golden::Vec::Zero(3), golden::Vec::Zero(3)};
  cplx.psi0(0) = Complex{0.0, 1.0};
  cplx.normalize();
  CHECK_THROWS_AS(golden::concurrence_real_area(cplx), golden::real_state_required);

  // reference rectangle: sides 1/sqrt(1+phi^2k) and phi^k/sqrt(1+phi^2k)
  for (unsigned k = 0; k <= 6; ++k) {
    auto refs = golden::reference_states(k, 4);
    const Eigen::VectorXd av = refs.L_plus.psi0.real();
    const Eigen::VectorXd bv = refs.L_plus.psi1.real();
    const double pk = golden::phi_pow(k);
    CHECK_THAT(bv.norm() / av.norm(), Catch::Matchers::WithinRel(pk, 1e-13));
    CHECK_THAT(golden::parallelogram_area(av, bv),
               Catch::Matchers::WithinAbs(pk / (1.0 + pk * pk), 1e-14));
    CHECK_THAT(2.0 * golden::parallelogram_area(av, bv),
               Catch::Matchers::WithinAbs(golden::reference_concurrence_closed(k), 1e-14));
  }
  // k = 1 side ratio is the golden ratio itself
  auto refs1 = golden::reference_states(1, 4);
  CHECK_THAT(refs1.L_plus.psi1.real().norm() / refs1.L_plus.psi0.real().norm(),
             Catch::Matchers::WithinRel(golden::phi_real(), 1e-14));
}

TEST_CASE("closed-form coherent concurrence") {
  // beta -> 0 limits
  CHECK_THAT(golden::coherent_concurrence_closed(1, Complex{0, 0}, golden::ReferenceSide::L),
             Catch::Matchers::WithinAbs(0.89442719099991586, 1e-13));
  CHECK_THAT(golden::coherent_concurrence_closed(0, Complex{0, 0}, golden::ReferenceSide::L),
             Catch::Matchers::WithinAbs(1.0, 1e-13));
  CHECK_THAT(golden::coherent_concurrence_closed(0, Complex{0, 0}, golden::ReferenceSide::B),
             Catch::Matchers::WithinAbs(1.0, 1e-13));

  // against the Gram oracle on constructed states
  for (unsigned k = 0; k <= 3; ++k) {
    for (double babs : {0.25, 0.5, 0.75, 1.0}) {
      const Complex beta = std::polar(babs, 0.9);
      for (auto [side, fam] :
           {std::pair<golden::ReferenceSide, golden::Family>{golden::ReferenceSide::L,
                                                             golden::Family::LPlus},
            {golden::ReferenceSide::L, golden::Family::LMinus},
            {golden::ReferenceSide::B, golden::Family::BPlus},
            {golden::ReferenceSide::B, golden::Family::BMinus}}) {
        const double closed = golden::coherent_concurrence_closed(k, beta, side);
        const double gram = golden::concurrence_gram(golden::super_coherent(fam, k, beta).state);
        CHECK(std::abs(closed - gram) < 1e-8);
      }
    }
  }

  CHECK_THROWS_AS(golden::coherent_concurrence_closed(1, Complex{5.0, 0.0},
                                                      golden::ReferenceSide::L),
                  std::domain_error);
}

TEST_CASE("reference concurrence hierarchy") {
  CHECK(golden::reference_concurrence_closed(0) == 1.0);
  CHECK_THAT(golden::reference_concurrence_closed(1),
             Catch::Matchers::WithinAbs(0.894, 5e-4));  // matches the 3-decimal value
  double prev = 2.0;
  for (unsigned k = 0; k <= 12; ++k) {
    const double c = golden::reference_concurrence_closed(k);
    CHECK(c < prev);
    prev = c;
  }
}
