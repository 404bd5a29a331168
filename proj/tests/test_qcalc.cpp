#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "golden/qcalc.hpp"

using golden::BigInt;
using golden::BigRat;
using golden::Complex;

namespace {

// Oracle: partial sums of sum_n z^n / F_n^(k)! in exact rationals at rational
// z, converted to double at the end. Independent of the production series.
double exp_oracle_rational(unsigned k, const BigRat& z, int terms) {
  auto fact = golden::GoldenFactorialTable::build(k, static_cast<std::size_t>(terms));
  BigRat sum = 0, zn = 1;
  for (int n = 0; n <= terms; ++n) {
    sum += zn / BigRat(fact.at(static_cast<std::size_t>(n)));
    zn *= z;
  }
  return sum.convert_to<double>();
}

}  // namespace

TEST_CASE("golden factorial recurrence") {
  for (unsigned k = 0; k <= 5; ++k) {
    auto fact = golden::GoldenFactorialTable::build(k, 20);
    auto fib = golden::FibDivisorTable::build(k, 20);
    CHECK(fact.at(0) == 1);
    for (std::size_t n = 1; n <= 20; ++n) CHECK(fact.at(n) == fib.at(n) * fact.at(n - 1));
  }
  auto f1 = golden::GoldenFactorialTable::build(1, 8);
  CHECK(f1.at(5) == 30);    // 1*1*2*3*5
  CHECK(f1.at(8) == 65520);
}

TEST_CASE("pq numbers") {
  const double phi = golden::phi_real();
  const double psi = golden::phi_conj_real();

  CHECK(golden::pq_number(phi, psi, 0) == 0.0);
  CHECK(golden::pq_number(phi, psi, 1) == 1.0);
  CHECK_THAT(golden::pq_number(phi, psi, 7), Catch::Matchers::WithinRel(13.0, 1e-13));
  CHECK_THAT(golden::pq_number(phi * phi, psi * psi, 4), Catch::Matchers::WithinRel(21.0, 1e-13));

  CHECK_THROWS_AS(golden::pq_number(1.5, 1.5, 3), std::invalid_argument);

  // rounds to the exact divisor for n <= 30, k <= 6
  for (unsigned k = 1; k <= 6; ++k) {
    auto t = golden::FibDivisorTable::build(k, 30);
    const double p = std::pow(phi, static_cast<double>(k));
    const double q = (k % 2 == 0 ? 1.0 : -1.0) / p;
    for (unsigned n = 0; n <= 30; ++n) {
      const double exact = t.at(n).convert_to<double>();
      CHECK_THAT(golden::pq_number(p, q, n),
                 Catch::Matchers::WithinRel(exact, 1e-12) ||
                     Catch::Matchers::WithinAbs(exact, 1e-12));
    }
  }
}

TEST_CASE("golden exponential against the rational oracle") {
  // frozen from the oracle: sum 1/F_n! at k = 1 and k = 2
  CHECK_THAT(exp_oracle_rational(1, BigRat(1), 40),
             Catch::Matchers::WithinAbs(3.7045028991540674, 1e-15));
  CHECK_THAT(exp_oracle_rational(2, BigRat(1), 40),
             Catch::Matchers::WithinAbs(2.3770204532064714, 1e-15));

  CHECK_THAT(golden::golden_exp(1, 1.0), Catch::Matchers::WithinAbs(3.7045028991540674, 1e-12));
  CHECK_THAT(golden::golden_exp(2, 1.0), Catch::Matchers::WithinAbs(2.3770204532064714, 1e-12));

  // k = 0 is the classical exponential
  CHECK_THAT(golden::golden_exp(0, 1.0), Catch::Matchers::WithinAbs(std::exp(1.0), 1e-12));
  CHECK_THAT(golden::golden_exp(0, -2.0), Catch::Matchers::WithinRel(std::exp(-2.0), 1e-12));

  for (unsigned k = 0; k <= 4; ++k) CHECK(golden::golden_exp(k, 0.0) == 1.0);

  // oracle sweep over rational arguments, both signs
  for (unsigned k = 1; k <= 4; ++k) {
    for (int num : {-9, -3, 1, 5, 12}) {
      const BigRat z(num, 4);
      const double want = exp_oracle_rational(k, z, 60);
      CHECK_THAT(golden::golden_exp(k, num / 4.0), Catch::Matchers::WithinRel(want, 1e-12));
    }
  }

  // reported tail bound is honest: adding one more term stays inside it
  auto full = golden::golden_exp_full(1, Complex{1.3, -0.4});
  auto tight = golden::golden_exp_full(1, Complex{1.3, -0.4}, 1e-18);
  CHECK(std::abs(full.value - tight.value) <= full.tail_bound);
}

TEST_CASE("golden exponential convergence guard") {
  CHECK_THROWS_AS(golden::golden_exp(0, 1e7), std::runtime_error);
  CHECK_THROWS_AS(golden::golden_exp(1, 1.0, -1.0), std::invalid_argument);
  // entire series: large arguments at k >= 1 stay cheap
  CHECK(std::isfinite(golden::golden_exp(2, 50.0)));
}

TEST_CASE("golden derivative at a point") {
  auto linear = [](double x) { return x; };
  for (unsigned k = 0; k <= 5; ++k) {
    CHECK_THAT(golden::golden_derivative_point(k, linear, 0.7),
               Catch::Matchers::WithinAbs(1.0, 1e-13));
    CHECK_THAT(golden::golden_derivative_point(k, linear, -2.3),
               Catch::Matchers::WithinAbs(1.0, 1e-13));
  }

  // monomial rule: D_k x^n = F_n^(k) x^(n-1)
  auto square = [](double x) { return x * x; };
  CHECK_THAT(golden::golden_derivative_point(1, square, 0.9),
             Catch::Matchers::WithinAbs(0.9, 1e-13));  // F_2 = 1
  auto cube = [](double x) { return x * x * x; };
  CHECK_THAT(golden::golden_derivative_point(3, cube, 2.0),
             Catch::Matchers::WithinRel(68.0, 1e-13));  // F_3^(3) * 4 = 17 * 4

  CHECK_THROWS_AS(golden::golden_derivative_point(1, linear, 0.0), std::domain_error);
}

TEST_CASE("series derivative") {
  // constant -> zero
  golden::GoldenSeries c;
  c.k = 2;
  c.coeffs = {Complex{1.0, 0.0}};
  CHECK(golden::golden_derivative_series(2, c).coeffs.empty());

  // z^3 at k = 2: coefficient of z^2 becomes F_3^(2) = 8
  golden::GoldenSeries z3;
  z3.k = 2;
  z3.coeffs = {Complex{0, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1.0, 0.0}};
  auto dz3 = golden::golden_derivative_series(2, z3);
  REQUIRE(dz3.coeffs.size() == 3);
  CHECK_THAT(dz3.coeffs[2].real(), Catch::Matchers::WithinAbs(8.0, 1e-14));

  // the exponential series is a fixed point, exactly in rationals
  for (unsigned k = 0; k <= 6; ++k) {
    auto s = golden::golden_exp_series_exact(k, 30);
    auto d = golden::golden_derivative_series_exact(k, s);
    for (std::size_t n = 0; n < d.coeffs.size(); ++n) CHECK(d.coeffs[n] == s.coeffs[n]);
  }
}

TEST_CASE("pointwise and series derivatives agree on polynomials") {
  std::mt19937_64 eng(11);
  auto uni = [&]() { return (eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (unsigned k = 0; k <= 6; ++k) {
    golden::GoldenSeries poly;
    poly.k = k;
    for (int n = 0; n <= 10; ++n) poly.coeffs.emplace_back(uni(), 0.0);
    auto dpoly = golden::golden_derivative_series(k, poly);
    for (int i = 0; i < 20; ++i) {
      double x = 0.0;
      while (std::abs(x) < 0.1) x = 2.0 * uni();
      const double via_point = golden::golden_derivative_point(
          k, [&](double t) { return golden::eval_series(poly, Complex{t, 0.0}).real(); }, x);
      const double via_series = golden::eval_series(dpoly, Complex{x, 0.0}).real();
      CHECK_THAT(via_point, Catch::Matchers::WithinAbs(via_series, 1e-10) ||
                                Catch::Matchers::WithinRel(via_series, 1e-10));
    }
  }
}

TEST_CASE("exponential conjugation symmetry and monotonicity") {
  for (unsigned k = 0; k <= 4; ++k) {
    const Complex z{0.8, -1.1};
    CHECK(std::abs(golden::golden_exp(k, std::conj(z)) - std::conj(golden::golden_exp(k, z))) <
          1e-14);
    double prev = golden::golden_exp(k, 0.0);
    for (double x = 0.25; x <= 4.0; x += 0.25) {
      const double cur = golden::golden_exp(k, x);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}
