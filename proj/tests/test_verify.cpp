#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "golden/verify.hpp"

TEST_CASE("full suite passes at default tolerance") {
  golden::VerifyConfig cfg;
  auto rep = golden::run_verify(cfg);
  for (const auto& c : rep.checks) {
    INFO(c.name << ": residual " << c.max_residual << " (" << c.detail << ")");
    CHECK(c.pass);
  }
  CHECK(rep.all_pass);

  // stable check list, no duplicates
  std::set<std::string> names;
  for (const auto& c : rep.checks) names.insert(c.name);
  CHECK(names.size() == rep.checks.size());
}

TEST_CASE("injected fault in the divisor table is caught by name") {
  auto table = golden::FibDivisorTable::build(3, 20);
  table.values[7] += 1;  // corrupt one entry
  auto res = golden::check_triple_recurrence(table);
  CHECK_FALSE(res.pass);
  CHECK(res.name == "triple-recurrence");
}

TEST_CASE("tightening tol reports degrading float identities") {
  golden::VerifyConfig tight;
  tight.tol = 1e-14;
  auto rep = golden::run_verify(tight);
  int failed = 0;
  for (const auto& c : rep.checks)
    if (!c.pass) ++failed;
  CHECK(failed > 0);      // some float identities live above 1e-14
  CHECK_FALSE(rep.all_pass);

  // exact checks are immune to tol
  for (const auto& c : rep.checks) {
    if (c.name == "binet-exactness" || c.name == "triple-recurrence" ||
        c.name == "golden-power-split" || c.name == "spectrum-recurrence" ||
        c.name == "spectrum-alt-form" || c.name == "exp-fixed-point") {
      INFO(c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("seeded runs are reproducible") {
  golden::VerifyConfig cfg;
  auto a = golden::run_verify(cfg);
  auto b = golden::run_verify(cfg);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].max_residual == b.checks[i].max_residual);
  }
}
