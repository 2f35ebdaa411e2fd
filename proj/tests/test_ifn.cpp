#include <doctest.h>

#include <cmath>

#include "ifns/ifn.hpp"

using namespace ifns;

TEST_CASE("standard pair closed-form values") {
  IFNormPair pair = standard_pair(NormChoice::Absolute);
  CHECK(evaluate(pair, {1.0}, 1.0).mu == doctest::Approx(0.5));
  CHECK(evaluate(pair, {1.0}, 1.0).nu == doctest::Approx(0.5));
  CHECK(evaluate(pair, {3.0}, 1.0).mu == doctest::Approx(0.25));
  CHECK(evaluate(pair, {3.0}, 1.0).nu == doctest::Approx(0.75));
  CHECK(evaluate(pair, {0.0}, 2.5).mu == 1.0);
  CHECK(evaluate(pair, {0.0}, 2.5).nu == 0.0);
}

TEST_CASE("nonpositive scale pins mu to 0 and nu to 1") {
  IFNormPair pair = standard_pair(NormChoice::Euclidean);
  CHECK(evaluate(pair, {1.0, 2.0}, 0.0).mu == 0.0);
  CHECK(evaluate(pair, {1.0, 2.0}, 0.0).nu == 1.0);
  CHECK(evaluate(pair, {1.0, 2.0}, -3.0).mu == 0.0);
  CHECK(evaluate(pair, {1.0, 2.0}, -3.0).nu == 1.0);
}

TEST_CASE("non-finite input rejected") {
  IFNormPair pair = standard_pair(NormChoice::Absolute);
  CHECK_THROWS_AS(evaluate(pair, {std::nan("")}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(pair, {1.0}, std::nan("")), std::invalid_argument);
}

TEST_CASE("mu + nu never exceeds 1 on samples") {
  IFNormPair pair = standard_pair(NormChoice::Supremum);
  for (int i = 0; i < 200; ++i) {
    Vec x = {0.1 * i - 7.0, 3.0 - 0.05 * i};
    double t = 0.01 * (i + 1);
    MuNu v = evaluate(pair, x, t);
    CHECK(v.mu + v.nu <= 1.0 + 1e-15);
    CHECK(v.mu >= 0.0);
    CHECK(v.nu <= 1.0);
  }
}

TEST_CASE("standard pair satisfies all conditions in dims 1 and 3") {
  for (int dim : {1, 3}) {
    IFNormPair pair =
        standard_pair(dim == 1 ? NormChoice::Absolute : NormChoice::Euclidean);
    AxiomReport rep = check_axioms(pair, 5000, 42, dim);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("constant-mu pair is caught") {
  AxiomReport rep = check_axioms(constant_mu_pair(), 5000, 7, 1);
  CHECK_FALSE(rep.all_pass());
  const AxiomCheck* b = rep.find("b");
  REQUIRE(b != nullptr);
  CHECK_FALSE(b->pass);
  CHECK_FALSE(b->witness.empty());
}

TEST_CASE("doubled-nu pair leaves the unit interval and is caught") {
  AxiomReport rep = check_axioms(scaled_nu_pair(NormChoice::Absolute), 5000, 7, 1);
  CHECK_FALSE(rep.all_pass());
  bool caught = false;
  for (const auto& c : rep.checks)
    if (!c.pass && !c.witness.empty()) caught = true;
  CHECK(caught);
}

TEST_CASE("broken triangle pair is caught with a witness") {
  AxiomReport rep = check_axioms(broken_triangle_pair(NormChoice::Absolute), 5000, 7, 1);
  CHECK_FALSE(rep.all_pass());
  bool caught = false;
  for (const auto& c : rep.checks)
    if (!c.pass && !c.witness.empty()) caught = true;
  CHECK(caught);
}

TEST_CASE("axiom report is deterministic in the seed") {
  IFNormPair pair = standard_pair(NormChoice::Euclidean);
  AxiomReport a = check_axioms(pair, 2000, 11, 2);
  AxiomReport b = check_axioms(pair, 2000, 11, 2);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].pass == b.checks[i].pass);
    CHECK(a.checks[i].failures == b.checks[i].failures);
  }
}
