#include <doctest.h>

#include <cmath>

#include "ifns/analysis.hpp"
#include "ifns/harness.hpp"

using namespace ifns;

namespace {

Grids small_grids(long M = 200) {
  Grids g = Grids::defaults();
  g.M = g.N = M;
  return g;
}

// Relaxed grids for tiny horizons: the default (t=0.01, eps=0.001) pair
// demands tails only reachable past M ~ 1000.
Grids relaxed_grids(long M = 200) {
  Grids g = small_grids(M);
  g.t_grid = {0.1, 1.0, 10.0, 100.0};
  g.eps_grid = {0.1, 0.01};
  return g;
}

IFNormPair abs_pair() { return standard_pair(NormChoice::Absolute); }

}  // namespace

TEST_CASE("grid defaults") {
  Grids g = Grids::defaults();
  REQUIRE(g.t_grid.size() == 11);
  CHECK(g.t_grid.front() == doctest::Approx(0.01));
  CHECK(g.t_grid.back() == doctest::Approx(1000.0));
  CHECK(g.eps_grid == std::vector<double>{0.1, 0.01, 0.001});
  CHECK(g.lambda_gt1.front() == 2.0);
  CHECK(g.tail() == 1000);
  CHECK_NOTHROW(g.validate());
  g.tail_start = 2000;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("constant sequence converges with n0 = 0") {
  Verdict v = convergence_verdict(constant_sequence({2.5}), abs_pair(), {2.5}, small_grids());
  CHECK(v.status == Status::Holds);
  CHECK(v.n0_found == 0);
}

TEST_CASE("alternating signs never converge") {
  Verdict v =
      convergence_verdict(compile_expression("alt(m+n)"), abs_pair(), {0.0}, small_grids());
  CHECK(v.status == Status::Fails);
  CHECK(v.witness.m >= 0);
  CHECK(v.witness.mu == doctest::Approx(v.witness.t / (v.witness.t + 1.0)));
}

TEST_CASE("geometrically damped sequence converges at horizon") {
  Verdict v = convergence_verdict(compile_expression("1+0.5^(m+n)"), abs_pair(), {1.0},
                                  relaxed_grids());
  CHECK(v.status == Status::Holds);
  CHECK(v.n0_found > 0);
  CHECK(v.n0_found <= relaxed_grids().tail());
}

TEST_CASE("cauchy verdicts") {
  CHECK(cauchy_verdict(constant_sequence({1.0}), abs_pair(), small_grids(60)).status ==
        Status::Holds);
  CHECK(cauchy_verdict(compile_expression("alt(m+n)"), abs_pair(), small_grids(60)).status ==
        Status::Fails);
  // convergent at horizon implies Cauchy at horizon
  Grids g = relaxed_grids();
  DoubleSequence s = compile_expression("3+0.4^(m+n)");
  REQUIRE(convergence_verdict(s, abs_pair(), {3.0}, g).status == Status::Holds);
  CHECK(cauchy_verdict(s, abs_pair(), g).status == Status::Holds);
}

TEST_CASE("cauchy sampling is deterministic in the seed") {
  Grids g = small_grids(80);
  Verdict a = cauchy_verdict(compile_expression("sin(m)+cos(n)"), abs_pair(), g);
  Verdict b = cauchy_verdict(compile_expression("sin(m)+cos(n)"), abs_pair(), g);
  REQUIRE(a.detail.size() == b.detail.size());
  for (std::size_t i = 0; i < a.detail.size(); ++i) CHECK(a.detail[i].n0 == b.detail[i].n0);
}

TEST_CASE("q-boundedness") {
  QBoundedResult bounded =
      q_bounded_estimate(compile_expression("alt(m+n)"), abs_pair(), small_grids());
  CHECK(bounded.status == Status::Holds);
  // inf mu = t/(t+1) exactly for the unit-magnitude lattice
  for (const auto& pt : bounded.curve)
    CHECK(pt.inf_mu == doctest::Approx(pt.t / (pt.t + 1.0)));

  // inf mu at the largest probe t is t/(t+M+N); at M=N=1000 that is
  // 1e5/1.02e5 < 0.99, under the boundedness threshold
  QBoundedResult unbounded =
      q_bounded_estimate(compile_expression("m+n"), abs_pair(), small_grids(1000));
  CHECK(unbounded.status == Status::Fails);
}

TEST_CASE("constant sequence oscillates slowly in every sense") {
  for (OscSense sense : {OscSense::S11, OscSense::S10, OscSense::S01}) {
    ConditionEstimate c =
        slow_oscillation_estimate(constant_sequence({4.0}), abs_pair(), sense, small_grids());
    CHECK(c.verdict == Status::Holds);
    for (const auto& ie : c.inner) {
      if (!ie.has_data) continue;
      CHECK(ie.mu == 1.0);
      CHECK(ie.nu == 0.0);
    }
  }
}

TEST_CASE("harmonic double sequence: inner mu bound at lambda=1.05") {
  // increments over (m, 1.05m] x (n, 1.05n] are at most 2*log(1.05) + o(1)
  Grids g = small_grids(1200);
  ConditionEstimate c = slow_oscillation_estimate(compile_expression("harm(m+1)+harm(n+1)"),
                                                  abs_pair(), OscSense::S11, g);
  bool saw = false;
  for (const auto& ie : c.inner) {
    if (ie.lambda != 1.05 || ie.t != 1.0 || !ie.has_data) continue;
    saw = true;
    CHECK(ie.mu >= 1.0 / (1.0 + 0.1));
  }
  CHECK(saw);
}

TEST_CASE("alternating signs fail slow oscillation with a 2-jump witness") {
  ConditionEstimate c = slow_oscillation_estimate(compile_expression("alt(m+n)"), abs_pair(),
                                                  OscSense::S11, small_grids());
  CHECK(c.verdict == Status::Fails);
  double worst = 0.0;
  for (const auto& w : c.witnesses) worst = std::max(worst, w.value_norm);
  CHECK(worst == doctest::Approx(2.0));
  for (const auto& ie : c.inner)
    if (ie.has_data && ie.t == 1.0) CHECK(ie.mu <= doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mu inner estimates are non-decreasing in t for the standard pair") {
  Grids g = small_grids(300);
  ConditionEstimate c = slow_oscillation_estimate(compile_expression("sin(0.1*m)+0.3*cos(n)"),
                                                  abs_pair(), OscSense::S11, g);
  for (std::size_t i = 1; i < c.inner.size(); ++i) {
    if (c.inner[i].lambda != c.inner[i - 1].lambda) continue;
    if (!c.inner[i].has_data) continue;
    CHECK(c.inner[i].mu >= c.inner[i - 1].mu - 1e-15);
    CHECK(c.inner[i].nu <= c.inner[i - 1].nu + 1e-15);
  }
}

TEST_CASE("an n-independent sequence gives n-independent strip estimates") {
  Grids g1 = small_grids(400);
  Grids g2 = small_grids(400);
  g2.N = 40;
  g1.tail_start = g2.tail_start = 20;
  DoubleSequence s = compile_expression("0.99^m");
  WeightSequence p = weight_sequence("ones"), q = weight_sequence("ones");
  ConditionEstimate a = tauberian_condition(s, abs_pair(), p, q, WindowVariant::Strip10Gt1, g1);
  ConditionEstimate b = tauberian_condition(s, abs_pair(), p, q, WindowVariant::Strip10Gt1, g2);
  REQUIRE(a.inner.size() == b.inner.size());
  for (std::size_t i = 0; i < a.inner.size(); ++i)
    if (a.inner[i].has_data && b.inner[i].has_data)
      CHECK(a.inner[i].mu == doctest::Approx(b.inner[i].mu).epsilon(1e-12));
}

TEST_CASE("tauberian condition on a constant sequence is exact") {
  WeightSequence p = weight_sequence("ones"), q = weight_sequence("linear");
  for (auto v : {WindowVariant::DoubleGt1, WindowVariant::DoubleLt1, WindowVariant::Strip10Gt1,
                 WindowVariant::Strip10Lt1}) {
    ConditionEstimate c =
        tauberian_condition(constant_sequence({-1.5}), abs_pair(), p, q, v, small_grids());
    CHECK(c.verdict == Status::Holds);
    for (double mu : c.outer_mu) CHECK(mu == 1.0);
    for (double nu : c.outer_nu) CHECK(nu == 0.0);
  }
}

TEST_CASE("alternating signs fail the window condition") {
  WeightSequence p = weight_sequence("ones"), q = weight_sequence("ones");
  Grids g = small_grids();
  g.lambda_gt1 = {3.0, 2.0};
  g.tail_start = 40;  // keep floor(M/3) windows inside the tail region
  ConditionEstimate c = tauberian_condition(compile_expression("alt(m+n)"), abs_pair(), p, q,
                                            WindowVariant::DoubleGt1, g);
  CHECK(c.verdict == Status::Fails);
  bool saw = false;
  for (const auto& ie : c.inner) {
    if (ie.lambda != 3.0 || ie.t != 1.0 || !ie.has_data) continue;
    saw = true;
    CHECK(ie.mu <= 0.5 + 1e-9);
  }
  CHECK(saw);
}

TEST_CASE("SVA membership at horizon") {
  Grids g = Grids::defaults();
  g.M = 10000;
  CHECK(sva_plus_estimate(cumulative(weight_sequence("ones"), 10000), g).in_sva);
  CHECK(sva_plus_estimate(cumulative(weight_sequence("linear"), 10000), g).in_sva);
  SvaResult h = sva_plus_estimate(cumulative(weight_sequence("harmonic"), 10000), g);
  CHECK_FALSE(h.in_sva);
  // unit weights separate hard: |P_2m/P_m - 1| = m/(m+1)
  SvaResult ones = sva_plus_estimate(cumulative(weight_sequence("ones"), 10000), g);
  CHECK(ones.per_lambda.front().lambda == 2.0);
  CHECK(ones.per_lambda.front().tail_inf >= 0.99);
}

TEST_CASE("regular-variation index estimates") {
  Grids g = Grids::defaults();
  CumulativeWeights ones = cumulative(weight_sequence("ones"), 10000);
  CumulativeWeights lin = cumulative(weight_sequence("linear"), 10000);
  CumulativeWeights harm = cumulative(weight_sequence("harmonic"), 10000);
  for (double lambda : {1.5, 2.0}) {
    RegvarResult r1 = regvar_index_estimate(ones, lambda, g);
    CHECK(std::fabs(r1.rho_hat - 1.0) <= 0.02);
    CHECK(r1.positive_index);
    CHECK(r1.limsup_ok);
    RegvarResult r2 = regvar_index_estimate(lin, lambda, g);
    CHECK(std::fabs(r2.rho_hat - 2.0) <= 0.02);
    CHECK(r2.positive_index);
  }
  RegvarResult rh = regvar_index_estimate(harm, 2.0, g);
  CHECK_FALSE(rh.positive_index);
  CHECK(rh.rho_hat == doctest::Approx(0.105).epsilon(0.2));  // slowly varying drift at 10^4
  CHECK_THROWS_AS(regvar_index_estimate(ones, 0.9, g), std::invalid_argument);
}

TEST_CASE("summability verdicts") {
  WeightSequence p = weight_sequence("ones"), q = weight_sequence("ones");
  Verdict c = summability_verdict(constant_sequence({2.0}), p, q, abs_pair(), AlphaBeta::T11,
                                  {2.0}, small_grids());
  CHECK(c.status == Status::Holds);
  CHECK(c.n0_found == 0);
  Verdict d = summability_verdict(compile_expression("m+n"), p, q, abs_pair(), AlphaBeta::T11,
                                  {0.0}, small_grids());
  CHECK(d.status == Status::Fails);
  Verdict a = summability_verdict(compile_expression("alt(m+n)"), p, q, abs_pair(),
                                  AlphaBeta::T11, {0.0}, relaxed_grids());
  CHECK(a.status == Status::Holds);
}

TEST_CASE("pointwise window bound against the rectangle mean") {
  // mu(window mean, t) >= min over the window of mu(x_jk - x_mn, t)
  DoubleSequence s = compile_expression("sin(0.37*m)+cos(0.21*n)");
  WeightSequence p = weight_sequence("1+sin(j)^2", "j"), q = weight_sequence("ones");
  PrefixTable tab = build_prefix_tables(s, p, q, 60, 60);
  CumulativeWeights P = cumulative(p, 60), Q = cumulative(q, 60);
  IFNormPair pair = abs_pair();
  for (long m = 2; m <= 18; m += 3) {
    for (long n = 2; n <= 18; n += 3) {
      RectangleMean r = rectangle_mean(tab, P, Q, m, n, 2.0, WindowVariant::DoubleGt1);
      for (double t : {0.1, 1.0, 10.0}) {
        double lhs = evaluate(pair, r.value, t).mu;
        double rhs = 2.0;
        Vec diff(1);
        for (long j = m + 1; j <= r.lambda_m; ++j)
          for (long k = n + 1; k <= r.lambda_n; ++k) {
            diff[0] = s(j, k)[0] - s(m, n)[0];
            rhs = std::min(rhs, evaluate(pair, diff, t).mu);
          }
        CHECK(lhs >= rhs - 1e-15);
      }
    }
  }
}

TEST_CASE("theorem harness wiring") {
  WeightSequence p = weight_sequence("ones"), q = weight_sequence("ones");
  Instance damped{compile_expression("1+0.5^(m+n)"), p, q, abs_pair(), {1.0}};
  Grids g = relaxed_grids();

  HarnessReport r21 = run_theorem("2.1", damped, g);
  CHECK(r21.mode == "implication");
  CHECK(r21.consistent);
  CHECK(r21.conclusion.status == Status::Holds);
  for (const auto& h : r21.hypotheses) CHECK(h.status == Status::Holds);

  HarnessReport r22 = run_theorem("2.2", damped, g);
  CHECK(r22.mode == "equivalence-given");
  CHECK(r22.consistent);

  Instance alt{compile_expression("alt(m+n)"), p, q, abs_pair(), {0.0}};
  HarnessReport a22 = run_theorem("2.2", alt, g);
  CHECK(a22.consistent);  // condition fails and convergence fails: sides agree
  CHECK(a22.conclusion.status == Status::Fails);
  CHECK(a22.conclusion2.status == Status::Fails);

  CHECK_THROWS_AS(run_theorem("9.9", damped, g), std::invalid_argument);
  CHECK(known_theorems().size() == 16);
}

TEST_CASE("two-step split inequality on sampled indices") {
  DoubleSequence s = compile_expression("sin(0.3*m)*cos(0.5*n)");
  IFNormPair pair = abs_pair();
  for (long m = 0; m <= 20; m += 4)
    for (long n = 0; n <= 20; n += 4)
      for (long j = m + 1; j <= m + 9; j += 4)
        for (long k = n + 1; k <= n + 9; k += 4)
          for (double t : {0.5, 2.0}) {
            Vec d1 = {s(j, k)[0] - s(m, n)[0]};
            Vec d2 = {s(j, k)[0] - s(m, k)[0]};
            Vec d3 = {s(m, k)[0] - s(m, n)[0]};
            double lhs = evaluate(pair, d1, t).mu;
            double rhs = std::min(evaluate(pair, d2, t / 2).mu, evaluate(pair, d3, t / 2).mu);
            CHECK(lhs >= rhs - 1e-15);
          }
}
