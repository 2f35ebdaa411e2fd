#include "ifns/harness.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ifns {

namespace {

std::string fmt_verdict(const Verdict& v) {
  std::ostringstream os;
  os << to_string(v.status);
  if (v.status == Status::Holds) os << " (n0=" << v.n0_found << ")";
  else if (v.witness.m >= 0)
    os << " (witness m=" << v.witness.m << " n=" << v.witness.n << " t=" << v.witness.t
       << " mu=" << v.witness.mu << ")";
  return os.str();
}

HarnessItem item(const std::string& name, const Verdict& v) {
  return {name, v.status, fmt_verdict(v)};
}

HarnessItem item(const std::string& name, const ConditionEstimate& c) {
  std::ostringstream os;
  os << to_string(c.verdict);
  if (!c.outer_mu.empty())
    os << " (outer mu at largest t=" << c.outer_mu.back() << ", outer nu=" << c.outer_nu.back()
       << ")";
  return {name, c.verdict, os.str()};
}

HarnessItem item(const std::string& name, const QBoundedResult& q) {
  std::ostringstream os;
  const auto& last = q.curve.back();
  os << to_string(q.status) << " (inf mu=" << last.inf_mu << ", sup nu=" << last.sup_nu
     << " at t=" << last.t << ")";
  return {name, q.status, os.str()};
}

HarnessItem item(const std::string& name, Status s, const std::string& summary) {
  return {name, s, summary};
}

// Single-index weight scans run at a larger horizon than the lattice.
long weight_horizon(const Grids& grids) { return std::max<long>(grids.M, 10000); }

HarnessItem sva_item(const std::string& name, const WeightSequence& w, const Grids& grids) {
  SvaResult r = sva_plus_estimate(cumulative(w, weight_horizon(grids)), grids);
  double worst = 2.0;
  for (const auto& pl : r.per_lambda) worst = std::min(worst, pl.tail_inf);
  std::ostringstream os;
  os << (r.in_sva ? "in" : "out") << " (min tail separation " << worst << ")";
  return item(name, r.in_sva ? Status::Holds : Status::Fails, os.str());
}

HarnessItem regvar_item(const std::string& name, const WeightSequence& w, const Grids& grids) {
  RegvarResult r =
      regvar_index_estimate(cumulative(w, weight_horizon(grids)), grids.lambda_gt1.front(), grids);
  std::ostringstream os;
  os << "rho_hat=" << r.rho_hat << (r.positive_index ? " (positive)" : " (not positive)");
  return item(name, r.positive_index ? Status::Holds : Status::Fails, os.str());
}

HarnessItem diff_qbounded(const std::string& name, const Instance& inst, Axis axis,
                          DiffScaling scaling, const Grids& grids) {
  const WeightSequence& w = axis == Axis::M ? inst.p : inst.q;
  DoubleSequence d = difference_transform(inst.seq, axis, scaling,
                                          scaling == DiffScaling::Weighted ? &w : nullptr);
  return item(name, q_bounded_estimate(d, inst.pair, grids));
}

struct Builder {
  const Instance& inst;
  const Grids& grids;
  HarnessReport rep;

  Verdict conv() const { return convergence_verdict(inst.seq, inst.pair, inst.limit, grids); }
  Verdict summ(AlphaBeta ab) const {
    return summability_verdict(inst.seq, inst.p, inst.q, inst.pair, ab, inst.limit, grids);
  }
  ConditionEstimate osc(OscSense s) const {
    return slow_oscillation_estimate(inst.seq, inst.pair, s, grids);
  }
  ConditionEstimate tauber(WindowVariant v) const {
    return tauberian_condition(inst.seq, inst.pair, inst.p, inst.q, v, grids);
  }

  void hyp(HarnessItem it) { rep.hypotheses.push_back(std::move(it)); }

  void finish_implication() {
    rep.mode = "implication";
    bool all_hyp = true, any_inconclusive = rep.conclusion.status == Status::Inconclusive;
    for (const auto& h : rep.hypotheses) {
      if (h.status != Status::Holds) all_hyp = false;
      if (h.status == Status::Inconclusive) any_inconclusive = true;
    }
    if (any_inconclusive) {
      rep.consistent = true;
      rep.note = "inconclusive at horizon";
    } else if (!all_hyp) {
      rep.consistent = true;
      rep.note = "vacuous: some hypothesis fails at horizon";
    } else {
      rep.consistent = rep.conclusion.status == Status::Holds;
      if (!rep.consistent) rep.note = "hypotheses hold but conclusion fails";
    }
  }

  // Given-part hypotheses plus "A iff B": consistent when the givens fail,
  // or when both sides agree at horizon.
  void finish_equivalence() {
    rep.mode = "equivalence-given";
    rep.has_equivalence = true;
    bool all_given = true, any_inconclusive = false;
    for (const auto& h : rep.hypotheses) {
      if (h.status != Status::Holds) all_given = false;
      if (h.status == Status::Inconclusive) any_inconclusive = true;
    }
    any_inconclusive = any_inconclusive || rep.conclusion.status == Status::Inconclusive ||
                       rep.conclusion2.status == Status::Inconclusive;
    if (any_inconclusive) {
      rep.consistent = true;
      rep.note = "inconclusive at horizon";
    } else if (!all_given) {
      rep.consistent = true;
      rep.note = "vacuous: some given fails at horizon";
    } else {
      rep.consistent = rep.conclusion.status == rep.conclusion2.status;
      if (!rep.consistent) rep.note = "equivalence sides disagree at horizon";
    }
  }
};

}  // namespace

std::vector<std::string> known_theorems() {
  return {"2.1", "2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.8",
          "2.9", "2.10", "3.1", "3.2", "3.3", "3.4", "3.5", "3.6"};
}

HarnessReport run_theorem(const std::string& id, const Instance& inst, const Grids& grids) {
  grids.validate();
  Builder b{inst, grids, {}};
  b.rep.theorem = id;

  if (id == "2.1" || id == "3.1") {
    b.hyp(item("q-bounded", q_bounded_estimate(inst.seq, inst.pair, grids)));
    b.hyp(item("convergent", b.conv()));
    b.rep.conclusion =
        item(id == "2.1" ? "summable(1,1)" : "summable(1,0)",
             b.summ(id == "2.1" ? AlphaBeta::T11 : AlphaBeta::T10));
    b.finish_implication();
  } else if (id == "2.2" || id == "2.3") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(sva_item("q in SVA+", inst.q, grids));
    b.hyp(item("summable(1,1)", b.summ(AlphaBeta::T11)));
    b.rep.conclusion = item("convergent", b.conv());
    b.rep.conclusion2 =
        item("window condition",
             b.tauber(id == "2.2" ? WindowVariant::DoubleGt1 : WindowVariant::DoubleLt1));
    b.finish_equivalence();
  } else if (id == "2.4") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(sva_item("q in SVA+", inst.q, grids));
    b.hyp(item("slowly oscillating (1,1)", b.osc(OscSense::S11)));
    b.hyp(item("summable(1,1)", b.summ(AlphaBeta::T11)));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else if (id == "2.5") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(sva_item("q in SVA+", inst.q, grids));
    b.hyp(item("slowly oscillating (1,0)", b.osc(OscSense::S10)));
    b.hyp(item("slowly oscillating (0,1)", b.osc(OscSense::S01)));
    b.hyp(item("summable(1,1)", b.summ(AlphaBeta::T11)));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else if (id == "2.6") {
    b.hyp(item("slowly oscillating (1,0)", b.osc(OscSense::S10)));
    b.hyp(item("slowly oscillating (0,1)", b.osc(OscSense::S01)));
    b.rep.conclusion = item("slowly oscillating (1,1)", b.osc(OscSense::S11));
    b.finish_implication();
  } else if (id == "2.7") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(sva_item("q in SVA+", inst.q, grids));
    b.hyp(item("summable(1,1)", b.summ(AlphaBeta::T11)));
    b.hyp(diff_qbounded("m*(row diff) q-bounded", inst, Axis::M, DiffScaling::Index, grids));
    b.hyp(diff_qbounded("n*(col diff) q-bounded", inst, Axis::N, DiffScaling::Index, grids));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else if (id == "2.8" || id == "2.9") {
    bool row = id == "2.8";
    b.hyp(regvar_item(row ? "P regularly varying, positive index"
                          : "Q regularly varying, positive index",
                      row ? inst.p : inst.q, grids));
    b.hyp(diff_qbounded(row ? "(P/p)*(row diff) q-bounded" : "(Q/q)*(col diff) q-bounded", inst,
                        row ? Axis::M : Axis::N, DiffScaling::Weighted, grids));
    b.rep.conclusion = item(row ? "slowly oscillating (1,0)" : "slowly oscillating (0,1)",
                            b.osc(row ? OscSense::S10 : OscSense::S01));
    b.finish_implication();
  } else if (id == "2.10") {
    b.hyp(regvar_item("P regularly varying, positive index", inst.p, grids));
    b.hyp(regvar_item("Q regularly varying, positive index", inst.q, grids));
    b.hyp(item("summable(1,1)", b.summ(AlphaBeta::T11)));
    b.hyp(diff_qbounded("(P/p)*(row diff) q-bounded", inst, Axis::M, DiffScaling::Weighted, grids));
    b.hyp(diff_qbounded("(Q/q)*(col diff) q-bounded", inst, Axis::N, DiffScaling::Weighted, grids));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else if (id == "3.2" || id == "3.3") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(item("summable(1,0)", b.summ(AlphaBeta::T10)));
    b.rep.conclusion = item("convergent", b.conv());
    b.rep.conclusion2 =
        item("strip condition",
             b.tauber(id == "3.2" ? WindowVariant::Strip10Gt1 : WindowVariant::Strip10Lt1));
    b.finish_equivalence();
  } else if (id == "3.4") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(item("slowly oscillating (1,0)", b.osc(OscSense::S10)));
    b.hyp(item("summable(1,0)", b.summ(AlphaBeta::T10)));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else if (id == "3.5") {
    b.hyp(sva_item("p in SVA+", inst.p, grids));
    b.hyp(item("summable(1,0)", b.summ(AlphaBeta::T10)));
    b.hyp(diff_qbounded("m*(row diff) q-bounded", inst, Axis::M, DiffScaling::Index, grids));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else if (id == "3.6") {
    b.hyp(regvar_item("P regularly varying, positive index", inst.p, grids));
    b.hyp(item("summable(1,0)", b.summ(AlphaBeta::T10)));
    b.hyp(diff_qbounded("(P/p)*(row diff) q-bounded", inst, Axis::M, DiffScaling::Weighted, grids));
    b.rep.conclusion = item("convergent", b.conv());
    b.finish_implication();
  } else {
    throw std::invalid_argument("unknown theorem: " + id);
  }
  return b.rep;
}

}  // namespace ifns
