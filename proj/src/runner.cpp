#include "ifns/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "ifns/harness.hpp"

namespace ifns {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json grids_json(const Grids& g) {
  // threads is execution detail, not an input to any verdict; keeping it
  // out of the echo preserves byte-identical reports across thread counts.
  return json{{"t", g.t_grid},
              {"eps", g.eps_grid},
              {"lambda_gt1", g.lambda_gt1},
              {"lambda_lt1", g.lambda_lt1},
              {"horizon", {g.M, g.N}},
              {"tail_start", g.tail()},
              {"seed", g.seed}};
}

json witness_json(const CellWitness& w) {
  return json{{"m", w.m}, {"n", w.n}, {"t", w.t}, {"mu", w.mu}, {"nu", w.nu}};
}

json verdict_json(const Verdict& v) {
  json detail = json::array();
  for (const auto& d : v.detail)
    detail.push_back(json{{"t", d.t}, {"eps", d.eps}, {"n0", d.n0}, {"found", d.found}});
  json j{{"status", to_string(v.status)},
         {"n0", v.n0_found},
         {"horizon", {v.M, v.N}},
         {"tail_start", v.tail_start},
         {"detail", detail}};
  if (v.witness.m >= 0) j["witness"] = witness_json(v.witness);
  return j;
}

json condition_json(const ConditionEstimate& c) {
  json inner = json::array();
  for (const auto& ie : c.inner)
    inner.push_back(json{{"lambda", ie.lambda},
                         {"t", ie.t},
                         {"mu", ie.mu},
                         {"nu", ie.nu},
                         {"has_data", ie.has_data}});
  json wits = json::array();
  for (const auto& w : c.witnesses)
    wits.push_back(
        json{{"m", w.m}, {"n", w.n}, {"lambda", w.lambda}, {"value_norm", w.value_norm}});
  return json{{"variant", c.variant},
              {"status", to_string(c.verdict)},
              {"inner", inner},
              {"outer_mu", c.outer_mu},
              {"outer_nu", c.outer_nu},
              {"witnesses", wits},
              {"skipped_windows", c.skipped_windows},
              {"subsampled", c.subsampled},
              {"horizon", {c.M, c.N}},
              {"tail_start", c.tail_start}};
}

json qbounded_json(const QBoundedResult& q) {
  json curve = json::array();
  for (const auto& pt : q.curve)
    curve.push_back(json{{"t", pt.t},
                         {"inf_mu", pt.inf_mu},
                         {"sup_nu", pt.sup_nu},
                         {"arg_m", pt.mu_arg_m},
                         {"arg_n", pt.mu_arg_n}});
  return json{
      {"status", to_string(q.status)}, {"curve", curve}, {"horizon", {q.M, q.N}}};
}

json sva_json(const SvaResult& r) {
  json per = json::array();
  for (const auto& pl : r.per_lambda)
    per.push_back(json{{"lambda", pl.lambda},
                       {"tail_inf", pl.tail_inf},
                       {"early_inf", pl.early_inf},
                       {"decaying", pl.decaying}});
  return json{{"in_sva", r.in_sva}, {"per_lambda", per}, {"horizon", r.M}};
}

json regvar_json(const RegvarResult& r) {
  return json{{"lambda", r.lambda},
              {"rho_hat", r.rho_hat},
              {"limsup_tail_max", r.limsup_tail_max},
              {"limsup_dev", r.limsup_dev},
              {"limsup_ok", r.limsup_ok},
              {"positive_index", r.positive_index}};
}

json item_json(const HarnessItem& it) {
  return json{{"name", it.name}, {"status", to_string(it.status)}, {"summary", it.summary}};
}

json harness_json(const HarnessReport& r) {
  json hyps = json::array();
  for (const auto& h : r.hypotheses) hyps.push_back(item_json(h));
  json j{{"theorem", r.theorem},
         {"mode", r.mode},
         {"hypotheses", hyps},
         {"conclusion", item_json(r.conclusion)},
         {"consistent", r.consistent},
         {"note", r.note}};
  if (r.has_equivalence) j["condition"] = item_json(r.conclusion2);
  return j;
}

AlphaBeta alpha_beta_from_arg(const std::string& arg) {
  if (arg == "1,1") return AlphaBeta::T11;
  if (arg == "1,0") return AlphaBeta::T10;
  if (arg == "0,1") return AlphaBeta::T01;
  throw std::runtime_error("bad alpha,beta '" + arg + "'");
}

OscSense sense_from_arg(const std::string& arg) {
  if (arg == "1,1") return OscSense::S11;
  if (arg == "1,0") return OscSense::S10;
  if (arg == "0,1") return OscSense::S01;
  throw std::runtime_error("bad oscillation sense '" + arg + "'");
}

long write_condition_csv(const ConditionEstimate& c, const fs::path& path) {
  std::ofstream f(path);
  f << "lambda,t,inner_mu,inner_nu\n";
  f << std::setprecision(17);
  long omitted = 0;
  for (const auto& ie : c.inner) {
    if (!ie.has_data) {
      ++omitted;
      continue;
    }
    f << ie.lambda << "," << ie.t << "," << ie.mu << "," << ie.nu << "\n";
  }
  return omitted;
}

void write_curve_csv(const QBoundedResult& q, const fs::path& path) {
  std::ofstream f(path);
  f << "t,inf_mu,sup_nu\n";
  f << std::setprecision(17);
  for (const auto& pt : q.curve) f << pt.t << "," << pt.inf_mu << "," << pt.sup_nu << "\n";
}

std::string task_label(const TaskSpec& t, std::size_t index) {
  std::string label = std::to_string(index) + "_" + t.name;
  if (!t.arg.empty()) {
    std::string arg = t.arg;
    for (char& ch : arg)
      if (ch == ',' || ch == '.') ch = '-';
    label += "_" + arg;
  }
  return label;
}

}  // namespace

RunResult run_spec(const AnalysisSpec& spec, const std::string& out_dir,
                   const std::string& format, std::ostream& out) {
  const auto t_start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);

  DoubleSequence seq = compile_expression(spec.sequence_text);
  WeightSequence p = weight_sequence(spec.p_text, "j");
  WeightSequence q = weight_sequence(spec.q_text, "k");
  IFNormPair pair = standard_pair(spec.norm);
  const Grids& grids = spec.grids;
  grids.validate();

  json report;
  report["version"] = "1.0";
  json tasks_echo = json::array();
  for (const auto& t : spec.tasks) tasks_echo.push_back(t.raw);
  report["spec"] = json{{"sequence", spec.sequence_text},
                        {"p", spec.p_text},
                        {"q", spec.q_text},
                        {"norm", to_string(spec.norm)},
                        {"limit", spec.has_limit ? json(spec.limit) : json(nullptr)},
                        {"tasks", tasks_echo},
                        {"format", format},
                        {"grids", grids_json(grids)}};

  json task_results = json::array();
  json timing = json::object();
  bool any_inconsistent = false;
  const bool want_csv = format == "csv" || format == "both";

  for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
    const TaskSpec& t = spec.tasks[i];
    const auto t0 = std::chrono::steady_clock::now();
    json res;
    res["task"] = t.raw;
    std::string verdict_line;

    if (t.name == "axioms") {
      AxiomReport rep = check_axioms(pair, 10000, grids.seed, seq.dim);
      json checks = json::array();
      for (const auto& c : rep.checks)
        checks.push_back(json{{"id", c.id},
                              {"pass", c.pass},
                              {"probed", c.probed},
                              {"derived", c.derived},
                              {"failures", c.failures},
                              {"witness", c.witness}});
      res["result"] = json{{"all_pass", rep.all_pass()},
                           {"checks", checks},
                           {"samples", rep.samples},
                           {"dim", rep.dim}};
      verdict_line = rep.all_pass() ? "all conditions pass" : "violation found";
    } else if (t.name == "convergence") {
      Verdict v = convergence_verdict(seq, pair, spec.limit, grids);
      res["result"] = verdict_json(v);
      verdict_line = to_string(v.status);
    } else if (t.name == "cauchy") {
      Verdict v = cauchy_verdict(seq, pair, grids);
      res["result"] = verdict_json(v);
      verdict_line = to_string(v.status);
    } else if (t.name == "qbounded") {
      QBoundedResult r = q_bounded_estimate(seq, pair, grids);
      res["result"] = qbounded_json(r);
      verdict_line = to_string(r.status);
      if (want_csv) write_curve_csv(r, fs::path(out_dir) / (task_label(t, i) + ".csv"));
    } else if (t.name == "oscillation") {
      ConditionEstimate c = slow_oscillation_estimate(seq, pair, sense_from_arg(t.arg), grids);
      if (want_csv)
        res["csv_rows_omitted"] =
            write_condition_csv(c, fs::path(out_dir) / (task_label(t, i) + ".csv"));
      res["result"] = condition_json(c);
      verdict_line = to_string(c.verdict);
    } else if (t.name == "tauber") {
      ConditionEstimate c =
          tauberian_condition(seq, pair, p, q, window_variant_from_string(t.arg), grids);
      if (want_csv)
        res["csv_rows_omitted"] =
            write_condition_csv(c, fs::path(out_dir) / (task_label(t, i) + ".csv"));
      res["result"] = condition_json(c);
      verdict_line = to_string(c.verdict);
    } else if (t.name == "sva") {
      long Mw = std::max<long>(grids.M, 10000);
      SvaResult rp = sva_plus_estimate(cumulative(p, Mw), grids);
      SvaResult rq = sva_plus_estimate(cumulative(q, Mw), grids);
      res["result"] = json{{"p", sva_json(rp)}, {"q", sva_json(rq)}};
      verdict_line = std::string("p ") + (rp.in_sva ? "in" : "out") + ", q " +
                     (rq.in_sva ? "in" : "out");
    } else if (t.name == "regvar") {
      long Mw = std::max<long>(grids.M, 10000);
      CumulativeWeights P = cumulative(p, Mw), Q = cumulative(q, Mw);
      json jp = json::array(), jq = json::array();
      for (double lambda : grids.lambda_gt1) {
        jp.push_back(regvar_json(regvar_index_estimate(P, lambda, grids)));
        jq.push_back(regvar_json(regvar_index_estimate(Q, lambda, grids)));
      }
      res["result"] = json{{"p", jp}, {"q", jq}};
      verdict_line = "estimated";
    } else if (t.name == "summability") {
      Verdict v =
          summability_verdict(seq, p, q, pair, alpha_beta_from_arg(t.arg), spec.limit, grids);
      res["result"] = verdict_json(v);
      verdict_line = to_string(v.status);
    } else if (t.name == "theorem") {
      HarnessReport r = run_theorem(t.arg, {seq, p, q, pair, spec.limit}, grids);
      res["result"] = harness_json(r);
      if (!r.consistent) any_inconsistent = true;
      verdict_line = r.consistent ? "consistent" : "INCONSISTENT";
    } else {
      throw std::runtime_error("unknown task name '" + t.name + "'");
    }

    const auto t1 = std::chrono::steady_clock::now();
    timing[task_label(t, i)] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
    task_results.push_back(res);
    out << std::left << std::setw(28) << t.raw << " " << verdict_line << "\n";
  }

  report["tasks"] = task_results;
  const auto t_end = std::chrono::steady_clock::now();
  timing["total_seconds"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count() / 1000.0;
  report["timing"] = timing;

  RunResult rr;
  rr.exit_code = any_inconsistent ? 2 : 0;
  if (format == "json" || format == "both" || true) {
    // report.json is always written; csv curves only on request.
    fs::path rp = fs::path(out_dir) / "report.json";
    std::ofstream f(rp);
    f << report.dump(2) << "\n";
    rr.report_path = rp.string();
  }
  out << (any_inconsistent ? "result: INCONSISTENT\n" : "result: consistent\n");
  return rr;
}

}  // namespace ifns
