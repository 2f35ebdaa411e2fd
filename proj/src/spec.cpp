#include "ifns/spec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ifns {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_doubles(const std::string& text, int line) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) fail(line, "empty number in list");
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) fail(line, "bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(line, "empty list");
  return out;
}

long parse_long(const std::string& text, int line) {
  try {
    std::size_t pos = 0;
    long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(line, "bad integer '" + text + "'");
  }
}

TaskSpec parse_task(const std::string& raw, int line) {
  static const std::set<std::string> known = {"axioms",  "convergence", "cauchy", "qbounded",
                                              "oscillation", "sva",     "regvar", "tauber",
                                              "summability", "theorem"};
  TaskSpec t;
  t.raw = raw;
  std::size_t open = raw.find('(');
  if (open == std::string::npos) {
    t.name = trim(raw);
  } else {
    if (raw.back() != ')') fail(line, "unterminated task argument in '" + raw + "'");
    t.name = trim(raw.substr(0, open));
    t.arg = trim(raw.substr(open + 1, raw.size() - open - 2));
  }
  if (!known.count(t.name)) fail(line, "unknown task name '" + t.name + "'");
  return t;
}

}  // namespace

Vec parse_vector_literal(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
      throw std::runtime_error("bad vector literal '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("empty vector literal");
  return out;
}

AnalysisSpec parse_spec_text(const std::string& text) {
  AnalysisSpec spec;
  std::istringstream in(text);
  std::string rawline, section;
  int lineno = 0;
  bool grid_M_set = false;

  while (std::getline(in, rawline)) {
    ++lineno;
    std::string line = rawline;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> secs = {"sequence", "weights", "pair", "grids",
                                                 "limit",    "run",     "tasks"};
      if (!secs.count(section)) fail(lineno, "unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail(lineno, "expected key = value");

    if (section == "sequence") {
      if (key == "expr") spec.sequence_text = val;
      else fail(lineno, "unknown key '" + key + "' in [sequence]");
    } else if (section == "weights") {
      if (key == "p") spec.p_text = val;
      else if (key == "q") spec.q_text = val;
      else fail(lineno, "unknown key '" + key + "' in [weights]");
    } else if (section == "pair") {
      if (key == "norm") {
        try {
          spec.norm = norm_choice_from_string(val);
        } catch (const std::exception& e) {
          fail(lineno, e.what());
        }
      } else {
        fail(lineno, "unknown key '" + key + "' in [pair]");
      }
    } else if (section == "grids") {
      if (key == "horizon") {
        auto v = parse_doubles(val, lineno);
        if (v.size() > 2) fail(lineno, "horizon takes M or M,N");
        spec.grids.M = static_cast<long>(v[0]);
        spec.grids.N = static_cast<long>(v.size() == 2 ? v[1] : v[0]);
        grid_M_set = true;
      } else if (key == "tail_start") {
        spec.grids.tail_start = parse_long(val, lineno);
      } else if (key == "seed") {
        spec.grids.seed = static_cast<std::uint64_t>(parse_long(val, lineno));
      } else if (key == "threads") {
        spec.grids.threads = static_cast<int>(parse_long(val, lineno));
      } else if (key == "t") {
        spec.grids.t_grid = parse_doubles(val, lineno);
      } else if (key == "eps") {
        spec.grids.eps_grid = parse_doubles(val, lineno);
      } else if (key == "lambda_gt1") {
        spec.grids.lambda_gt1 = parse_doubles(val, lineno);
      } else if (key == "lambda_lt1") {
        spec.grids.lambda_lt1 = parse_doubles(val, lineno);
      } else {
        fail(lineno, "unknown key '" + key + "' in [grids]");
      }
    } else if (section == "limit") {
      if (key == "value") {
        try {
          spec.limit = parse_vector_literal(val);
        } catch (const std::exception& e) {
          fail(lineno, e.what());
        }
        spec.has_limit = true;
      } else {
        fail(lineno, "unknown key '" + key + "' in [limit]");
      }
    } else if (section == "run") {
      if (key == "out") spec.out_dir = val;
      else if (key == "format") {
        if (val != "json" && val != "csv" && val != "both")
          fail(lineno, "format must be json, csv or both");
        spec.format = val;
      } else {
        fail(lineno, "unknown key '" + key + "' in [run]");
      }
    } else if (section == "tasks") {
      if (key == "task") spec.tasks.push_back(parse_task(val, lineno));
      else fail(lineno, "unknown key '" + key + "' in [tasks]");
    } else {
      fail(lineno, "key outside any section");
    }
  }
  (void)grid_M_set;

  // Validation: compile the expressions eagerly so diagnostics carry
  // positions, and check task-level required fields.
  DoubleSequence seq = compile_expression(spec.sequence_text);
  weight_sequence(spec.p_text, "j");
  weight_sequence(spec.q_text, "k");
  spec.grids.validate();
  for (const auto& t : spec.tasks) {
    bool needs_limit = t.name == "convergence" || t.name == "summability" || t.name == "theorem";
    if (needs_limit && !spec.has_limit) throw std::runtime_error("missing field: limit");
    if (t.name == "oscillation") {
      if (t.arg != "1,1" && t.arg != "1,0" && t.arg != "0,1")
        throw std::runtime_error("task " + t.raw + ": sense must be 1,1 or 1,0 or 0,1");
    } else if (t.name == "summability") {
      if (t.arg != "1,1" && t.arg != "1,0" && t.arg != "0,1")
        throw std::runtime_error("task " + t.raw + ": alpha,beta must be 1,1 or 1,0 or 0,1");
    } else if (t.name == "tauber") {
      window_variant_from_string(t.arg);  // throws on bad variant
    } else if (t.name == "theorem") {
      if (t.arg.empty()) throw std::runtime_error("task theorem requires an id");
    }
  }
  if (spec.has_limit && static_cast<int>(spec.limit.size()) != seq.dim)
    throw std::runtime_error("limit dimension " + std::to_string(spec.limit.size()) +
                             " does not match sequence dimension " + std::to_string(seq.dim));
  return spec;
}

AnalysisSpec parse_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_spec_text(buf.str());
}

}  // namespace ifns
