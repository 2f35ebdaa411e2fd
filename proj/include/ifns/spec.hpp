#pragma once

#include <string>
#include <vector>

#include "ifns/analysis.hpp"

namespace ifns {

struct TaskSpec {
  std::string name;  // axioms|convergence|cauchy|qbounded|oscillation|sva|regvar|tauber|summability|theorem
  std::string arg;   // inside the parentheses, may be empty
  std::string raw;   // as written in the config
};

// Parsed run configuration. The grid overrides, seed and threads are folded
// into `grids`.
struct AnalysisSpec {
  std::string sequence_text = "0";
  std::string p_text = "ones";
  std::string q_text = "ones";
  NormChoice norm = NormChoice::Euclidean;
  std::vector<TaskSpec> tasks;
  Grids grids = Grids::defaults();
  bool has_limit = false;
  Vec limit;
  std::string out_dir = "out";
  std::string format = "json";
};

// INI-like format; see README for the grammar. Throws std::runtime_error
// with a "line N:" or "missing field:" diagnostic.
AnalysisSpec parse_spec(const std::string& path);
AnalysisSpec parse_spec_text(const std::string& text);

// Parses "v" or "v1,v2,..." into a vector literal.
Vec parse_vector_literal(const std::string& text);

}  // namespace ifns
