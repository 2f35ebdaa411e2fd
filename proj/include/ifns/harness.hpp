#pragma once

#include <string>
#include <vector>

#include "ifns/analysis.hpp"

namespace ifns {

// One concrete sequence-and-weights setup a theorem is checked on.
struct Instance {
  DoubleSequence seq;
  WeightSequence p;
  WeightSequence q;
  IFNormPair pair;
  Vec limit;  // candidate limit used by convergence/summability hypotheses
};

struct HarnessItem {
  std::string name;
  Status status = Status::Inconclusive;
  std::string summary;
};

struct HarnessReport {
  std::string theorem;
  std::string mode;  // "implication" or "equivalence-given"
  std::vector<HarnessItem> hypotheses;
  HarnessItem conclusion;
  HarnessItem conclusion2;  // condition side of an equivalence
  bool has_equivalence = false;
  bool consistent = false;
  std::string note;
};

// ids: "2.1".."2.10", "3.1".."3.6". Throws std::invalid_argument on
// anything else.
HarnessReport run_theorem(const std::string& id, const Instance& instance, const Grids& grids);

std::vector<std::string> known_theorems();

}  // namespace ifns
