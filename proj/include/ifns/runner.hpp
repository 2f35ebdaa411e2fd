#pragma once

#include <iosfwd>
#include <string>

#include "ifns/spec.hpp"

namespace ifns {

struct RunResult {
  int exit_code = 0;  // 0 consistent, 2 inconsistency found, 1 error
  std::string report_path;
};

// Executes the tasks in declared order, writes report.json and per-curve
// CSVs under out_dir, and prints a summary table to `out`.
RunResult run_spec(const AnalysisSpec& spec, const std::string& out_dir,
                   const std::string& format, std::ostream& out);

}  // namespace ifns
