#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ifns/ifn.hpp"
#include "ifns/runner.hpp"
#include "ifns/spec.hpp"

namespace {

int cmd_run(const std::string& config, const std::string& out_override,
            const std::string& horizon, long seed, bool seed_set, const std::string& format) {
  ifns::AnalysisSpec spec = ifns::parse_spec(config);
  if (!horizon.empty()) {
    auto comma = horizon.find(',');
    spec.grids.M = std::stol(horizon.substr(0, comma));
    spec.grids.N = comma == std::string::npos ? spec.grids.M : std::stol(horizon.substr(comma + 1));
  }
  if (seed_set) spec.grids.seed = static_cast<std::uint64_t>(seed);
  std::string out_dir = out_override.empty() ? spec.out_dir : out_override;
  std::string fmt = format.empty() ? spec.format : format;
  ifns::RunResult r = ifns::run_spec(spec, out_dir, fmt, std::cout);
  std::cout << "report: " << r.report_path << "\n";
  return r.exit_code;
}

int cmd_check_axioms(const std::string& pair_name, int dim, long samples, long seed) {
  if (pair_name != "standard") throw std::runtime_error("unknown pair: " + pair_name);
  ifns::IFNormPair pair =
      ifns::standard_pair(dim == 1 ? ifns::NormChoice::Absolute : ifns::NormChoice::Euclidean);
  ifns::AxiomReport rep =
      ifns::check_axioms(pair, samples, static_cast<std::uint64_t>(seed), dim);
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "pass " : "FAIL ") << c.id;
    if (c.probed) std::cout << " (probed)";
    if (c.derived) std::cout << " (derived)";
    if (!c.pass) std::cout << "  witness: " << c.witness;
    std::cout << "\n";
  }
  std::cout << (rep.all_pass() ? "all conditions pass" : "violation found") << " (dim=" << dim
            << ", samples=" << rep.samples << ")\n";
  return rep.all_pass() ? 0 : 2;
}

int cmd_eval(const std::string& expr, const std::string& at) {
  auto comma = at.find(',');
  if (comma == std::string::npos) throw std::runtime_error("--at expects m,n");
  long m = std::stol(at.substr(0, comma));
  long n = std::stol(at.substr(comma + 1));
  ifns::DoubleSequence seq = ifns::compile_expression(expr);
  ifns::Vec v = seq(m, n);
  std::ostringstream os;
  os.precision(15);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  std::cout << os.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intuitionistic fuzzy normed space summability toolkit"};
  app.require_subcommand(1);

  std::string config, out_dir, horizon, format;
  long seed = 0;
  auto* run = app.add_subcommand("run", "execute an analysis config");
  run->add_option("--config", config, "config file path")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_option("--horizon", horizon, "horizon M or M,N (overrides config)");
  auto* seed_opt = run->add_option("--seed", seed, "seed (overrides config)");
  run->add_option("--format", format, "json|csv|both (overrides config)")
      ->check(CLI::IsMember({"json", "csv", "both"}));

  std::string pair_name = "standard";
  int dim = 1;
  long ax_samples = 10000, ax_seed = 0;
  auto* check = app.add_subcommand("check-axioms", "test the defining conditions of a pair");
  check->add_option("--pair", pair_name, "pair name (standard)");
  check->add_option("--dim", dim, "vector dimension")->check(CLI::PositiveNumber);
  check->add_option("--samples", ax_samples, "sample count");
  check->add_option("--seed", ax_seed, "seed");

  std::string expr, at = "0,0";
  auto* eval = app.add_subcommand("eval", "evaluate a sequence expression at an index");
  eval->add_option("--expr", expr, "expression in m,n")->required();
  eval->add_option("--at", at, "index m,n");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config, out_dir, horizon, seed, seed_opt->count() > 0, format);
    if (check->parsed()) return cmd_check_axioms(pair_name, dim, ax_samples, ax_seed);
    if (eval->parsed()) return cmd_eval(expr, at);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
