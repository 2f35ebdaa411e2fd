#ifndef IFNS_IFN_HPP
#define IFNS_IFN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ifns/vec.hpp"

namespace ifns {

// Membership/nonmembership pair (mu, nu) grading how strongly a vector is
// small at scale t. Immutable after construction; safe to share across
// threads. When the pair depends on x only through a norm, the radial
// profiles are set as well and enable O(1) window reductions downstream.
struct IFNormPair {
  std::function<double(const Vec&, double)> mu;
  std::function<double(const Vec&, double)> nu;
  std::string tag;

  // Optional fast path: mu(x,t) == mu_radial(norm(x), t), likewise nu.
  std::function<double(double, double)> mu_radial;
  std::function<double(double, double)> nu_radial;
  NormChoice norm_choice = NormChoice::Euclidean;

  bool radial() const { return static_cast<bool>(mu_radial); }
};

// The induced pair mu0(x,t) = t/(t+||x||), nu0(x,t) = ||x||/(t+||x||) for
// t > 0; mu0 = 0 and nu0 = 1 for t <= 0.
IFNormPair standard_pair(NormChoice norm);

struct MuNu {
  double mu, nu;
};

// Throws std::invalid_argument("invalid parameter") on non-finite t or x.
MuNu evaluate(const IFNormPair& pair, const Vec& x, double t);

// One entry per checked property: the ten conditions "a".."j", a [0,1]
// range check, and the two derived monotonicity properties. Limit
// conditions are probed on finite t-grids, hence `probed`.
struct AxiomCheck {
  std::string id;
  bool pass = true;
  bool probed = false;   // finite probe, not a proof
  bool derived = false;  // consequence of the conditions, not quoted
  long failures = 0;
  std::string witness;   // first failing sample, when any
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  int dim = 1;
  long samples = 0;
  std::uint64_t seed = 0;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const AxiomCheck* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
};

// Samples (x, y, t, s, c) tuples and tests every condition. Failures are
// data, not errors. Limit conditions use probe grids t in {1e3,1e6,1e9}
// and {1e-3,1e-6,1e-9} with tolerance 1e-3.
AxiomReport check_axioms(const IFNormPair& pair, long sample_count, std::uint64_t seed,
                         int dim = 1);

// Deliberately broken pairs used to exercise the axiom suite.
IFNormPair constant_mu_pair();                 // mu = 1 everywhere: breaks (b)
IFNormPair scaled_nu_pair(NormChoice norm);    // nu = 2*nu0: leaves [0,1], breaks range
IFNormPair broken_triangle_pair(NormChoice n); // mu = t/(t+||x||^2): breaks (c),(d)

}  // namespace ifns

#endif  // IFNS_IFN_HPP
