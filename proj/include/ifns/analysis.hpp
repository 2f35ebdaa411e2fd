#ifndef IFNS_ANALYSIS_HPP
#define IFNS_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ifns/ifn.hpp"
#include "ifns/means.hpp"
#include "ifns/sequences.hpp"

namespace ifns {

// Finite renderings of the quantifier variables t, eps, lambda, n0. Every
// verdict produced from these grids is an at-horizon statement: established
// over the declared grids and index horizons, never beyond them.
struct Grids {
  std::vector<double> t_grid;      // ascending, positive
  std::vector<double> eps_grid;    // in (0,1)
  std::vector<double> lambda_gt1;  // descending, > 1
  std::vector<double> lambda_lt1;  // ascending, in (0,1)
  long M = 2000, N = 2000;
  long tail_start = -1;  // -1: floor(min(M,N)/2)
  std::uint64_t seed = 0;
  int threads = 1;

  static Grids defaults();
  long tail() const { return tail_start >= 0 ? tail_start : std::min(M, N) / 2; }
  void validate() const;
};

enum class Status { Holds, Fails, Inconclusive };
std::string to_string(Status s);

struct PairDetail {
  double t = 0, eps = 0;
  long n0 = -1;  // smallest tail threshold making the inequality hold
  bool found = false;
};

struct CellWitness {
  long m = -1, n = -1;
  double t = 0, mu = 0, nu = 0;
};

struct Verdict {
  Status status = Status::Inconclusive;
  long n0_found = -1;  // max n0 over the grid pairs, when holds
  std::vector<PairDetail> detail;
  CellWitness witness;  // worst tail cell for the first failing pair
  long M = 0, N = 0, tail_start = 0;
};

// Cached lattice of sequence values over [0,M]x[0,N].
struct Lattice {
  long M = 0, N = 0;
  int dim = 1;
  std::vector<double> data;
  std::size_t idx(long m, long n) const {
    return (static_cast<std::size_t>(m) * static_cast<std::size_t>(N + 1) +
            static_cast<std::size_t>(n)) *
           static_cast<std::size_t>(dim);
  }
  const double* at(long m, long n) const { return &data[idx(m, n)]; }
};

Lattice eval_lattice(const DoubleSequence& seq, long M, long N, int threads = 1);

// Pringsheim convergence at horizon: for each (t,eps) the smallest n0 with
// mu(x_mn - x, t) > 1-eps and nu(x_mn - x, t) < eps on [n0,M]x[n0,N].
// Holds only when every such n0 is <= tail_start, so a nontrivial tail
// remains checked.
Verdict convergence_verdict(const DoubleSequence& seq, const IFNormPair& pair, const Vec& limit,
                            const Grids& grids);

// Cauchy at horizon over index pairs; the quadratic pair set is capped at
// 10^6 pairs, sampled deterministically by grids.seed.
Verdict cauchy_verdict(const DoubleSequence& seq, const IFNormPair& pair, const Grids& grids);

struct QBoundedPoint {
  double t = 0, inf_mu = 0, sup_nu = 0;
  long mu_arg_m = -1, mu_arg_n = -1;
};

struct QBoundedResult {
  std::vector<QBoundedPoint> curve;  // t_grid extended by {1e4, 1e5}
  Status status = Status::Inconclusive;
  long M = 0, N = 0;
};

QBoundedResult q_bounded_estimate(const DoubleSequence& seq, const IFNormPair& pair,
                                  const Grids& grids);

enum class OscSense { S11, S10, S01 };
std::string to_string(OscSense s);

struct InnerEstimate {
  double lambda = 0, t = 0;
  double mu = 0, nu = 0;
  bool has_data = false;
};

struct WindowWitness {
  long m = -1, n = -1;
  double lambda = 0;
  double value_norm = 0;  // norm of the worst increment / window mean
};

struct ConditionEstimate {
  std::string variant;
  std::vector<InnerEstimate> inner;  // lambda-major, t-minor
  // Per t: max over lambda of the mu tail-min, min over lambda of the nu
  // tail-max (lambdas with data only).
  std::vector<double> outer_mu, outer_nu;
  Status verdict = Status::Inconclusive;
  std::vector<WindowWitness> witnesses;  // worst window per lambda
  long skipped_windows = 0;
  bool subsampled = false;  // general-pair fallback path was used
  long M = 0, N = 0, tail_start = 0;
};

ConditionEstimate slow_oscillation_estimate(const DoubleSequence& seq, const IFNormPair& pair,
                                            OscSense sense, const Grids& grids);

// Weighted de la Vallee Poussin mean condition of the given variant.
ConditionEstimate tauberian_condition(const DoubleSequence& seq, const IFNormPair& pair,
                                      const WeightSequence& p, const WeightSequence& q,
                                      WindowVariant variant, const Grids& grids);

struct SvaPerLambda {
  double lambda = 0;
  double tail_inf = 0;   // inf over [M'/2, M'] of |P_{lm}/P_m - 1|
  double early_inf = 0;  // inf over [M'/4, M'/2)
  bool decaying = false;
};

struct SvaResult {
  std::vector<SvaPerLambda> per_lambda;
  bool in_sva = false;
  long M = 0;
};

// In-SVA+-at-horizon iff every per-lambda tail-inf >= 1e-3 and no tail-inf
// is decaying relative to the earlier window (the finite stand-in for
// liminf > 0).
SvaResult sva_plus_estimate(const CumulativeWeights& P, const Grids& grids);

struct RegvarResult {
  double lambda = 0;
  double rho_hat = 0;         // tail median of log(P_{lm}/P_m)/log(lambda)
  double limsup_tail_max = 0; // tail max of (P_{lm}-P_m)/P_m
  double limsup_dev = 0;      // vs lambda^rho_hat - 1
  bool limsup_ok = false;     // dev <= 0.05
  bool positive_index = false;
};

RegvarResult regvar_index_estimate(const CumulativeWeights& P, double lambda, const Grids& grids);

// Convergence verdict applied to the (alpha,beta) weighted-mean table.
Verdict summability_verdict(const DoubleSequence& seq, const WeightSequence& p,
                            const WeightSequence& q, const IFNormPair& pair, AlphaBeta alpha_beta,
                            const Vec& limit, const Grids& grids);

}  // namespace ifns

#endif  // IFNS_ANALYSIS_HPP
