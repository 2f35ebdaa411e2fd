#include "ifns/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <random>
#include <thread>

namespace ifns {

namespace {

void parallel_rows(long M, int threads, const std::function<void(long)>& body) {
  if (threads <= 1 || M < 64) {
    for (long m = 0; m <= M; ++m) body(m);
    return;
  }
  std::vector<std::thread> pool;
  long rows = M + 1;
  long chunk = (rows + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    long lo = t * chunk, hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long m = lo; m < hi; ++m) body(m);
    });
  }
  for (auto& th : pool) th.join();
}

// Independent grid points computed into disjoint slots; results do not
// depend on the schedule, so thread counts cannot change any output.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

void require_monotone(const std::vector<double>& v, bool ascending, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    bool ok = ascending ? v[i] > v[i - 1] : v[i] < v[i - 1];
    if (!ok) throw std::invalid_argument(std::string(what) + " grid is not strictly monotone");
  }
}

}  // namespace

Grids Grids::defaults() {
  Grids g;
  for (int k = 0; k <= 10; ++k) g.t_grid.push_back(std::pow(10.0, -2.0 + 0.5 * k));
  g.eps_grid = {0.1, 0.01, 0.001};
  g.lambda_gt1 = {2.0, 1.5, 1.25, 1.1, 1.05};
  g.lambda_lt1 = {0.5, 0.75, 0.9, 0.95};
  return g;
}

void Grids::validate() const {
  require_monotone(t_grid, true, "t");
  require_monotone(eps_grid, false, "eps");
  require_monotone(lambda_gt1, false, "lambda>1");
  require_monotone(lambda_lt1, true, "lambda<1");
  for (double t : t_grid)
    if (t <= 0.0) throw std::invalid_argument("t grid must be positive");
  for (double e : eps_grid)
    if (e <= 0.0 || e >= 1.0) throw std::invalid_argument("eps grid must lie in (0,1)");
  for (double l : lambda_gt1)
    if (l <= 1.0) throw std::invalid_argument("lambda>1 grid must exceed 1");
  for (double l : lambda_lt1)
    if (l <= 0.0 || l >= 1.0) throw std::invalid_argument("lambda<1 grid must lie in (0,1)");
  if (M < 0 || N < 0) throw std::invalid_argument("horizon must be >= 0");
  if (tail() >= std::min(M, N)) throw std::invalid_argument("tail_start must be < min(M,N)");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds-at-horizon";
    case Status::Fails: return "fails-at-horizon";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(OscSense s) {
  switch (s) {
    case OscSense::S11: return "(1,1)";
    case OscSense::S10: return "(1,0)";
    case OscSense::S01: return "(0,1)";
  }
  return "?";
}

Lattice eval_lattice(const DoubleSequence& seq, long M, long N, int threads) {
  Lattice lat;
  lat.M = M;
  lat.N = N;
  lat.dim = seq.dim;
  lat.data.resize(static_cast<std::size_t>(M + 1) * static_cast<std::size_t>(N + 1) *
                  static_cast<std::size_t>(seq.dim));
  parallel_rows(M, threads, [&](long m) {
    for (long n = 0; n <= N; ++n) seq.eval_into(m, n, &lat.data[lat.idx(m, n)]);
  });
  return lat;
}

namespace {

// Shared core of the convergence-style verdicts: suffix extrema of mu/nu
// over the square tails [s,M]x[s,N], then the smallest workable n0 per
// (t,eps). "Holds" additionally demands n0 <= tail_start so that a
// nontrivial tail was actually checked.
template <typename At>
Verdict verdict_over_values(long M, long N, int dim, const At& at, const IFNormPair& pair,
                            const Vec& limit, const Grids& grids) {
  if (static_cast<int>(limit.size()) != dim)
    throw std::invalid_argument("limit dimension mismatch");
  Verdict v;
  v.M = M;
  v.N = N;
  v.tail_start = grids.tail();
  const long smin = std::min(M, N);
  bool all_found = true;
  bool witness_set = false;

  struct PerT {
    std::vector<double> sufmu, sufnu;
    CellWitness tail_wit;
  };
  std::vector<PerT> per_t(grids.t_grid.size());
  parallel_for(grids.t_grid.size(), grids.threads, [&](std::size_t ti) {
    const double t = grids.t_grid[ti];
    PerT& slot = per_t[ti];
    slot.sufmu.assign(static_cast<std::size_t>(smin) + 1, 2.0);
    slot.sufnu.assign(static_cast<std::size_t>(smin) + 1, -1.0);
    Vec diff(static_cast<std::size_t>(dim));
    double cur_mu = 2.0, cur_nu = -1.0;
    auto touch = [&](long m, long n) {
      const double* x = at(m, n);
      for (int i = 0; i < dim; ++i) diff[static_cast<std::size_t>(i)] = x[i] - limit[i];
      double mu = pair.mu(diff, t), nu = pair.nu(diff, t);
      if (mu < cur_mu) {
        cur_mu = mu;
        if (m >= v.tail_start && n >= v.tail_start) {
          slot.tail_wit.m = m;
          slot.tail_wit.n = n;
          slot.tail_wit.t = t;
          slot.tail_wit.mu = mu;
          slot.tail_wit.nu = nu;
        }
      }
      cur_nu = std::max(cur_nu, nu);
    };
    for (long s = smin; s >= 0; --s) {
      for (long n = s; n <= N; ++n) touch(s, n);
      for (long m = s + 1; m <= M; ++m) touch(m, s);
      slot.sufmu[static_cast<std::size_t>(s)] = cur_mu;
      slot.sufnu[static_cast<std::size_t>(s)] = cur_nu;
    }
  });

  for (std::size_t ti = 0; ti < grids.t_grid.size(); ++ti) {
    const double t = grids.t_grid[ti];
    const auto& sufmu = per_t[ti].sufmu;
    const auto& sufnu = per_t[ti].sufnu;
    const CellWitness& tail_wit = per_t[ti].tail_wit;
    for (double eps : grids.eps_grid) {
      PairDetail pd;
      pd.t = t;
      pd.eps = eps;
      for (long s = 0; s <= smin; ++s) {
        if (sufmu[static_cast<std::size_t>(s)] > 1.0 - eps &&
            sufnu[static_cast<std::size_t>(s)] < eps) {
          pd.n0 = s;
          pd.found = s <= v.tail_start;
          break;
        }
      }
      if (!pd.found) {
        all_found = false;
        if (!witness_set && tail_wit.m >= 0) {
          v.witness = tail_wit;
          witness_set = true;
        }
      } else {
        v.n0_found = std::max(v.n0_found, pd.n0);
      }
      v.detail.push_back(pd);
    }
  }
  v.status = all_found ? Status::Holds : Status::Fails;
  if (!all_found) v.n0_found = -1;
  return v;
}

}  // namespace

Verdict convergence_verdict(const DoubleSequence& seq, const IFNormPair& pair, const Vec& limit,
                            const Grids& grids) {
  grids.validate();
  Lattice lat = eval_lattice(seq, grids.M, grids.N, grids.threads);
  return verdict_over_values(
      lat.M, lat.N, lat.dim, [&](long m, long n) { return lat.at(m, n); }, pair, limit, grids);
}

Verdict summability_verdict(const DoubleSequence& seq, const WeightSequence& p,
                            const WeightSequence& q, const IFNormPair& pair, AlphaBeta alpha_beta,
                            const Vec& limit, const Grids& grids) {
  grids.validate();
  PrefixTable prefix = build_prefix_tables(seq, p, q, grids.M, grids.N, grids.threads);
  CumulativeWeights P = cumulative(p, grids.M);
  CumulativeWeights Q = cumulative(q, grids.N);
  MeanTable table = mean_table(prefix, P, Q, alpha_beta, grids.threads);
  return verdict_over_values(
      table.M, table.N, table.dim, [&](long m, long n) { return table.at(m, n); }, pair, limit,
      grids);
}

Verdict cauchy_verdict(const DoubleSequence& seq, const IFNormPair& pair, const Grids& grids) {
  grids.validate();
  Lattice lat = eval_lattice(seq, grids.M, grids.N, grids.threads);
  const long M = grids.M, N = grids.N;
  const int dim = lat.dim;
  const long tail = grids.tail();

  // Deterministic pair set: exhaustive when small, seeded sample above the
  // 10^6 cap.
  const std::uint64_t cells = static_cast<std::uint64_t>(M + 1) * static_cast<std::uint64_t>(N + 1);
  const std::uint64_t cap = 1000000;
  std::vector<long> pairs;  // flattened (j,k,m,n) quadruples
  if (cells * cells <= cap) {
    pairs.reserve(static_cast<std::size_t>(cells * cells) * 4);
    for (long j = 0; j <= M; ++j)
      for (long k = 0; k <= N; ++k)
        for (long m = 0; m <= M; ++m)
          for (long n = 0; n <= N; ++n) {
            pairs.push_back(j);
            pairs.push_back(k);
            pairs.push_back(m);
            pairs.push_back(n);
          }
  } else {
    std::mt19937_64 rng(grids.seed);
    pairs.reserve(static_cast<std::size_t>(cap) * 4);
    for (std::uint64_t i = 0; i < cap; ++i) {
      pairs.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(M + 1)));
      pairs.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(N + 1)));
      pairs.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(M + 1)));
      pairs.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(N + 1)));
    }
  }

  Verdict v;
  v.M = M;
  v.N = N;
  v.tail_start = tail;
  bool all_found = true;
  bool witness_set = false;

  std::vector<std::vector<long>> max_fail_t(grids.t_grid.size());
  std::vector<std::vector<CellWitness>> wit_t(grids.t_grid.size());
  parallel_for(grids.t_grid.size(), grids.threads, [&](std::size_t ti) {
    const double t = grids.t_grid[ti];
    std::vector<long>& max_fail = max_fail_t[ti];
    std::vector<CellWitness>& wit = wit_t[ti];
    max_fail.assign(grids.eps_grid.size(), -1);
    wit.assign(grids.eps_grid.size(), {});
    Vec diff(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < pairs.size(); i += 4) {
      long j = pairs[i], k = pairs[i + 1], m = pairs[i + 2], n = pairs[i + 3];
      const double* a = lat.at(j, k);
      const double* b = lat.at(m, n);
      for (int c = 0; c < dim; ++c) diff[static_cast<std::size_t>(c)] = a[c] - b[c];
      double mu = pair.mu(diff, t), nu = pair.nu(diff, t);
      long s = std::min(std::min(j, k), std::min(m, n));
      for (std::size_t ei = 0; ei < grids.eps_grid.size(); ++ei) {
        double eps = grids.eps_grid[ei];
        if (mu <= 1.0 - eps || nu >= eps) {
          if (s > max_fail[ei]) {
            max_fail[ei] = s;
            wit[ei] = {m, n, t, mu, nu};
          }
        }
      }
    }
  });

  for (std::size_t ti = 0; ti < grids.t_grid.size(); ++ti) {
    const double t = grids.t_grid[ti];
    const auto& max_fail = max_fail_t[ti];
    const auto& wit = wit_t[ti];
    for (std::size_t ei = 0; ei < grids.eps_grid.size(); ++ei) {
      PairDetail pd;
      pd.t = t;
      pd.eps = grids.eps_grid[ei];
      pd.n0 = max_fail[ei] + 1;
      pd.found = pd.n0 <= tail;
      if (!pd.found) {
        all_found = false;
        if (!witness_set) {
          v.witness = wit[ei];
          witness_set = true;
        }
      } else {
        v.n0_found = std::max(v.n0_found, pd.n0);
      }
      v.detail.push_back(pd);
    }
  }
  v.status = all_found ? Status::Holds : Status::Fails;
  if (!all_found) v.n0_found = -1;
  return v;
}

QBoundedResult q_bounded_estimate(const DoubleSequence& seq, const IFNormPair& pair,
                                  const Grids& grids) {
  grids.validate();
  Lattice lat = eval_lattice(seq, grids.M, grids.N, grids.threads);
  QBoundedResult res;
  res.M = grids.M;
  res.N = grids.N;
  std::vector<double> ts = grids.t_grid;
  for (double extra : {1e4, 1e5})
    if (ts.back() < extra) ts.push_back(extra);

  res.curve.resize(ts.size());
  parallel_for(ts.size(), grids.threads, [&](std::size_t ti) {
    const double t = ts[ti];
    Vec x(static_cast<std::size_t>(lat.dim));
    QBoundedPoint pt;
    pt.t = t;
    pt.inf_mu = 2.0;
    pt.sup_nu = -1.0;
    for (long m = 0; m <= lat.M; ++m) {
      for (long n = 0; n <= lat.N; ++n) {
        const double* cell = lat.at(m, n);
        x.assign(cell, cell + lat.dim);
        double mu = pair.mu(x, t), nu = pair.nu(x, t);
        if (mu < pt.inf_mu) {
          pt.inf_mu = mu;
          pt.mu_arg_m = m;
          pt.mu_arg_n = n;
        }
        pt.sup_nu = std::max(pt.sup_nu, nu);
      }
    }
    res.curve[ti] = pt;
  });
  const QBoundedPoint& last = res.curve.back();
  res.status =
      (last.inf_mu >= 1.0 - 1e-2 && last.sup_nu <= 1e-2) ? Status::Holds : Status::Fails;
  return res;
}

namespace {

// Sliding extrema over windows (i, floor(lambda*i)] for i in [lo, hi],
// reading f(j) for j <= jmax. Window ends are both non-decreasing in i, so
// monotonic deques give O(hi - lo + jmax) total.
struct WindowSlider {
  std::deque<long> qmax, qmin;
  long next = 0;  // first j not yet ingested

  template <typename F>
  void advance(const F& f, long right) {
    for (; next <= right; ++next) {
      double v = f(next);
      while (!qmax.empty() && f(qmax.back()) <= v) qmax.pop_back();
      qmax.push_back(next);
      while (!qmin.empty() && f(qmin.back()) >= v) qmin.pop_back();
      qmin.push_back(next);
    }
  }
  void drop_left(long left) {  // evict indices <= left
    while (!qmax.empty() && qmax.front() <= left) qmax.pop_front();
    while (!qmin.empty() && qmin.front() <= left) qmin.pop_front();
  }
};

struct OscScan {
  double max_diff = -1.0;  // worst |x_window - x_base| over the region
  long wit_m = -1, wit_n = -1;
  long skipped = 0;
  bool has_data = false;
};

// Exact tail scan of max_{window} |x_jk - x_mn| for scalar sequences.
OscScan scan_oscillation_scalar(const Lattice& lat, OscSense sense, double lambda, long tail) {
  OscScan out;
  const long M = lat.M, N = lat.N;
  auto xv = [&](long m, long n) { return lat.data[lat.idx(m, n)]; };
  const long mMax = sense == OscSense::S01 ? M : static_cast<long>(std::floor(M / lambda));
  const long nMax = sense == OscSense::S10 ? N : static_cast<long>(std::floor(N / lambda));
  if (tail > mMax || tail > nMax) return out;

  auto consider = [&](long m, long n, double wmax, double wmin) {
    double base = xv(m, n);
    double d = std::max(wmax - base, base - wmin);
    out.has_data = true;
    if (d > out.max_diff) {
      out.max_diff = d;
      out.wit_m = m;
      out.wit_n = n;
    }
  };

  if (sense == OscSense::S10) {
    for (long n = tail; n <= N; ++n) {
      WindowSlider sl;
      sl.next = tail + 1;
      for (long m = tail; m <= mMax; ++m) {
        long lm = dilated_index(lambda, m);
        if (lm <= m) {
          ++out.skipped;
          continue;
        }
        sl.advance([&](long j) { return xv(j, n); }, lm);
        sl.drop_left(m);
        consider(m, n, xv(sl.qmax.front(), n), xv(sl.qmin.front(), n));
      }
    }
    return out;
  }
  if (sense == OscSense::S01) {
    for (long m = tail; m <= M; ++m) {
      WindowSlider sl;
      sl.next = tail + 1;
      for (long n = tail; n <= nMax; ++n) {
        long ln = dilated_index(lambda, n);
        if (ln <= n) {
          ++out.skipped;
          continue;
        }
        sl.advance([&](long k) { return xv(m, k); }, ln);
        sl.drop_left(n);
        consider(m, n, xv(m, sl.qmax.front()), xv(m, sl.qmin.front()));
      }
    }
    return out;
  }

  // Sense (1,1): row-wise extrema over the k-window, then column-wise over
  // the j-window.
  const long jLo = tail + 1, jHi = std::min(M, dilated_index(lambda, mMax));
  const long nCount = nMax - tail + 1;
  if (jHi < jLo || nCount <= 0) return out;
  std::vector<double> rowmax(static_cast<std::size_t>(jHi - jLo + 1) *
                             static_cast<std::size_t>(nCount));
  std::vector<double> rowmin(rowmax.size());
  std::vector<bool> nvalid(static_cast<std::size_t>(nCount), false);
  for (long j = jLo; j <= jHi; ++j) {
    WindowSlider sl;
    sl.next = tail + 1;
    for (long n = tail; n <= nMax; ++n) {
      long ln = dilated_index(lambda, n);
      std::size_t at =
          static_cast<std::size_t>(j - jLo) * static_cast<std::size_t>(nCount) +
          static_cast<std::size_t>(n - tail);
      if (ln <= n) continue;
      nvalid[static_cast<std::size_t>(n - tail)] = true;
      sl.advance([&](long k) { return xv(j, k); }, ln);
      sl.drop_left(n);
      rowmax[at] = xv(j, sl.qmax.front());
      rowmin[at] = xv(j, sl.qmin.front());
    }
  }
  for (long n = tail; n <= nMax; ++n) {
    long ln = dilated_index(lambda, n);
    if (ln <= n) {
      out.skipped += mMax - tail + 1;
      continue;
    }
    std::size_t ni = static_cast<std::size_t>(n - tail);
    auto colmax = [&](long j) {
      return rowmax[static_cast<std::size_t>(j - jLo) * static_cast<std::size_t>(nCount) + ni];
    };
    auto colmin = [&](long j) {
      return rowmin[static_cast<std::size_t>(j - jLo) * static_cast<std::size_t>(nCount) + ni];
    };
    WindowSlider smax, smin;
    smax.next = smin.next = jLo;
    for (long m = tail; m <= mMax; ++m) {
      long lm = dilated_index(lambda, m);
      if (lm <= m) {
        ++out.skipped;
        continue;
      }
      smax.advance(colmax, lm);
      smax.drop_left(m);
      smin.advance(colmin, lm);
      smin.drop_left(m);
      double wmax = colmax(smax.qmax.front());
      double wmin = colmin(smin.qmin.front());
      consider(m, n, wmax, wmin);
    }
  }
  return out;
}

// General-pair fallback: deterministic strided subsample of base points and
// window cells; mu is evaluated directly on each sampled increment.
OscScan scan_oscillation_general(const Lattice& lat, OscSense sense, double lambda, long tail,
                                 const IFNormPair& pair, std::vector<Vec>* diffs) {
  OscScan out;
  const long M = lat.M, N = lat.N;
  const int dim = lat.dim;
  const long mMax = sense == OscSense::S01 ? M : static_cast<long>(std::floor(M / lambda));
  const long nMax = sense == OscSense::S10 ? N : static_cast<long>(std::floor(N / lambda));
  if (tail > mMax || tail > nMax) return out;

  auto stride_list = [](long lo, long hi, long count) {
    std::vector<long> v;
    if (hi < lo) return v;
    long span = hi - lo;
    long steps = std::min(span, count - 1);
    for (long i = 0; i <= steps; ++i)
      v.push_back(lo + (steps == 0 ? 0 : span * i / steps));
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  Vec diff(static_cast<std::size_t>(dim));
  auto record = [&](long m, long n, long j, long k) {
    const double* a = lat.at(j, k);
    const double* b = lat.at(m, n);
    for (int c = 0; c < dim; ++c) diff[static_cast<std::size_t>(c)] = a[c] - b[c];
    diffs->push_back(diff);
    double d = norm(diff, dim == 1 ? NormChoice::Absolute : pair.norm_choice);
    out.has_data = true;
    if (d > out.max_diff) {
      out.max_diff = d;
      out.wit_m = m;
      out.wit_n = n;
    }
  };

  for (long m : stride_list(tail, mMax, 24)) {
    long lm = dilated_index(lambda, m);
    bool mwin = sense != OscSense::S01;
    if (mwin && lm <= m) {
      ++out.skipped;
      continue;
    }
    for (long n : stride_list(tail, nMax, 24)) {
      long ln = dilated_index(lambda, n);
      bool nwin = sense != OscSense::S10;
      if (nwin && ln <= n) {
        ++out.skipped;
        continue;
      }
      std::vector<long> js = mwin ? stride_list(m + 1, lm, 16) : std::vector<long>{m};
      std::vector<long> ks = nwin ? stride_list(n + 1, ln, 16) : std::vector<long>{n};
      for (long j : js)
        for (long k : ks) record(m, n, j, k);
    }
  }
  return out;
}

// Assembles inner/outer estimates and the at-horizon verdict shared by the
// oscillation and Tauberian conditions.
struct LambdaScanResult {
  double lambda = 0;
  bool has_data = false;
  double max_norm = -1.0;       // radial path
  std::vector<Vec> samples;     // general path
  WindowWitness witness;
  long skipped = 0;
};

void finish_condition(ConditionEstimate& est, const std::vector<LambdaScanResult>& scans,
                      const IFNormPair& pair, const Grids& grids) {
  est.M = grids.M;
  est.N = grids.N;
  est.tail_start = grids.tail();
  est.outer_mu.assign(grids.t_grid.size(), -1.0);
  est.outer_nu.assign(grids.t_grid.size(), 2.0);
  bool any_data = false;
  for (const auto& scan : scans) {
    est.skipped_windows += scan.skipped;
    if (scan.has_data) {
      any_data = true;
      est.witnesses.push_back(scan.witness);
    }
    for (std::size_t ti = 0; ti < grids.t_grid.size(); ++ti) {
      double t = grids.t_grid[ti];
      InnerEstimate ie;
      ie.lambda = scan.lambda;
      ie.t = t;
      ie.has_data = scan.has_data;
      if (scan.has_data) {
        if (pair.radial() && scan.samples.empty()) {
          ie.mu = pair.mu_radial(scan.max_norm, t);
          ie.nu = pair.nu_radial(scan.max_norm, t);
        } else {
          double mn = 2.0, mx = -1.0;
          for (const Vec& v : scan.samples) {
            mn = std::min(mn, pair.mu(v, t));
            mx = std::max(mx, pair.nu(v, t));
          }
          ie.mu = mn;
          ie.nu = mx;
        }
        est.outer_mu[ti] = std::max(est.outer_mu[ti], ie.mu);
        est.outer_nu[ti] = std::min(est.outer_nu[ti], ie.nu);
      }
      est.inner.push_back(ie);
    }
  }
  if (!any_data) {
    est.verdict = Status::Inconclusive;
    return;
  }
  bool ok = true;
  for (std::size_t ti = 0; ti < grids.t_grid.size(); ++ti)
    for (double eps : grids.eps_grid)
      if (!(est.outer_mu[ti] >= 1.0 - eps && est.outer_nu[ti] <= eps)) ok = false;
  est.verdict = ok ? Status::Holds : Status::Fails;
}

}  // namespace

ConditionEstimate slow_oscillation_estimate(const DoubleSequence& seq, const IFNormPair& pair,
                                            OscSense sense, const Grids& grids) {
  grids.validate();
  Lattice lat = eval_lattice(seq, grids.M, grids.N, grids.threads);
  ConditionEstimate est;
  est.variant = "oscillation" + to_string(sense);
  const bool exact = pair.radial() && lat.dim == 1;
  est.subsampled = !exact;

  std::vector<LambdaScanResult> scans(grids.lambda_gt1.size());
  parallel_for(grids.lambda_gt1.size(), grids.threads, [&](std::size_t li) {
    const double lambda = grids.lambda_gt1[li];
    LambdaScanResult& scan = scans[li];
    scan.lambda = lambda;
    OscScan os;
    if (exact) {
      os = scan_oscillation_scalar(lat, sense, lambda, grids.tail());
    } else {
      os = scan_oscillation_general(lat, sense, lambda, grids.tail(), pair, &scan.samples);
    }
    scan.has_data = os.has_data;
    scan.max_norm = os.max_diff;
    scan.skipped = os.skipped;
    scan.witness = {os.wit_m, os.wit_n, lambda, os.max_diff};
  });
  finish_condition(est, scans, pair, grids);
  return est;
}

ConditionEstimate tauberian_condition(const DoubleSequence& seq, const IFNormPair& pair,
                                      const WeightSequence& p, const WeightSequence& q,
                                      WindowVariant variant, const Grids& grids) {
  grids.validate();
  PrefixTable prefix = build_prefix_tables(seq, p, q, grids.M, grids.N, grids.threads);
  CumulativeWeights P = cumulative(p, grids.M);
  CumulativeWeights Q = cumulative(q, grids.N);
  const long M = grids.M, N = grids.N, tail = grids.tail();
  const int dim = prefix.dim;
  const bool gt1 = variant == WindowVariant::DoubleGt1 || variant == WindowVariant::Strip10Gt1;
  const bool dbl = variant == WindowVariant::DoubleGt1 || variant == WindowVariant::DoubleLt1;
  const bool radial = pair.radial();

  ConditionEstimate est;
  est.variant = "tauber(" + to_string(variant) + ")";

  const auto& lgrid = gt1 ? grids.lambda_gt1 : grids.lambda_lt1;
  if (!radial) est.subsampled = true;
  std::vector<LambdaScanResult> scans(lgrid.size());
  parallel_for(lgrid.size(), grids.threads, [&](std::size_t li) {
    const double lambda = lgrid[li];
    LambdaScanResult& scan = scans[li];
    Vec value(static_cast<std::size_t>(dim));
    scan.lambda = lambda;
    const long mHi = gt1 ? static_cast<long>(std::floor(M / lambda)) : M;
    const long nHi = dbl ? (gt1 ? static_cast<long>(std::floor(N / lambda)) : N) : N;
    // The general-pair fallback subsamples base points; the radial path
    // sweeps every window in the tail.
    long mStep = 1, nStep = 1;
    if (!radial) {
      mStep = std::max<long>(1, (mHi - tail) / 32);
      nStep = std::max<long>(1, (nHi - tail) / 32);
    }
    for (long m = tail; m <= mHi; m += mStep) {
      long lm = dilated_index(lambda, m);
      if (gt1 ? lm <= m : lm >= m) {
        ++scan.skipped;
        continue;
      }
      double dp = gt1 ? P.at(lm) - P.at(m) : P.at(m) - P.at(lm);
      if (dp == 0.0) {
        ++scan.skipped;
        continue;
      }
      for (long n = tail; n <= nHi; n += nStep) {
        long ln = dilated_index(lambda, n);
        double dq = 1.0;
        if (dbl) {
          if (gt1 ? ln <= n : ln >= n) {
            ++scan.skipped;
            continue;
          }
          dq = gt1 ? Q.at(ln) - Q.at(n) : Q.at(n) - Q.at(ln);
          if (dq == 0.0) {
            ++scan.skipped;
            continue;
          }
        }
        const double* xmn = prefix.x(m, n);
        switch (variant) {
          case WindowVariant::DoubleGt1:
            prefix.rect_sum(m, lm, n, ln, value.data());
            for (int i = 0; i < dim; ++i)
              value[static_cast<std::size_t>(i)] =
                  value[static_cast<std::size_t>(i)] / (dp * dq) - xmn[i];
            break;
          case WindowVariant::DoubleLt1:
            prefix.rect_sum(lm, m, ln, n, value.data());
            for (int i = 0; i < dim; ++i)
              value[static_cast<std::size_t>(i)] =
                  xmn[i] - value[static_cast<std::size_t>(i)] / (dp * dq);
            break;
          case WindowVariant::Strip10Gt1:
            prefix.row_sum(m, lm, n, value.data());
            for (int i = 0; i < dim; ++i)
              value[static_cast<std::size_t>(i)] =
                  value[static_cast<std::size_t>(i)] / dp - xmn[i];
            break;
          case WindowVariant::Strip10Lt1:
            prefix.row_sum(lm, m, n, value.data());
            for (int i = 0; i < dim; ++i)
              value[static_cast<std::size_t>(i)] =
                  xmn[i] - value[static_cast<std::size_t>(i)] / dp;
            break;
        }
        scan.has_data = true;
        double d = norm(value.data(), static_cast<std::size_t>(dim),
                        dim == 1 ? NormChoice::Absolute : pair.norm_choice);
        if (d > scan.max_norm) {
          scan.max_norm = d;
          scan.witness = {m, n, lambda, d};
        }
        if (!radial) scan.samples.push_back(value);
      }
    }
  });
  finish_condition(est, scans, pair, grids);
  return est;
}

SvaResult sva_plus_estimate(const CumulativeWeights& P, const Grids& grids) {
  SvaResult res;
  res.M = P.horizon();
  res.in_sva = true;
  std::vector<double> lambdas = grids.lambda_gt1;
  lambdas.insert(lambdas.end(), grids.lambda_lt1.begin(), grids.lambda_lt1.end());
  for (double lambda : lambdas) {
    SvaPerLambda pl;
    pl.lambda = lambda;
    const long Mp = lambda > 1.0 ? static_cast<long>(std::floor(res.M / lambda)) : res.M;
    const long mid = Mp / 2, quarter = Mp / 4;
    auto sep = [&](long m) {
      return std::fabs(P.at(dilated_index(lambda, m)) / P.at(m) - 1.0);
    };
    pl.tail_inf = 2.0;
    pl.early_inf = 2.0;
    for (long m = std::max<long>(1, quarter); m < mid; ++m)
      pl.early_inf = std::min(pl.early_inf, sep(m));
    for (long m = std::max<long>(1, mid); m <= Mp; ++m)
      pl.tail_inf = std::min(pl.tail_inf, sep(m));
    // liminf > 0 at horizon: the separation must clear 1e-3 and must not be
    // decaying from the earlier window toward 0.
    pl.decaying = pl.early_inf > 0.0 && pl.tail_inf < 0.98 * pl.early_inf;
    if (pl.tail_inf < 1e-3 || pl.decaying) res.in_sva = false;
    res.per_lambda.push_back(pl);
  }
  return res;
}

RegvarResult regvar_index_estimate(const CumulativeWeights& P, double lambda, const Grids&) {
  if (!(lambda > 1.0)) throw std::invalid_argument("lambda must exceed 1");
  RegvarResult res;
  res.lambda = lambda;
  const long M = P.horizon();
  const long Mp = static_cast<long>(std::floor(M / lambda));
  const long lo = std::max<long>(1, Mp / 2);
  if (Mp < 1) throw std::invalid_argument("horizon too small for lambda");
  std::vector<double> rhos;
  res.limsup_tail_max = 0.0;
  for (long m = lo; m <= Mp; ++m) {
    double ratio = P.at(dilated_index(lambda, m)) / P.at(m);
    rhos.push_back(std::log(ratio) / std::log(lambda));
    res.limsup_tail_max = std::max(res.limsup_tail_max, ratio - 1.0);
  }
  std::sort(rhos.begin(), rhos.end());
  std::size_t h = rhos.size() / 2;
  res.rho_hat = rhos.size() % 2 == 1 ? rhos[h] : 0.5 * (rhos[h - 1] + rhos[h]);
  res.limsup_dev = std::fabs(res.limsup_tail_max - (std::pow(lambda, res.rho_hat) - 1.0));
  res.limsup_ok = res.limsup_dev <= 0.05;
  res.positive_index = res.rho_hat >= 0.2;
  return res;
}

}  // namespace ifns
