#include "ifns/sequences.hpp"

#include <cmath>
#include <memory>
#include <mutex>
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

}  // namespace

void PrefixTable::rect_sum(long a, long b, long c, long d, double* out) const {
  auto get = [this](long m, long n) -> const double* {
    return (m < 0 || n < 0) ? nullptr : s(m, n);
  };
  const double* bd = get(b, d);
  const double* ad = get(a, d);
  const double* bc = get(b, c);
  const double* ac = get(a, c);
  for (int i = 0; i < dim; ++i) {
    double v = bd[i];
    if (ad) v -= ad[i];
    if (bc) v -= bc[i];
    if (ac) v += ac[i];
    out[i] = v;
  }
}

void PrefixTable::row_sum(long a, long b, long n, double* out) const {
  const double* rb = r(b, n);
  const double* ra = a < 0 ? nullptr : r(a, n);
  for (int i = 0; i < dim; ++i) out[i] = rb[i] - (ra ? ra[i] : 0.0);
}

DoubleSequence compile_expression(const std::string& text) {
  auto expr = std::make_shared<CompiledExpr>(CompiledExpr::compile(text, {"m", "n"}));
  DoubleSequence seq;
  seq.dim = expr->dim();
  seq.descriptor = text;
  seq.eval_into = [expr](long m, long n, double* out) {
    double args[2] = {static_cast<double>(m), static_cast<double>(n)};
    try {
      expr->eval_into(args, out);
    } catch (const EvalError& e) {
      throw EvalError(e.what(), m, n);
    }
  };
  return seq;
}

DoubleSequence constant_sequence(const Vec& value) {
  DoubleSequence seq;
  seq.dim = static_cast<int>(value.size());
  seq.descriptor = "constant" + std::string(value.size() == 1 ? "" : " tuple");
  seq.eval_into = [value](long, long, double* out) {
    for (std::size_t i = 0; i < value.size(); ++i) out[i] = value[i];
  };
  return seq;
}

WeightSequence weight_sequence(const std::string& text, const std::string& var) {
  WeightSequence ws;
  ws.descriptor = text;
  if (text == "ones") {
    ws.w = [](long) { return 1.0; };
    ws.strictly_positive = true;
    return ws;
  }
  if (text == "linear") {
    ws.w = [](long j) { return static_cast<double>(j + 1); };
    ws.strictly_positive = true;
    return ws;
  }
  if (text == "harmonic") {
    ws.w = [](long j) { return 1.0 / static_cast<double>(j + 1); };
    ws.strictly_positive = true;
    return ws;
  }
  auto expr = std::make_shared<CompiledExpr>(CompiledExpr::compile(text, {var}));
  if (expr->dim() != 1) throw std::invalid_argument("weight expression must be scalar");
  ws.w = [expr](long j) {
    double arg = static_cast<double>(j);
    return expr->eval_scalar(&arg);
  };
  // Positivity established by a finite probe; cumulative() re-checks every
  // value it actually consumes.
  bool positive = true;
  for (long j = 0; j <= 4096 && positive; ++j) positive = ws.w(j) > 0.0;
  ws.strictly_positive = positive;
  return ws;
}

CumulativeWeights cumulative(const WeightSequence& p, long M) {
  if (M < 0) throw std::invalid_argument("horizon must be >= 0");
  CumulativeWeights cw;
  cw.P.resize(static_cast<std::size_t>(M) + 1);
  double acc = 0.0;
  for (long j = 0; j <= M; ++j) {
    double pj = p(j);
    if (j == 0 && pj <= 0.0) throw std::invalid_argument("invalid weight sequence");
    if (pj < 0.0 || !std::isfinite(pj)) throw std::invalid_argument("invalid weight sequence");
    acc += pj;
    cw.P[static_cast<std::size_t>(j)] = acc;
  }
  cw.divergence_warning = cw.P.back() < 10.0 * cw.P.front();
  return cw;
}

PrefixTable build_prefix_tables(const DoubleSequence& seq, const WeightSequence& p,
                                const WeightSequence& q, long M, long N, int threads) {
  if (M < 0 || N < 0) throw std::invalid_argument("horizon must be >= 0");
  PrefixTable t;
  t.M = M;
  t.N = N;
  t.dim = seq.dim;
  const std::size_t cells = static_cast<std::size_t>(M + 1) * static_cast<std::size_t>(N + 1) *
                            static_cast<std::size_t>(seq.dim);
  t.X.resize(cells);
  t.S.resize(cells);
  t.R.resize(cells);
  t.C.resize(cells);

  // Pointwise evaluations are independent; parallelizing them cannot change
  // the sequential reductions below.
  parallel_rows(M, threads, [&](long m) {
    for (long n = 0; n <= N; ++n) seq.eval_into(m, n, &t.X[t.idx(m, n)]);
  });
  for (long m = 0; m <= M; ++m)
    for (long n = 0; n <= N; ++n)
      for (int i = 0; i < seq.dim; ++i)
        if (!std::isfinite(t.X[t.idx(m, n) + static_cast<std::size_t>(i)]))
          throw EvalError("non-finite sequence value", m, n);

  std::vector<double> pw(static_cast<std::size_t>(M) + 1), qw(static_cast<std::size_t>(N) + 1);
  for (long j = 0; j <= M; ++j) {
    pw[static_cast<std::size_t>(j)] = p(j);
    if (j == 0 && pw[0] <= 0.0) throw std::invalid_argument("invalid weight sequence");
    if (pw[static_cast<std::size_t>(j)] < 0.0)
      throw std::invalid_argument("invalid weight sequence");
  }
  for (long k = 0; k <= N; ++k) {
    qw[static_cast<std::size_t>(k)] = q(k);
    if (k == 0 && qw[0] <= 0.0) throw std::invalid_argument("invalid weight sequence");
    if (qw[static_cast<std::size_t>(k)] < 0.0)
      throw std::invalid_argument("invalid weight sequence");
  }

  const int d = seq.dim;
  // C by row-major forward accumulation over k; then S(m,n) = S(m-1,n) +
  // p_m C(m,n) and R(m,n) = R(m-1,n) + p_m x_mn. Additions only.
  for (long m = 0; m <= M; ++m) {
    const double pm = pw[static_cast<std::size_t>(m)];
    for (long n = 0; n <= N; ++n) {
      const double qn = qw[static_cast<std::size_t>(n)];
      const std::size_t here = t.idx(m, n);
      const double* xv = &t.X[here];
      for (int i = 0; i < d; ++i) {
        double ci = qn * xv[i];
        if (n > 0) ci += t.C[t.idx(m, n - 1) + static_cast<std::size_t>(i)];
        t.C[here + static_cast<std::size_t>(i)] = ci;

        double ri = pm * xv[i];
        double si = pm * t.C[here + static_cast<std::size_t>(i)];
        if (m > 0) {
          ri += t.R[t.idx(m - 1, n) + static_cast<std::size_t>(i)];
          si += t.S[t.idx(m - 1, n) + static_cast<std::size_t>(i)];
        }
        t.R[here + static_cast<std::size_t>(i)] = ri;
        t.S[here + static_cast<std::size_t>(i)] = si;
      }
    }
  }
  for (std::size_t i = 0; i < t.S.size(); ++i)
    if (!std::isfinite(t.S[i])) {
      std::size_t cell = i / static_cast<std::size_t>(d);
      long m = static_cast<long>(cell / static_cast<std::size_t>(N + 1));
      long n = static_cast<long>(cell % static_cast<std::size_t>(N + 1));
      throw EvalError("non-finite prefix sum", m, n);
    }
  return t;
}

DoubleSequence difference_transform(const DoubleSequence& seq, Axis axis, DiffScaling scaling,
                                    const WeightSequence* weights) {
  struct WCache {
    WeightSequence w;
    std::mutex lock;
    CumulativeWeights cw;
    // P_j / p_j. The cumulative sums are always rebuilt from index 0 in
    // ascending order, so cached values are bit-identical no matter which
    // thread triggered the extension.
    double ratio(long j) {
      std::lock_guard<std::mutex> g(lock);
      if (cw.horizon() < j) cw = cumulative(w, std::max(j, 2 * cw.horizon() + 2));
      double pj = w(j);
      if (pj <= 0.0) throw std::invalid_argument("weights must be strictly positive");
      return cw.at(j) / pj;
    }
  };
  std::shared_ptr<WCache> cache;
  if (scaling == DiffScaling::Weighted) {
    if (weights == nullptr || !weights->strictly_positive)
      throw std::invalid_argument("weights must be strictly positive");
    cache = std::make_shared<WCache>();
    cache->w = *weights;
  }

  DoubleSequence out;
  out.dim = seq.dim;
  out.descriptor = "diff[" + std::string(axis == Axis::M ? "m" : "n") + "," +
                   (scaling == DiffScaling::None     ? "none"
                    : scaling == DiffScaling::Index  ? "index"
                                                     : "weighted") +
                   "](" + seq.descriptor + ")";
  const int d = seq.dim;
  auto base = seq.eval_into;
  out.eval_into = [base, axis, scaling, cache, d](long m, long n, double* res) {
    long along = axis == Axis::M ? m : n;
    if (along == 0) {
      for (int i = 0; i < d; ++i) res[i] = 0.0;
      return;
    }
    std::vector<double> prev(static_cast<std::size_t>(d));
    base(m, n, res);
    if (axis == Axis::M)
      base(m - 1, n, prev.data());
    else
      base(m, n - 1, prev.data());
    double scalef = 1.0;
    if (scaling == DiffScaling::Index)
      scalef = static_cast<double>(along);
    else if (scaling == DiffScaling::Weighted)
      scalef = cache->ratio(along);
    for (int i = 0; i < d; ++i) res[i] = scalef * (res[i] - prev[i]);
  };
  return out;
}

}  // namespace ifns
