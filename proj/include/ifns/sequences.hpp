#ifndef IFNS_SEQUENCES_HPP
#define IFNS_SEQUENCES_HPP

#include <functional>
#include <string>
#include <vector>

#include "ifns/expr.hpp"
#include "ifns/vec.hpp"

namespace ifns {

// Pure total map N^2 -> R^d. Evaluation is deterministic and side-effect
// free; repeated evaluation at the same (m,n) is bit-identical.
struct DoubleSequence {
  std::function<void(long, long, double*)> eval_into;
  int dim = 1;
  std::string descriptor;

  Vec operator()(long m, long n) const {
    Vec v(static_cast<std::size_t>(dim));
    eval_into(m, n, v.data());
    return v;
  }
};

// Nonnegative weights with p_0 > 0.
struct WeightSequence {
  std::function<double(long)> w;
  std::string descriptor;
  bool strictly_positive = false;

  double operator()(long j) const { return w(j); }
};

struct CumulativeWeights {
  std::vector<double> P;  // P_m = sum_{j<=m} p_j, ascending order
  bool divergence_warning = false;

  long horizon() const { return static_cast<long>(P.size()) - 1; }
  double at(long m) const { return P[static_cast<std::size_t>(m)]; }
};

// 2D weighted prefix tables over [0,M]x[0,N]:
//   S(m,n) = sum_{j<=m} sum_{k<=n} p_j q_k x_jk
//   R(m,n) = sum_{j<=m} p_j x_jn          (row strips)
//   C(m,n) = sum_{k<=n} q_k x_mk          (column strips)
// X caches the raw sequence values. Summation is row-major ascending so
// results are bit-deterministic across runs and thread counts.
struct PrefixTable {
  long M = 0, N = 0;
  int dim = 1;
  std::vector<double> X, S, R, C;

  std::size_t idx(long m, long n) const {
    return (static_cast<std::size_t>(m) * static_cast<std::size_t>(N + 1) +
            static_cast<std::size_t>(n)) *
           static_cast<std::size_t>(dim);
  }
  const double* x(long m, long n) const { return &X[idx(m, n)]; }
  const double* s(long m, long n) const { return &S[idx(m, n)]; }
  const double* r(long m, long n) const { return &R[idx(m, n)]; }
  const double* c(long m, long n) const { return &C[idx(m, n)]; }

  // sum_{j in (a,b]} sum_{k in (c,d]} p_j q_k x_jk via inclusion-exclusion;
  // a and c may be -1 for a full prefix.
  void rect_sum(long a, long b, long c, long d, double* out) const;
  // sum_{j in (a,b]} p_j x_jn
  void row_sum(long a, long b, long n, double* out) const;
};

// Expression-backed sequence over variables m,n. Dimension follows a
// top-level tuple literal, 1 otherwise.
DoubleSequence compile_expression(const std::string& text);

DoubleSequence constant_sequence(const Vec& value);

// Builtins "ones", "linear" (j+1), "harmonic" (1/(j+1)), or an expression
// in the given variable name (j or k).
WeightSequence weight_sequence(const std::string& text, const std::string& var = "j");

// P_m for m in [0,M]. Throws "invalid weight sequence" if p_0 <= 0 or any
// p_j < 0. divergence_warning is set when P_M < 10*P_0.
CumulativeWeights cumulative(const WeightSequence& p, long M);

// Evaluates seq over the lattice and accumulates all three tables.
// threads only parallelizes the pointwise evaluations; reductions stay
// sequential in the fixed order. Throws EvalError at the first (m,n)
// producing a non-finite value.
PrefixTable build_prefix_tables(const DoubleSequence& seq, const WeightSequence& p,
                                const WeightSequence& q, long M, long N, int threads = 1);

enum class Axis { M, N };
enum class DiffScaling { None, Index, Weighted };

// (m,n) -> scale * (x_mn - x_{m-1,n}) along the chosen axis; value at index
// 0 along the differenced axis is theta. Scale is 1, the index, or P/p of
// the index (weights must be strictly positive).
DoubleSequence difference_transform(const DoubleSequence& seq, Axis axis, DiffScaling scaling,
                                    const WeightSequence* weights = nullptr);

}  // namespace ifns

#endif  // IFNS_SEQUENCES_HPP
