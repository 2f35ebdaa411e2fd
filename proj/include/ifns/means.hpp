#ifndef IFNS_MEANS_HPP
#define IFNS_MEANS_HPP

#include <string>

#include "ifns/sequences.hpp"

namespace ifns {

enum class AlphaBeta { T11, T10, T01 };

inline std::string to_string(AlphaBeta ab) {
  switch (ab) {
    case AlphaBeta::T11: return "(1,1)";
    case AlphaBeta::T10: return "(1,0)";
    case AlphaBeta::T01: return "(0,1)";
  }
  return "?";
}

// Weighted means over [0,M]x[0,N]:
//   t11(m,n) = S(m,n)/(P_m Q_n),  t10(m,n) = R(m,n)/P_m,  t01 = C(m,n)/Q_n.
struct MeanTable {
  AlphaBeta alpha_beta = AlphaBeta::T11;
  long M = 0, N = 0;
  int dim = 1;
  std::vector<double> values;

  std::size_t idx(long m, long n) const {
    return (static_cast<std::size_t>(m) * static_cast<std::size_t>(N + 1) +
            static_cast<std::size_t>(n)) *
           static_cast<std::size_t>(dim);
  }
  const double* at(long m, long n) const { return &values[idx(m, n)]; }
};

MeanTable mean_table(const PrefixTable& prefix, const CumulativeWeights& P,
                     const CumulativeWeights& Q, AlphaBeta alpha_beta, int threads = 1);

enum class WindowVariant { DoubleGt1, DoubleLt1, Strip10Gt1, Strip10Lt1 };

std::string to_string(WindowVariant v);
WindowVariant window_variant_from_string(const std::string& s);

// De la Vallee Poussin rectangle/strip mean centered at (m,n):
//   double-gt1:  mean over (m,lm]x(n,ln] of p_j q_k (x_jk - x_mn)
//   double-lt1:  mean over (lm,m]x(ln,n] of p_j q_k (x_mn - x_jk)
//   strip10-gt1: mean over j in (m,lm] of p_j (x_jn - x_mn)
//   strip10-lt1: mean over j in (lm,m] of p_j (x_mn - x_jn)
// where lm = floor(lambda*m), ln = floor(lambda*n).
struct RectangleMean {
  long m = 0, n = 0;
  double lambda = 0.0;
  long lambda_m = 0, lambda_n = 0;
  WindowVariant variant = WindowVariant::DoubleGt1;
  Vec value;
};

// Throws std::invalid_argument("degenerate window") when the index window
// is empty and std::runtime_error("flat weights on window") when a weight
// denominator vanishes.
RectangleMean rectangle_mean(const PrefixTable& prefix, const CumulativeWeights& P,
                             const CumulativeWeights& Q, long m, long n, double lambda,
                             WindowVariant variant);

// Residual ||LHS - RHS|| of the exact decomposition identity for the given
// variant: the rectangle/strip mean against its mean-table combination.
// Supported variants: double-gt1, strip10-gt1, strip10-lt1 (the identities
// the method provides); double-lt1 has no stated identity and is rejected.
double verify_decomposition(const PrefixTable& prefix, const MeanTable& means,
                            const CumulativeWeights& P, const CumulativeWeights& Q, long m, long n,
                            double lambda, WindowVariant variant);

inline long dilated_index(double lambda, long m) {
  return static_cast<long>(std::floor(lambda * static_cast<double>(m)));
}

}  // namespace ifns

#endif  // IFNS_MEANS_HPP
