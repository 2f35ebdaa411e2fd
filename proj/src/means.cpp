#include "ifns/means.hpp"

#include <cmath>
#include <stdexcept>

namespace ifns {

std::string to_string(WindowVariant v) {
  switch (v) {
    case WindowVariant::DoubleGt1: return "double-gt1";
    case WindowVariant::DoubleLt1: return "double-lt1";
    case WindowVariant::Strip10Gt1: return "strip10-gt1";
    case WindowVariant::Strip10Lt1: return "strip10-lt1";
  }
  return "?";
}

WindowVariant window_variant_from_string(const std::string& s) {
  if (s == "double-gt1") return WindowVariant::DoubleGt1;
  if (s == "double-lt1") return WindowVariant::DoubleLt1;
  if (s == "strip10-gt1") return WindowVariant::Strip10Gt1;
  if (s == "strip10-lt1") return WindowVariant::Strip10Lt1;
  throw std::invalid_argument("unknown window variant: " + s);
}

MeanTable mean_table(const PrefixTable& prefix, const CumulativeWeights& P,
                     const CumulativeWeights& Q, AlphaBeta alpha_beta, int) {
  if (P.horizon() < prefix.M || Q.horizon() < prefix.N)
    throw std::invalid_argument("cumulative weights do not cover the horizon");
  MeanTable t;
  t.alpha_beta = alpha_beta;
  t.M = prefix.M;
  t.N = prefix.N;
  t.dim = prefix.dim;
  t.values.resize(prefix.S.size());
  const int d = prefix.dim;
  for (long m = 0; m <= t.M; ++m) {
    for (long n = 0; n <= t.N; ++n) {
      double denom = 0.0;
      const double* src = nullptr;
      switch (alpha_beta) {
        case AlphaBeta::T11:
          denom = P.at(m) * Q.at(n);
          src = prefix.s(m, n);
          break;
        case AlphaBeta::T10:
          denom = P.at(m);
          src = prefix.r(m, n);
          break;
        case AlphaBeta::T01:
          denom = Q.at(n);
          src = prefix.c(m, n);
          break;
      }
      double* dst = &t.values[t.idx(m, n)];
      for (int i = 0; i < d; ++i) dst[i] = src[i] / denom;
    }
  }
  return t;
}

RectangleMean rectangle_mean(const PrefixTable& prefix, const CumulativeWeights& P,
                             const CumulativeWeights& Q, long m, long n, double lambda,
                             WindowVariant variant) {
  RectangleMean rm;
  rm.m = m;
  rm.n = n;
  rm.lambda = lambda;
  rm.variant = variant;
  rm.lambda_m = dilated_index(lambda, m);
  rm.lambda_n = dilated_index(lambda, n);
  const int d = prefix.dim;
  rm.value.assign(static_cast<std::size_t>(d), 0.0);
  const double* xmn = prefix.x(m, n);

  const bool gt1 = variant == WindowVariant::DoubleGt1 || variant == WindowVariant::Strip10Gt1;
  const bool dbl = variant == WindowVariant::DoubleGt1 || variant == WindowVariant::DoubleLt1;
  if (gt1) {
    if (!(lambda > 1.0)) throw std::invalid_argument("degenerate window");
    if (rm.lambda_m <= m || (dbl && rm.lambda_n <= n))
      throw std::invalid_argument("degenerate window");
    if (rm.lambda_m > prefix.M || (dbl && rm.lambda_n > prefix.N))
      throw std::invalid_argument("degenerate window");
  } else {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("degenerate window");
    if (rm.lambda_m >= m || (dbl && rm.lambda_n >= n))
      throw std::invalid_argument("degenerate window");
  }

  switch (variant) {
    case WindowVariant::DoubleGt1: {
      double dp = P.at(rm.lambda_m) - P.at(m);
      double dq = Q.at(rm.lambda_n) - Q.at(n);
      if (dp == 0.0 || dq == 0.0) throw std::runtime_error("flat weights on window");
      prefix.rect_sum(m, rm.lambda_m, n, rm.lambda_n, rm.value.data());
      for (int i = 0; i < d; ++i) rm.value[static_cast<std::size_t>(i)] =
          rm.value[static_cast<std::size_t>(i)] / (dp * dq) - xmn[i];
      break;
    }
    case WindowVariant::DoubleLt1: {
      double dp = P.at(m) - P.at(rm.lambda_m);
      double dq = Q.at(n) - Q.at(rm.lambda_n);
      if (dp == 0.0 || dq == 0.0) throw std::runtime_error("flat weights on window");
      prefix.rect_sum(rm.lambda_m, m, rm.lambda_n, n, rm.value.data());
      for (int i = 0; i < d; ++i) rm.value[static_cast<std::size_t>(i)] =
          xmn[i] - rm.value[static_cast<std::size_t>(i)] / (dp * dq);
      break;
    }
    case WindowVariant::Strip10Gt1: {
      double dp = P.at(rm.lambda_m) - P.at(m);
      if (dp == 0.0) throw std::runtime_error("flat weights on window");
      prefix.row_sum(m, rm.lambda_m, n, rm.value.data());
      for (int i = 0; i < d; ++i) rm.value[static_cast<std::size_t>(i)] =
          rm.value[static_cast<std::size_t>(i)] / dp - xmn[i];
      break;
    }
    case WindowVariant::Strip10Lt1: {
      double dp = P.at(m) - P.at(rm.lambda_m);
      if (dp == 0.0) throw std::runtime_error("flat weights on window");
      prefix.row_sum(rm.lambda_m, m, n, rm.value.data());
      for (int i = 0; i < d; ++i) rm.value[static_cast<std::size_t>(i)] =
          xmn[i] - rm.value[static_cast<std::size_t>(i)] / dp;
      break;
    }
  }
  return rm;
}

double verify_decomposition(const PrefixTable& prefix, const MeanTable& means,
                            const CumulativeWeights& P, const CumulativeWeights& Q, long m, long n,
                            double lambda, WindowVariant variant) {
  RectangleMean rm = rectangle_mean(prefix, P, Q, m, n, lambda, variant);
  const long lm = rm.lambda_m, ln = rm.lambda_n;
  const int d = prefix.dim;
  const double* xmn = prefix.x(m, n);
  Vec rhs(static_cast<std::size_t>(d), 0.0);
  Vec lhs = rm.value;

  switch (variant) {
    case WindowVariant::DoubleGt1: {
      if (means.alpha_beta != AlphaBeta::T11)
        throw std::invalid_argument("mean table must be (1,1) for double variants");
      double ap = 1.0 / (P.at(lm) / P.at(m) - 1.0);
      double aq = 1.0 / (Q.at(ln) / Q.at(n) - 1.0);
      const double* tll = means.at(lm, ln);
      const double* tml = means.at(m, ln);
      const double* tln_ = means.at(lm, n);
      const double* tmn = means.at(m, n);
      for (int i = 0; i < d; ++i)
        rhs[static_cast<std::size_t>(i)] =
            tll[i] - xmn[i] + ap * (tll[i] - tml[i]) + aq * (tll[i] - tln_[i]) +
            ap * aq * (tll[i] - tml[i] - tln_[i] + tmn[i]);
      break;
    }
    case WindowVariant::Strip10Gt1: {
      if (means.alpha_beta != AlphaBeta::T10)
        throw std::invalid_argument("mean table must be (1,0) for strip variants");
      double ap = 1.0 / (P.at(lm) / P.at(m) - 1.0);
      const double* tl = means.at(lm, n);
      const double* tm = means.at(m, n);
      for (int i = 0; i < d; ++i)
        rhs[static_cast<std::size_t>(i)] = tl[i] - xmn[i] + ap * (tl[i] - tm[i]);
      break;
    }
    case WindowVariant::Strip10Lt1: {
      if (means.alpha_beta != AlphaBeta::T10)
        throw std::invalid_argument("mean table must be (1,0) for strip variants");
      // The identity is stated for the mean of (x_jn - x_mn); the operation
      // returns the mean of (x_mn - x_jn), so compare against the negation.
      double ap = 1.0 / (P.at(m) / P.at(lm) - 1.0);
      const double* tm = means.at(m, n);
      const double* tl = means.at(lm, n);
      for (int i = 0; i < d; ++i) {
        rhs[static_cast<std::size_t>(i)] = tm[i] - xmn[i] + ap * (tm[i] - tl[i]);
        lhs[static_cast<std::size_t>(i)] = -lhs[static_cast<std::size_t>(i)];
      }
      break;
    }
    case WindowVariant::DoubleLt1:
      throw std::invalid_argument("no decomposition identity for double-lt1");
  }
  Vec diff = sub(lhs, rhs);
  return norm(diff, d == 1 ? NormChoice::Absolute : NormChoice::Euclidean);
}

}  // namespace ifns
