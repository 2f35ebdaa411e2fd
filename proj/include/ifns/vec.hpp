#ifndef IFNS_VEC_HPP
#define IFNS_VEC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifns {

// Element of the ambient space R^d. The zero vector plays the role of theta.
using Vec = std::vector<double>;

enum class NormChoice { Absolute, Euclidean, Supremum };

inline std::string to_string(NormChoice c) {
  switch (c) {
    case NormChoice::Absolute: return "absolute";
    case NormChoice::Euclidean: return "euclidean";
    case NormChoice::Supremum: return "supremum";
  }
  return "?";
}

inline NormChoice norm_choice_from_string(const std::string& s) {
  if (s == "absolute") return NormChoice::Absolute;
  if (s == "euclidean") return NormChoice::Euclidean;
  if (s == "supremum") return NormChoice::Supremum;
  throw std::invalid_argument("unknown norm: " + s);
}

inline double norm(const double* x, std::size_t d, NormChoice c) {
  switch (c) {
    case NormChoice::Absolute:
      if (d != 1) throw std::invalid_argument("absolute norm requires d=1");
      return std::fabs(x[0]);
    case NormChoice::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += x[i] * x[i];
      return std::sqrt(s);
    }
    case NormChoice::Supremum: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s = std::max(s, std::fabs(x[i]));
      return s;
    }
  }
  return 0.0;
}

inline double norm(const Vec& x, NormChoice c) { return norm(x.data(), x.size(), c); }

inline bool is_finite(const Vec& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

inline Vec zero(std::size_t d) { return Vec(d, 0.0); }

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

}  // namespace ifns

#endif  // IFNS_VEC_HPP
