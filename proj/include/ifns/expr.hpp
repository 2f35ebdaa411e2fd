#ifndef IFNS_EXPR_HPP
#define IFNS_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifns {

// Grammar (exact):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' base)?
//   base   := number | var | func '(' expr ')' | '(' expr ')' | '-' base
//   func   := log|sqrt|sin|cos|alt|harm
// Variables are supplied at compile time (m,n for sequences; j or k for
// weights). A top-level tuple literal (e1,...,ed) yields output dimension d.

struct ParseError : std::runtime_error {
  std::size_t column;  // 1-based
  std::string expected;
  ParseError(std::size_t col, const std::string& what, const std::string& exp)
      : std::runtime_error("syntax error at column " + std::to_string(col) + ": " + what),
        column(col),
        expected(exp) {}
};

struct EvalError : std::runtime_error {
  long m = -1, n = -1;
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
  EvalError(const std::string& what, long m_, long n_)
      : std::runtime_error(what + " at (" + std::to_string(m_) + "," + std::to_string(n_) + ")"),
        m(m_),
        n(n_) {}
};

namespace detail {
struct Node;
}

class CompiledExpr {
 public:
  // vars: names bound to argument slots, e.g. {"m","n"} or {"j"}.
  static CompiledExpr compile(const std::string& text, const std::vector<std::string>& vars);

  // Number of output components (1 unless the source is a tuple literal).
  int dim() const { return static_cast<int>(roots_.size()); }
  const std::string& text() const { return text_; }

  // Evaluates all components into out[0..dim). args must cover every slot.
  void eval_into(const double* args, double* out) const;
  double eval_scalar(const double* args) const;  // dim()==1 only

 private:
  std::string text_;
  std::vector<std::shared_ptr<const detail::Node>> roots_;
};

// Exact ascending-order harmonic number H_k = sum_{i=1..k} 1/i, H_0 = 0.
// Cached per thread; identical summation order keeps results bit-stable.
double harmonic_number(long k);

}  // namespace ifns

#endif  // IFNS_EXPR_HPP
