#include "ifns/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace ifns {

double harmonic_number(long k) {
  if (k <= 0) return 0.0;
  thread_local std::vector<double> cache{0.0};  // cache[i] = H_i
  while (static_cast<long>(cache.size()) <= k) {
    double i = static_cast<double>(cache.size());
    cache.push_back(cache.back() + 1.0 / i);
  }
  return cache[static_cast<std::size_t>(k)];
}

namespace detail {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Log, Sqrt, Sin, Cos, Alt, Harm };

struct Node {
  Op op;
  double value = 0.0;  // Const
  int slot = 0;        // Var
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Node>;

static NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

static double eval_node(const Node& n, const double* args) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return args[n.slot];
    case Op::Add: return eval_node(*n.a, args) + eval_node(*n.b, args);
    case Op::Sub: return eval_node(*n.a, args) - eval_node(*n.b, args);
    case Op::Mul: return eval_node(*n.a, args) * eval_node(*n.b, args);
    case Op::Div: {
      double d = eval_node(*n.b, args);
      if (d == 0.0) throw EvalError("division by zero");
      return eval_node(*n.a, args) / d;
    }
    case Op::Pow: return std::pow(eval_node(*n.a, args), eval_node(*n.b, args));
    case Op::Neg: return -eval_node(*n.a, args);
    case Op::Log: return std::log(eval_node(*n.a, args));
    case Op::Sqrt: return std::sqrt(eval_node(*n.a, args));
    case Op::Sin: return std::sin(eval_node(*n.a, args));
    case Op::Cos: return std::cos(eval_node(*n.a, args));
    case Op::Alt: {
      long k = std::llround(eval_node(*n.a, args));
      return (k % 2 == 0) ? 1.0 : -1.0;
    }
    case Op::Harm: return harmonic_number(std::llround(eval_node(*n.a, args)));
  }
  throw EvalError("corrupt expression node");
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : text_(text) {
    for (std::size_t i = 0; i < vars.size(); ++i) slots_[vars[i]] = static_cast<int>(i);
  }

  std::vector<NodePtr> parse_toplevel() {
    skip_ws();
    // A top-level tuple literal "(e1, e2, ...)" with a comma at depth 1.
    if (peek() == '(' && has_toplevel_comma()) {
      std::vector<NodePtr> parts;
      expect('(');
      parts.push_back(parse_expr());
      while (peek() == ',') {
        ++pos_;
        parts.push_back(parse_expr());
      }
      expect(')');
      end();
      return parts;
    }
    auto e = parse_expr();
    end();
    return {e};
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::map<std::string, int> slots_;

  [[noreturn]] void fail(const std::string& what, const std::string& expected) {
    throw ParseError(pos_ + 1, what, expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'", std::string(1, c));
    ++pos_;
  }

  void end() {
    if (peek() != '\0') fail("unexpected trailing input", "end of input");
  }

  bool has_toplevel_comma() {
    int depth = 0;
    for (std::size_t i = pos_; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '(') ++depth;
      else if (c == ')') --depth;
      else if (c == ',' && depth == 1) return true;
      if (depth == 0 && c == ')') break;
    }
    return false;
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = make(c == '+' ? Op::Add : Op::Sub, lhs, parse_term());
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    while (true) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = make(c == '*' ? Op::Mul : Op::Div, lhs, parse_factor());
    }
  }

  NodePtr parse_factor() {
    auto lhs = parse_base();
    if (peek() == '^') {
      ++pos_;
      return make(Op::Pow, lhs, parse_base());
    }
    return lhs;
  }

  NodePtr parse_base() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input", "number, variable, function or '('");
    if (c == '-') {
      ++pos_;
      return make(Op::Neg, parse_base());
    }
    if (c == '(') {
      ++pos_;
      auto e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(std::string("unexpected character '") + c + "'", "number, variable, function or '('");
  }

  NodePtr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* endp = nullptr;
    double v = std::strtod(begin, &endp);
    if (endp == begin) fail("malformed number", "number");
    pos_ += static_cast<std::size_t>(endp - begin);
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
  }

  NodePtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    static const std::map<std::string, Op> funcs = {{"log", Op::Log},   {"sqrt", Op::Sqrt},
                                                    {"sin", Op::Sin},   {"cos", Op::Cos},
                                                    {"alt", Op::Alt},   {"harm", Op::Harm}};
    if (auto it = funcs.find(name); it != funcs.end()) {
      expect('(');
      auto arg = parse_expr();
      expect(')');
      return make(it->second, arg);
    }
    if (auto it = slots_.find(name); it != slots_.end()) {
      auto n = std::make_shared<Node>();
      n->op = Op::Var;
      n->slot = it->second;
      return n;
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'", "variable or function");
  }
};

}  // namespace detail

CompiledExpr CompiledExpr::compile(const std::string& text, const std::vector<std::string>& vars) {
  detail::Parser p(text, vars);
  CompiledExpr e;
  e.text_ = text;
  e.roots_ = p.parse_toplevel();
  return e;
}

void CompiledExpr::eval_into(const double* args, double* out) const {
  for (std::size_t i = 0; i < roots_.size(); ++i) out[i] = detail::eval_node(*roots_[i], args);
}

double CompiledExpr::eval_scalar(const double* args) const {
  return detail::eval_node(*roots_[0], args);
}

}  // namespace ifns
