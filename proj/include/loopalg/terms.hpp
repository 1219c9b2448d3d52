#ifndef LOOPALG_TERMS_HPP
#define LOOPALG_TERMS_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/core.hpp"

namespace loopalg {

// ---------------------------------------------------------------------------
// Identity language. Grammar:
//   equation := expr '=' expr
//   expr     := factor (('*' | '\' | '/') factor)*      left-associative
//   factor   := primary ('^-1')*
//   primary  := '(' expr ')' | 'e' | 'a'..'z'
// Whitespace is insignificant. Printing produces a canonical fully
// parenthesized form; parse(print(eq)) is the structural identity.

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Var, Const, Mul, Inv, LDiv, RDiv };
  Kind kind;
  char var = 0;        // Var
  Term left, right;    // Mul/LDiv/RDiv; Inv uses left only
};

inline Term t_var(char v) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::Var, v, nullptr, nullptr});
}
inline Term t_const() {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::Const, 0, nullptr, nullptr});
}
inline Term t_mul(Term a, Term b) {
  return std::make_shared<TermNode>(
      TermNode{TermNode::Kind::Mul, 0, std::move(a), std::move(b)});
}
inline Term t_inv(Term a) {
  return std::make_shared<TermNode>(
      TermNode{TermNode::Kind::Inv, 0, std::move(a), nullptr});
}
inline Term t_ldiv(Term a, Term b) {
  return std::make_shared<TermNode>(
      TermNode{TermNode::Kind::LDiv, 0, std::move(a), std::move(b)});
}
inline Term t_rdiv(Term a, Term b) {
  return std::make_shared<TermNode>(
      TermNode{TermNode::Kind::RDiv, 0, std::move(a), std::move(b)});
}

inline bool term_equal(const Term& a, const Term& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermNode::Kind::Var: return a->var == b->var;
    case TermNode::Kind::Const: return true;
    case TermNode::Kind::Inv: return term_equal(a->left, b->left);
    default:
      return term_equal(a->left, b->left) && term_equal(a->right, b->right);
  }
}

inline void collect_vars(const Term& t, std::string& vars) {
  switch (t->kind) {
    case TermNode::Kind::Var:
      if (vars.find(t->var) == std::string::npos) vars.push_back(t->var);
      break;
    case TermNode::Kind::Const:
      break;
    case TermNode::Kind::Inv:
      collect_vars(t->left, vars);
      break;
    default:
      collect_vars(t->left, vars);
      collect_vars(t->right, vars);
  }
}

struct Equation {
  Term lhs, rhs;
  std::string variables;  // distinct, in first-occurrence order lhs then rhs

  friend bool operator==(const Equation& a, const Equation& b) {
    return term_equal(a.lhs, b.lhs) && term_equal(a.rhs, b.rhs);
  }
};

inline Equation make_equation(Term lhs, Term rhs) {
  Equation eq{std::move(lhs), std::move(rhs), ""};
  collect_vars(eq.lhs, eq.variables);
  collect_vars(eq.rhs, eq.variables);
  return eq;
}

// ---------------------------------------------------------------------------
// Printer.

inline std::string print_term(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Var: return std::string(1, t->var);
    case TermNode::Kind::Const: return "e";
    case TermNode::Kind::Inv: return print_term(t->left) + "^-1";
    case TermNode::Kind::Mul:
      return "(" + print_term(t->left) + "*" + print_term(t->right) + ")";
    case TermNode::Kind::LDiv:
      return "(" + print_term(t->left) + "\\" + print_term(t->right) + ")";
    case TermNode::Kind::RDiv:
      return "(" + print_term(t->left) + "/" + print_term(t->right) + ")";
  }
  return "?";
}

inline std::string print_equation(const Equation& eq) {
  return print_term(eq.lhs) + " = " + print_term(eq.rhs);
}

// ---------------------------------------------------------------------------
// Parser.

namespace detail {

class IdentityParser {
 public:
  explicit IdentityParser(std::string_view s) : s_(s) {}

  Equation parse() {
    Term lhs = expr();
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '=') err("expected '='");
    ++pos_;
    Term rhs = expr();
    skip_ws();
    if (pos_ < s_.size()) {
      if (s_[pos_] == '=') err("duplicate '='");
      err("trailing input");
    }
    return make_equation(std::move(lhs), std::move(rhs));
  }

 private:
  [[noreturn]] void err(const std::string& what) const {
    throw parse_error("identity syntax error at position " +
                      std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  Term expr() {
    Term acc = factor();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char op = s_[pos_];
      if (op != '*' && op != '\\' && op != '/') break;
      ++pos_;
      Term rhs = factor();
      if (op == '*') acc = t_mul(std::move(acc), std::move(rhs));
      else if (op == '\\') acc = t_ldiv(std::move(acc), std::move(rhs));
      else acc = t_rdiv(std::move(acc), std::move(rhs));
    }
    return acc;
  }

  Term factor() {
    Term t = primary();
    for (;;) {
      skip_ws();
      if (pos_ + 2 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '-' &&
          s_[pos_ + 2] == '1') {
        pos_ += 3;
        t = t_inv(std::move(t));
      } else {
        break;
      }
    }
    return t;
  }

  Term primary() {
    skip_ws();
    if (pos_ >= s_.size()) err("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = expr();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') err("expected ')'");
      ++pos_;
      return t;
    }
    if (c == 'e') {
      ++pos_;
      return t_const();
    }
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return t_var(c);
    }
    err(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Equation parse_identity(std::string_view s) {
  return detail::IdentityParser(s).parse();
}

// ---------------------------------------------------------------------------
// Evaluation.

/// Assignment maps variable letters to elements; unused slots are -1.
struct Assignment {
  std::array<int, 26> value;
  Assignment() { value.fill(-1); }
  int get(char v) const { return value[v - 'a']; }
  void set(char v, int x) { value[v - 'a'] = x; }
};

inline int eval_term(const LoopTable& L, const Term& t, const Assignment& asg) {
  switch (t->kind) {
    case TermNode::Kind::Var: {
      int v = asg.get(t->var);
      if (v < 0)
        throw loop_error(std::string("unbound variable '") + t->var + "'");
      return v;
    }
    case TermNode::Kind::Const:
      return 0;
    case TermNode::Kind::Inv:
      return L.inverse(eval_term(L, t->left, asg));
    case TermNode::Kind::Mul:
      return L.mul(eval_term(L, t->left, asg), eval_term(L, t->right, asg));
    case TermNode::Kind::LDiv:
      return L.left_div(eval_term(L, t->left, asg), eval_term(L, t->right, asg));
    case TermNode::Kind::RDiv:
      // a/b is the solution z of z*b = a.
      return L.right_div(eval_term(L, t->right, asg), eval_term(L, t->left, asg));
  }
  throw loop_error("corrupt term");
}

/// Outcome of a universal check. An assignment hitting an undefined inverse
/// makes the identity inapplicable at that point, which is reported
/// separately from a genuine failure.
struct IdentityCheck {
  bool holds = true;           // no differing assignment and fully applicable
  bool applicable = true;      // no undefined-inverse assignment
  std::optional<Assignment> counterexample;    // differing assignment
  std::optional<Assignment> inapplicable_at;   // undefined-inverse assignment
};

inline IdentityCheck check_identity(const LoopTable& L, const Equation& eq) {
  IdentityCheck res;
  int n = L.order();
  size_t k = eq.variables.size();
  std::vector<int> idx(k, 0);
  for (;;) {
    Assignment asg;
    for (size_t i = 0; i < k; ++i) asg.set(eq.variables[i], idx[i]);
    try {
      if (eval_term(L, eq.lhs, asg) != eval_term(L, eq.rhs, asg)) {
        res.holds = false;
        if (!res.counterexample) res.counterexample = asg;
        return res;
      }
    } catch (const undefined_inverse&) {
      if (res.applicable) {
        res.applicable = false;
        res.holds = false;
        res.inapplicable_at = asg;
      }
    }
    // next assignment
    size_t i = 0;
    while (i < k && ++idx[i] == n) idx[i++] = 0;
    if (i == k) break;
    if (k == 0) break;
  }
  return res;
}

inline bool holds(const LoopTable& L, const Equation& eq) {
  return check_identity(L, eq).holds;
}

inline std::optional<Assignment> counterexample(const LoopTable& L,
                                                const Equation& eq) {
  return check_identity(L, eq).counterexample;
}

// ---------------------------------------------------------------------------
// Builtin identities.

struct NamedEquation {
  std::string name;
  std::string text;
  Equation equation;
};

/// Named identities usable in search specs and on the command line. x^2 and
/// x^4 appear as explicit left-bracketed products so the entries stay total
/// on non-power-associative loops.
inline const std::vector<NamedEquation>& builtin_identities() {
  static const std::vector<NamedEquation> catalog = [] {
    std::vector<std::pair<std::string, std::string>> defs = {
        {"moufang", "x*(y*(x*z)) = ((x*y)*x)*z"},
        {"moufang_right", "((z*x)*y)*x = z*(x*(y*x))"},
        {"moufang_middle1", "(x*y)*(z*x) = (x*(y*z))*x"},
        {"moufang_middle2", "(x*y)*(z*x) = x*((y*z)*x)"},
        {"ip_left", "x^-1*(x*y) = y"},
        {"ip_right", "(x*y)*y^-1 = x"},
        {"left_alternative", "x*(x*y) = (x*x)*y"},
        {"right_alternative", "(x*y)*y = x*(y*y)"},
        {"flexible", "x*(y*x) = (x*y)*x"},
        {"associative", "(x*y)*z = x*(y*z)"},
        {"commutative", "x*y = y*x"},
        {"m4", "(x*y)*(z*(((x*x)*x)*x)) = (x*(y*z))*(((x*x)*x)*x)"},
        // The expanded form of C(x,z)^3 = I: three nested applications of
        // w -> z^-1*((z*(w*x))*x^-1).
        {"cor8_expanded",
         "z^-1*((z*((z^-1*((z*((z^-1*((z*(y*x))*x^-1))*x))*x^-1))*x))*x^-1)"
         " = y"},
    };
    std::vector<NamedEquation> out;
    for (auto& [name, text] : defs)
      out.push_back({name, text, parse_identity(text)});
    return out;
  }();
  return catalog;
}

inline const NamedEquation* find_builtin(const std::string& name) {
  for (const auto& ne : builtin_identities())
    if (ne.name == name) return &ne;
  return nullptr;
}

}  // namespace loopalg

#endif  // LOOPALG_TERMS_HPP
