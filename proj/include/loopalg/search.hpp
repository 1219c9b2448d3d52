#ifndef LOOPALG_SEARCH_HPP
#define LOOPALG_SEARCH_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "loopalg/core.hpp"
#include "loopalg/properties.hpp"
#include "loopalg/terms.hpp"

namespace loopalg {

// ---------------------------------------------------------------------------
// Structural (non-equational) properties usable in search specs.

using StructuralCheck = bool (*)(const LoopTable&);

inline const std::vector<std::pair<std::string, StructuralCheck>>&
structural_properties() {
  static const std::vector<std::pair<std::string, StructuralCheck>> props = {
      {"loop", [](const LoopTable&) { return true; }},
      {"commutative", &is_commutative},
      {"group", &is_group},
      {"power_associative", &is_power_associative},
      {"inverse_property", &has_inverse_property},
      {"left_alternative", &is_left_alternative},
      {"right_alternative", &is_right_alternative},
      {"diassociative", &is_diassociative},
      {"moufang", &is_moufang},
      {"m4", &is_m4},
      {"a_loop", &is_a_loop},
  };
  return props;
}

inline StructuralCheck find_structural(const std::string& name) {
  for (const auto& [n, f] : structural_properties())
    if (n == name) return f;
  return nullptr;
}

/// Equational consequences of a required structural property, used for
/// pruning only; the property itself is still decided on completed tables.
/// The implications cascade: an M4 loop is Moufang, a Moufang loop is
/// diassociative, and diassociative loops satisfy the inverse property,
/// both alternative laws and flexibility.
inline std::vector<std::pair<std::string, Equation>> implied_pruning_equations(
    const std::string& name) {
  auto builtin = [](const char* n) {
    const NamedEquation* ne = find_builtin(n);
    return std::pair<std::string, Equation>{ne->name, ne->equation};
  };
  std::vector<std::pair<std::string, Equation>> out;
  bool diassoc = name == "diassociative" || name == "moufang" || name == "m4";
  bool pa = diassoc || name == "power_associative" || name == "a_loop";
  if (name == "m4") {
    out.push_back(builtin("m4"));
    // In an M4 loop every cube lies in the nucleus.
    out.push_back({"m4_cube_lnuc",
                   parse_identity("(((x*x)*x)*y)*z = ((x*x)*x)*(y*z)")});
    out.push_back({"m4_cube_mnuc",
                   parse_identity("(y*((x*x)*x))*z = y*(((x*x)*x)*z)")});
    out.push_back({"m4_cube_rnuc",
                   parse_identity("(y*z)*((x*x)*x) = y*(z*((x*x)*x))")});
  }
  if (name == "moufang" || name == "m4") out.push_back(builtin("moufang"));
  if (name == "commutative") out.push_back(builtin("commutative"));
  if (name == "group") out.push_back(builtin("associative"));
  if (name == "inverse_property" || diassoc) {
    out.push_back(builtin("ip_left"));
    out.push_back(builtin("ip_right"));
  }
  if (name == "left_alternative" || diassoc)
    out.push_back(builtin("left_alternative"));
  if (name == "right_alternative" || diassoc)
    out.push_back(builtin("right_alternative"));
  if (diassoc) out.push_back(builtin("flexible"));
  if (pa) {
    out.push_back({"pa_cube", parse_identity("x*(x*x) = (x*x)*x")});
    out.push_back({"pa_four", parse_identity("((x*x)*x)*x = (x*x)*(x*x)")});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search spec.

struct SearchSpec {
  enum class Mode { First, Count, Stream };

  int order = 0;
  std::vector<std::string> require_names;                       // structural
  std::vector<std::pair<std::string, Equation>> require_equations;
  std::vector<std::string> forbid_names;
  std::vector<std::pair<std::string, Equation>> forbid_equations;
  Mode mode = Mode::Count;
  bool iso_reject = false;
  bool incremental = true;   // ground-instance pruning on/off
  int order_cap = 10;
  int canon_cap = 8;
};

/// Resolves a require/forbid token: a structural property name, a builtin
/// identity name, or an identity string.
inline void add_constraint(SearchSpec& spec, const std::string& token,
                           bool require) {
  auto& names = require ? spec.require_names : spec.forbid_names;
  auto& eqs = require ? spec.require_equations : spec.forbid_equations;
  if (find_structural(token)) {
    names.push_back(token);
    return;
  }
  if (const NamedEquation* ne = find_builtin(token)) {
    eqs.emplace_back(ne->name, ne->equation);
    return;
  }
  eqs.emplace_back(token, parse_identity(token));
}

inline SearchSpec parse_search_spec(std::istream& in) {
  SearchSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    size_t colon = line.find(':', start);
    if (colon == std::string::npos)
      throw parse_error("spec line without ':': " + line);
    std::string key = line.substr(start, colon - start);
    std::string val = line.substr(colon + 1);
    size_t vs = val.find_first_not_of(" \t");
    size_t ve = val.find_last_not_of(" \t\r");
    val = (vs == std::string::npos) ? "" : val.substr(vs, ve - vs + 1);
    if (key == "order") spec.order = std::stoi(val);
    else if (key == "require") add_constraint(spec, val, true);
    else if (key == "forbid") add_constraint(spec, val, false);
    else if (key == "mode") {
      if (val == "first") spec.mode = SearchSpec::Mode::First;
      else if (val == "count") spec.mode = SearchSpec::Mode::Count;
      else if (val == "stream") spec.mode = SearchSpec::Mode::Stream;
      else throw parse_error("unknown mode: " + val);
    } else if (key == "iso_reject") {
      spec.iso_reject = (val == "true" || val == "1" || val == "yes");
    } else throw parse_error("unknown spec key: " + key);
  }
  if (spec.order < 1) throw parse_error("spec missing order");
  return spec;
}

inline SearchSpec parse_search_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_search_spec(in);
}

struct SearchStats {
  long long nodes = 0;     // decision-point value assignments
  long long forced = 0;    // assignments inferred from required identities
  long long models = 0;
  long long models_after_iso = 0;
  double elapsed_seconds = 0.0;
  std::map<std::string, long long> prunes;  // per-constraint rejection counts
  std::vector<long long> nodes_by_row;      // decision counts per table row
};

/// Model consumer; return false to stop the search.
using ModelSink = std::function<bool(const LoopTable&)>;

// ---------------------------------------------------------------------------
// Isomorphism testing and canonical forms.

namespace detail {

inline std::vector<int> cycle_type(const std::vector<int>& img) {
  int n = static_cast<int>(img.size());
  std::vector<char> seen(n, 0);
  std::vector<int> lens;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int len = 0, c = s;
    while (!seen[c]) {
      seen[c] = 1;
      c = img[c];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

/// Per-element invariant vector preserved by identity-fixing isomorphisms.
inline std::vector<int> element_invariant(const LoopTable& L, int x) {
  int n = L.order();
  std::vector<int> row(n), col(n);
  for (int y = 0; y < n; ++y) {
    row[y] = L.mul(x, y);
    col[y] = L.mul(y, x);
  }
  std::vector<int> inv = cycle_type(row);
  std::vector<int> ct = cycle_type(col);
  inv.push_back(-1);
  inv.insert(inv.end(), ct.begin(), ct.end());
  int commutant = 0;
  for (int y = 0; y < n; ++y)
    if (L.mul(x, y) == L.mul(y, x)) ++commutant;
  inv.push_back(commutant);
  // Pseudo-order: least k >= 1 with the left-bracketed power x^k = e.
  int acc = x, k = 1;
  while (acc != 0 && k <= n) {
    acc = L.mul(acc, x);
    ++k;
  }
  inv.push_back(acc == 0 ? k : -1);
  return inv;
}

inline bool iso_extend(const LoopTable& A, const LoopTable& B,
                       std::vector<int>& phi, std::vector<char>& used,
                       const std::vector<std::vector<int>>& invA,
                       const std::vector<std::vector<int>>& invB, int next) {
  int n = A.order();
  if (next == n) return true;
  for (int b = 1; b < n; ++b) {
    if (used[b] || invA[next] != invB[b]) continue;
    phi[next] = b;
    used[b] = 1;
    bool ok = true;
    for (int u = 0; u <= next && ok; ++u)
      for (int v = 0; v <= next && ok; ++v) {
        int p = A.mul(u, v);
        if (p <= next && B.mul(phi[u], phi[v]) != phi[p]) ok = false;
        if (p <= next) continue;
        // product not yet mapped; nothing to check
      }
    if (ok && iso_extend(A, B, phi, used, invA, invB, next + 1)) return true;
    used[b] = 0;
    phi[next] = -1;
  }
  return false;
}

}  // namespace detail

/// Searches for a bijection phi with phi(0)=0 and phi(ab)=phi(a)phi(b),
/// pruned by per-element invariant vectors.
inline bool are_isomorphic(const LoopTable& A, const LoopTable& B) {
  if (A.order() != B.order()) throw loop_error("order mismatch");
  int n = A.order();
  std::vector<std::vector<int>> invA, invB;
  for (int x = 0; x < n; ++x) {
    invA.push_back(detail::element_invariant(A, x));
    invB.push_back(detail::element_invariant(B, x));
  }
  auto sortedA = invA, sortedB = invB;
  std::sort(sortedA.begin(), sortedA.end());
  std::sort(sortedB.begin(), sortedB.end());
  if (sortedA != sortedB) return false;
  std::vector<int> phi(n, -1);
  std::vector<char> used(n, 0);
  phi[0] = 0;
  used[0] = 1;
  return detail::iso_extend(A, B, phi, used, invA, invB, 1);
}

/// Lexicographically least relabeling over all identity-fixing bijections.
/// Exact and exhaustive; capped at small orders.
inline LoopTable canonical_form(const LoopTable& L, int canon_cap = 8) {
  int n = L.order();
  if (n > canon_cap) throw loop_error("canonicalization cap");
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  std::vector<int> best = L.cells();
  std::vector<int> cand(static_cast<size_t>(n) * n);
  while (std::next_permutation(sigma.begin() + 1, sigma.end())) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        cand[static_cast<size_t>(sigma[a]) * n + sigma[b]] = sigma[L.mul(a, b)];
    if (cand < best) best = cand;
  }
  return validate_loop(best, n);
}

// ---------------------------------------------------------------------------
// The model finder.

namespace detail {

/// Outcome of evaluating a term against a partially filled table.
struct PartialEval {
  enum class Tag { Value, Blocked, Undefined };
  Tag tag = Tag::Value;
  int value = -1;
  int cell = -1;          // blocking cell index (r*n+c) when Blocked
  bool top_infer = false; // Blocked exactly at this term's own product cell
};

class Searcher {
 public:
  Searcher(const SearchSpec& spec, const ModelSink& sink, SearchStats& stats)
      : spec_(spec), sink_(sink), stats_(stats), n_(spec.order) {
    stats_.nodes_by_row.assign(n_, 0);
    table_.assign(static_cast<size_t>(n_) * n_, -1);
    row_used_.assign(n_, 0);
    col_used_.assign(n_, 0);
    full_mask_ = (n_ >= 64) ? ~0ull : ((1ull << n_) - 1);
    invp_.assign(n_, -1);
    // Symmetry breaking: element 0 is the identity, so row 0 and column 0
    // are fixed; only reduced tables are enumerated.
    for (int i = 0; i < n_; ++i) {
      set_cell(0 * n_ + i, i);
      if (i) set_cell(i * n_ + 0, i);
    }
    base_trail_ = trail_.size();
    if (spec.incremental) compile_instances();
    watches_.resize(table_.size());
  }

  void run() {
    if (!init_watches()) return;  // a required identity fails at the root
    dfs();
  }

 private:
  // --- table bookkeeping ---------------------------------------------------

  void set_cell(int cell, int v) {
    table_[cell] = v;
    row_used_[cell / n_] |= 1ull << v;
    col_used_[cell % n_] |= 1ull << v;
    if (v == 0) {
      int r = cell / n_, c = cell % n_;
      if (table_[c * n_ + r] == 0) {
        invp_[r] = c;
        invp_[c] = r;
      }
    }
    trail_.push_back(cell);
  }

  void unset_cell(int cell) {
    int v = table_[cell];
    table_[cell] = -1;
    row_used_[cell / n_] &= ~(1ull << v);
    col_used_[cell % n_] &= ~(1ull << v);
    if (v == 0) {
      int r = cell / n_, c = cell % n_;
      if (invp_[r] == c) {
        invp_[r] = -1;
        if (r != c) invp_[c] = -1;
      }
    }
  }

  bool forward_check(int cell) {
    int r = cell / n_, c = cell % n_;
    for (int j = 0; j < n_; ++j) {
      if (table_[r * n_ + j] < 0 &&
          ((row_used_[r] | col_used_[j]) & full_mask_) == full_mask_)
        return false;
      if (table_[j * n_ + c] < 0 &&
          ((row_used_[j] | col_used_[c]) & full_mask_) == full_mask_)
        return false;
    }
    return true;
  }

  // --- compiled ground instances ------------------------------------------

  struct Instance {
    int eq = 0;                 // index into pruning_eqs_
    std::array<int8_t, 4> asg;  // values of the equation's variables
  };

  void compile_instances() {
    // Pruning constraints: required equations plus equational consequences
    // of required structural properties.
    std::set<std::string> seen;
    for (const auto& [name, eq] : spec_.require_equations)
      if (seen.insert(print_equation(eq)).second)
        pruning_eqs_.emplace_back(name, eq);
    for (const auto& name : spec_.require_names)
      for (const auto& [iname, eq] : implied_pruning_equations(name))
        if (seen.insert(print_equation(eq)).second)
          pruning_eqs_.emplace_back(name + ":" + iname, eq);

    for (size_t e = 0; e < pruning_eqs_.size(); ++e) {
      const Equation& eq = pruning_eqs_[e].second;
      size_t k = eq.variables.size();
      if (k > 4) continue;  // would explode; completed-table check covers it
      std::vector<int> idx(k, 0);
      for (;;) {
        Instance inst;
        inst.eq = static_cast<int>(e);
        inst.asg.fill(0);
        for (size_t i = 0; i < k; ++i) inst.asg[i] = static_cast<int8_t>(idx[i]);
        instances_.push_back(inst);
        size_t i = 0;
        while (i < k && ++idx[i] == n_) idx[i++] = 0;
        if (i == k || k == 0) break;
      }
    }
    resolved_.assign(instances_.size(), 0);
    watch_gen_.assign(instances_.size(), 0);

    // Dedicated inverse-property propagation is sound only when both inverse
    // laws are among the required constraints.
    bool has_l = false, has_r = false;
    const Equation& ipl = find_builtin("ip_left")->equation;
    const Equation& ipr = find_builtin("ip_right")->equation;
    for (const auto& [name, eq] : pruning_eqs_) {
      if (eq == ipl) has_l = true;
      if (eq == ipr) has_r = true;
    }
    ip_mode_ = has_l && has_r;
  }

  PartialEval peval(const Term& t, const Instance& inst) {
    using Tag = PartialEval::Tag;
    const Equation& eq = pruning_eqs_[inst.eq].second;
    switch (t->kind) {
      case TermNode::Kind::Var: {
        size_t i = eq.variables.find(t->var);
        return {Tag::Value, inst.asg[i], -1, false};
      }
      case TermNode::Kind::Const:
        return {Tag::Value, 0, -1, false};
      case TermNode::Kind::Mul: {
        PartialEval a = peval(t->left, inst);
        if (a.tag != Tag::Value) { a.top_infer = false; return a; }
        PartialEval b = peval(t->right, inst);
        if (b.tag != Tag::Value) { b.top_infer = false; return b; }
        int cell = a.value * n_ + b.value;
        int v = table_[cell];
        if (v >= 0) return {Tag::Value, v, -1, false};
        return {Tag::Blocked, -1, cell, true};
      }
      case TermNode::Kind::LDiv: {
        PartialEval a = peval(t->left, inst);
        if (a.tag != Tag::Value) { a.top_infer = false; return a; }
        PartialEval b = peval(t->right, inst);
        if (b.tag != Tag::Value) { b.top_infer = false; return b; }
        int empty = -1;
        for (int c = 0; c < n_; ++c) {
          int v = table_[a.value * n_ + c];
          if (v == b.value) return {Tag::Value, c, -1, false};
          if (v < 0 && empty < 0) empty = a.value * n_ + c;
        }
        if (empty >= 0) return {Tag::Blocked, -1, empty, false};
        return {Tag::Undefined, -1, -1, false};
      }
      case TermNode::Kind::RDiv: {
        // a/b is the z with z * b = a: scan column b for a.
        PartialEval a = peval(t->left, inst);
        if (a.tag != Tag::Value) { a.top_infer = false; return a; }
        PartialEval b = peval(t->right, inst);
        if (b.tag != Tag::Value) { b.top_infer = false; return b; }
        int empty = -1;
        for (int r = 0; r < n_; ++r) {
          int v = table_[r * n_ + b.value];
          if (v == a.value) return {Tag::Value, r, -1, false};
          if (v < 0 && empty < 0) empty = r * n_ + b.value;
        }
        if (empty >= 0) return {Tag::Blocked, -1, empty, false};
        return {Tag::Undefined, -1, -1, false};
      }
      case TermNode::Kind::Inv: {
        PartialEval a = peval(t->left, inst);
        if (a.tag != Tag::Value) { a.top_infer = false; return a; }
        int x = a.value;
        int right = -1, left = -1, empty_row = -1;
        for (int c = 0; c < n_; ++c) {
          int v = table_[x * n_ + c];
          if (v == 0) right = c;
          if (v < 0 && empty_row < 0) empty_row = x * n_ + c;
        }
        for (int r = 0; r < n_; ++r)
          if (table_[r * n_ + x] == 0) left = r;
        if (right >= 0 && left >= 0)
          return (right == left) ? PartialEval{Tag::Value, right, -1, false}
                                 : PartialEval{Tag::Undefined, -1, -1, false};
        if (right >= 0) {
          int cell = right * n_ + x;  // needs right * x == 0
          if (table_[cell] < 0) return {Tag::Blocked, -1, cell, false};
          return {Tag::Undefined, -1, -1, false};
        }
        if (left >= 0) {
          int cell = x * n_ + left;
          if (table_[cell] < 0) return {Tag::Blocked, -1, cell, false};
          return {Tag::Undefined, -1, -1, false};
        }
        if (empty_row >= 0) return {Tag::Blocked, -1, empty_row, false};
        return {Tag::Undefined, -1, -1, false};
      }
    }
    return {Tag::Undefined, -1, -1, false};
  }

  struct CheckResult {
    enum class Kind { Satisfied, Violated, Watch, Force } kind;
    int cell = -1;
    int value = -1;
    int cell2 = -1;  // second watch cell, when both sides are blocked
  };

  /// The term t must evaluate to v. Pushes the requirement down through
  /// products, divisions and inverses; when exactly one cell stands between
  /// the term and its value, that cell's content is forced.
  CheckResult infer(const Term& t, int v, const Instance& inst) {
    using Tag = PartialEval::Tag;
    using Kind = CheckResult::Kind;
    switch (t->kind) {
      case TermNode::Kind::Var:
      case TermNode::Kind::Const: {
        PartialEval a = peval(t, inst);
        return a.value == v ? CheckResult{Kind::Satisfied}
                            : CheckResult{Kind::Violated};
      }
      case TermNode::Kind::Mul: {
        PartialEval a = peval(t->left, inst);
        if (a.tag == Tag::Undefined) return {Kind::Violated};
        PartialEval b = peval(t->right, inst);
        if (b.tag == Tag::Undefined) return {Kind::Violated};
        if (a.tag == Tag::Value && b.tag == Tag::Value) {
          int cell = a.value * n_ + b.value;
          int w = table_[cell];
          if (w < 0) return {Kind::Force, cell, v};
          return w == v ? CheckResult{Kind::Satisfied}
                        : CheckResult{Kind::Violated};
        }
        if (a.tag == Tag::Value) {
          // b must solve a.value * w = v; a full row without v is a dead end.
          int empty = -1;
          for (int c = 0; c < n_; ++c) {
            int w = table_[a.value * n_ + c];
            if (w == v) return infer(t->right, c, inst);
            if (w < 0 && empty < 0) empty = a.value * n_ + c;
          }
          if (empty < 0) return {Kind::Violated};
          return {Kind::Watch, empty};
        }
        if (b.tag == Tag::Value) {
          int empty = -1;
          for (int r = 0; r < n_; ++r) {
            int w = table_[r * n_ + b.value];
            if (w == v) return infer(t->left, r, inst);
            if (w < 0 && empty < 0) empty = r * n_ + b.value;
          }
          if (empty < 0) return {Kind::Violated};
          return {Kind::Watch, empty};
        }
        return {Kind::Watch, a.cell, -1, b.cell};
      }
      case TermNode::Kind::Inv: {
        // child^-1 = v  <=>  child * v = 0 and v * child = 0
        PartialEval a = peval(t->left, inst);
        if (a.tag == Tag::Undefined) return {Kind::Violated};
        if (a.tag == Tag::Value) {
          int x = a.value;
          int cxv = table_[x * n_ + v], cvx = table_[v * n_ + x];
          if (cxv >= 0 && cxv != 0) return {Kind::Violated};
          if (cvx >= 0 && cvx != 0) return {Kind::Violated};
          if (cxv < 0) return {Kind::Force, x * n_ + v, 0};
          if (cvx < 0) return {Kind::Force, v * n_ + x, 0};
          return {Kind::Satisfied};
        }
        // find x with x * v = 0
        int empty = -1;
        for (int r = 0; r < n_; ++r) {
          int w = table_[r * n_ + v];
          if (w == 0) return infer(t->left, r, inst);
          if (w < 0 && empty < 0) empty = r * n_ + v;
        }
        if (empty < 0) return {Kind::Violated};
        return {Kind::Watch, empty};
      }
      case TermNode::Kind::LDiv: {
        // left \ right = v  <=>  left * v = right
        PartialEval a = peval(t->left, inst);
        if (a.tag == Tag::Undefined) return {Kind::Violated};
        PartialEval b = peval(t->right, inst);
        if (b.tag == Tag::Undefined) return {Kind::Violated};
        if (a.tag == Tag::Value) {
          int cell = a.value * n_ + v;
          int w = table_[cell];
          if (w >= 0)
            return b.tag == Tag::Value
                       ? (w == b.value ? CheckResult{Kind::Satisfied}
                                       : CheckResult{Kind::Violated})
                       : infer(t->right, w, inst);
          if (b.tag == Tag::Value) return {Kind::Force, cell, b.value};
          return {Kind::Watch, cell};
        }
        if (b.tag == Tag::Value) {
          // find a with a * v = b
          int empty = -1;
          for (int r = 0; r < n_; ++r) {
            int w = table_[r * n_ + v];
            if (w == b.value) return infer(t->left, r, inst);
            if (w < 0 && empty < 0) empty = r * n_ + v;
          }
          if (empty < 0) return {Kind::Violated};
          return {Kind::Watch, empty};
        }
        return {Kind::Watch, a.cell, -1, b.cell};
      }
      case TermNode::Kind::RDiv: {
        // left / right = v  <=>  v * right = left
        PartialEval a = peval(t->left, inst);
        if (a.tag == Tag::Undefined) return {Kind::Violated};
        PartialEval b = peval(t->right, inst);
        if (b.tag == Tag::Undefined) return {Kind::Violated};
        if (b.tag == Tag::Value) {
          int cell = v * n_ + b.value;
          int w = table_[cell];
          if (w >= 0)
            return a.tag == Tag::Value
                       ? (w == a.value ? CheckResult{Kind::Satisfied}
                                       : CheckResult{Kind::Violated})
                       : infer(t->left, w, inst);
          if (a.tag == Tag::Value) return {Kind::Force, cell, a.value};
          return {Kind::Watch, cell};
        }
        if (a.tag == Tag::Value) {
          int empty = -1;
          for (int c = 0; c < n_; ++c) {
            int w = table_[v * n_ + c];
            if (w == a.value) return infer(t->right, c, inst);
            if (w < 0 && empty < 0) empty = v * n_ + c;
          }
          if (empty < 0) return {Kind::Violated};
          return {Kind::Watch, empty};
        }
        return {Kind::Watch, a.cell, -1, b.cell};
      }
    }
    return {Kind::Violated};
  }

  CheckResult check_instance(int id) {
    using Tag = PartialEval::Tag;
    using Kind = CheckResult::Kind;
    const Instance& inst = instances_[id];
    const Equation& eq = pruning_eqs_[inst.eq].second;
    PartialEval l = peval(eq.lhs, inst);
    if (l.tag == Tag::Undefined) return {Kind::Violated};
    PartialEval r = peval(eq.rhs, inst);
    if (r.tag == Tag::Undefined) return {Kind::Violated};
    if (l.tag == Tag::Value && r.tag == Tag::Value)
      return l.value == r.value ? CheckResult{Kind::Satisfied}
                                : CheckResult{Kind::Violated};
    if (l.tag == Tag::Value) return infer(eq.rhs, l.value, inst);
    if (r.tag == Tag::Value) return infer(eq.lhs, r.value, inst);
    // Both sides blocked exactly at their own product cell: the constraint
    // is table[lc] == table[rc]. Two distinct cells sharing a row or a
    // column can never be equal in a Latin square.
    if (l.top_infer && r.top_infer) {
      if (l.cell == r.cell) return {Kind::Satisfied};
      if (l.cell / n_ == r.cell / n_ || l.cell % n_ == r.cell % n_)
        return {Kind::Violated};
    }
    return {Kind::Watch, l.cell, -1, r.cell};
  }

  /// Registers fresh watch entries for an instance. The generation counter
  /// lazily invalidates any stale entries still sitting in other lists.
  void add_watch(int id, int c1, int c2 = -1) {
    uint32_t g = ++watch_gen_[id];
    watches_[c1].push_back({id, g});
    if (c2 >= 0 && c2 != c1) watches_[c2].push_back({id, g});
  }

  bool init_watches() {
    for (size_t id = 0; id < instances_.size(); ++id) {
      CheckResult res = check_instance(static_cast<int>(id));
      switch (res.kind) {
        case CheckResult::Kind::Satisfied:
          resolved_[id] = 1;
          break;
        case CheckResult::Kind::Violated:
          stats_.prunes[pruning_eqs_[instances_[id].eq].first]++;
          return false;
        case CheckResult::Kind::Watch:
          add_watch(static_cast<int>(id), res.cell, res.cell2);
          break;
        case CheckResult::Kind::Force:
          // Root-level forced cells become part of the fixed base table.
          if (((row_used_[res.cell / n_] | col_used_[res.cell % n_]) >>
               res.value) & 1ull)
            return false;
          set_cell(res.cell, res.value);
          add_watch(static_cast<int>(id), res.cell);
          if (!propagate(res.cell)) return false;
          break;
      }
    }
    base_trail_ = trail_.size();
    return true;
  }

  bool force_latin(int cell, int v) {
    set_cell(cell, v);
    ++stats_.forced;
    if (!forward_check(cell)) return false;
    queue_.push_back(cell);
    return true;
  }

  /// Forces cell = v, checking against the current content and the row and
  /// column masks first.
  bool force_or_check(int cell, int v) {
    int w = table_[cell];
    if (w >= 0) return w == v;
    if (((row_used_[cell / n_] | col_used_[cell % n_]) >> v) & 1ull)
      return false;
    return force_latin(cell, v);
  }

  /// Inverse-property propagation, sound whenever both x^-1(xy)=y and
  /// (xy)y^-1=x are required: inverses are two-sided, the row of x^-1 is the
  /// inverse permutation of the row of x, and likewise for columns.
  bool ip_infer(int q) {
    int r = q / n_, c = q % n_, v = table_[q];
    if (v == 0) {
      // Two-sided inverses: r*c = e forces c*r = e.
      if (!force_or_check(c * n_ + r, 0)) return false;
      if (invp_[r] == c) {
        // The pair just completed; replay everything known about the two
        // rows and columns through both inverse laws.
        for (int a = 0; a < n_; ++a) {
          int b = table_[r * n_ + a];
          if (b >= 0 && !force_or_check(c * n_ + b, a)) return false;
          b = table_[c * n_ + a];
          if (b >= 0 && !force_or_check(r * n_ + b, a)) return false;
          b = table_[a * n_ + r];
          if (b >= 0 && !force_or_check(b * n_ + c, a)) return false;
          b = table_[a * n_ + c];
          if (b >= 0 && !force_or_check(b * n_ + r, a)) return false;
        }
      }
    }
    // r*c = v, so r^-1*v = c and v*c^-1 = r.
    if (invp_[r] >= 0 && !force_or_check(invp_[r] * n_ + v, c)) return false;
    if (invp_[c] >= 0 && !force_or_check(v * n_ + invp_[c], r)) return false;
    return true;
  }

  /// Hidden singles on the row and column of a newly assigned cell: a value
  /// missing from the line with exactly one cell left that can take it gets
  /// placed; a value with no remaining cell kills the branch.
  bool latin_infer(int q) {
    int r = q / n_, c = q % n_;
    for (int v = 0; v < n_; ++v) {
      if (!((row_used_[r] >> v) & 1ull)) {
        int spot = -1, cnt = 0;
        for (int j = 0; j < n_ && cnt < 2; ++j)
          if (table_[r * n_ + j] < 0 && !((col_used_[j] >> v) & 1ull)) {
            ++cnt;
            spot = r * n_ + j;
          }
        if (cnt == 0) return false;
        if (cnt == 1 && !force_latin(spot, v)) return false;
      }
      if (!((col_used_[c] >> v) & 1ull)) {
        int spot = -1, cnt = 0;
        for (int j = 0; j < n_ && cnt < 2; ++j)
          if (table_[j * n_ + c] < 0 && !((row_used_[j] >> v) & 1ull)) {
            ++cnt;
            spot = j * n_ + c;
          }
        if (cnt == 0) return false;
        if (cnt == 1 && !force_latin(spot, v)) return false;
      }
    }
    return true;
  }

  /// Wakes the instances watching every newly assigned cell, starting from
  /// `cell`. Forced assignments recurse through the same queue.
  bool propagate(int cell) {
    queue_.clear();
    queue_.push_back(cell);
    size_t qi = 0;
    while (qi < queue_.size()) {
      int q = queue_[qi++];
      if (ip_mode_ && !ip_infer(q)) {
        stats_.prunes["ip"]++;
        return false;
      }
      if (!latin_infer(q)) {
        stats_.prunes["alldiff"]++;
        return false;
      }
      std::vector<WatchEntry> list = std::move(watches_[q]);
      watches_[q].clear();
      for (size_t i = 0; i < list.size(); ++i) {
        int id = list[i].id;
        if (list[i].gen != watch_gen_[id] || resolved_[id]) continue;
        CheckResult res = check_instance(id);
        switch (res.kind) {
          case CheckResult::Kind::Satisfied:
            resolved_[id] = 1;
            resolved_trail_.emplace_back(id, q);
            break;
          case CheckResult::Kind::Watch:
            add_watch(id, res.cell, res.cell2);
            break;
          case CheckResult::Kind::Violated:
            stats_.prunes[pruning_eqs_[instances_[id].eq].first]++;
            for (size_t j = i; j < list.size(); ++j)
              watches_[q].push_back(list[j]);
            return false;
          case CheckResult::Kind::Force: {
            if (((row_used_[res.cell / n_] | col_used_[res.cell % n_]) >>
                 res.value) & 1ull) {
              stats_.prunes[pruning_eqs_[instances_[id].eq].first]++;
              for (size_t j = i; j < list.size(); ++j)
                watches_[q].push_back(list[j]);
              return false;
            }
            set_cell(res.cell, res.value);
            ++stats_.forced;
            add_watch(id, res.cell);
            if (!forward_check(res.cell)) {
              stats_.prunes["alldiff"]++;
              for (size_t j = i + 1; j < list.size(); ++j)
                watches_[q].push_back(list[j]);
              return false;
            }
            queue_.push_back(res.cell);
            break;
          }
        }
      }
    }
    return true;
  }

  void undo_to(size_t trail_mark, size_t resolved_mark) {
    while (trail_.size() > trail_mark) {
      unset_cell(trail_.back());
      trail_.pop_back();
    }
    while (resolved_trail_.size() > resolved_mark) {
      auto [id, cell] = resolved_trail_.back();
      resolved_trail_.pop_back();
      resolved_[id] = 0;
      add_watch(id, cell);
    }
  }

  // --- the depth-first completion -----------------------------------------

  int next_empty(int from) const {
    int total = n_ * n_;
    while (from < total && table_[from] >= 0) ++from;
    return from;
  }

  /// Returns false when the sink requested a stop.
  bool dfs(int hint = 0) {
    int cell = next_empty(hint);
    if (cell == n_ * n_) return emit();
    int r = cell / n_, c = cell % n_;
    for (int v = 0; v < n_; ++v) {
      if (((row_used_[r] | col_used_[c]) >> v) & 1ull) continue;
      size_t tmark = trail_.size(), rmark = resolved_trail_.size();
      ++stats_.nodes;
      ++stats_.nodes_by_row[r];
      set_cell(cell, v);
      bool ok = forward_check(cell);
      if (!ok) stats_.prunes["alldiff"]++;
      if (ok && spec_.incremental) ok = propagate(cell);
      if (ok) {
        if (!dfs(cell + 1)) {
          undo_to(tmark, rmark);
          return false;
        }
      }
      undo_to(tmark, rmark);
    }
    return true;
  }

  /// Completed table: run the authoritative filters and hand the model to
  /// the sink. This path is independent of the incremental pruning.
  bool emit() {
    LoopTable L = validate_loop(table_, n_);
    for (const auto& name : spec_.require_names)
      if (!find_structural(name)(L)) {
        stats_.prunes["require:" + name]++;
        return true;
      }
    for (const auto& [name, eq] : spec_.require_equations)
      if (!holds(L, eq)) {
        stats_.prunes["require:" + name]++;
        return true;
      }
    for (const auto& name : spec_.forbid_names)
      if (find_structural(name)(L)) {
        stats_.prunes["forbid:" + name]++;
        return true;
      }
    for (const auto& [name, eq] : spec_.forbid_equations)
      if (holds(L, eq)) {
        stats_.prunes["forbid:" + name]++;
        return true;
      }
    ++stats_.models;
    if (spec_.iso_reject) {
      auto canon = canonical_form(L, spec_.canon_cap).cells();
      if (!canon_seen_.insert(canon).second) return true;
      ++stats_.models_after_iso;
    }
    return sink_ ? sink_(L) : true;
  }

  const SearchSpec& spec_;
  const ModelSink& sink_;
  SearchStats& stats_;
  int n_;
  uint64_t full_mask_ = 0;
  std::vector<int> table_;
  std::vector<int> invp_;  // two-sided inverse partner, -1 while unknown
  bool ip_mode_ = false;
  std::vector<uint64_t> row_used_, col_used_;
  std::vector<int> trail_;
  size_t base_trail_ = 0;
  std::vector<std::pair<std::string, Equation>> pruning_eqs_;
  std::vector<Instance> instances_;
  std::vector<char> resolved_;
  std::vector<std::pair<int, int>> resolved_trail_;  // (instance, trigger cell)
  struct WatchEntry {
    int id;
    uint32_t gen;
  };
  std::vector<std::vector<WatchEntry>> watches_;
  std::vector<uint32_t> watch_gen_;
  std::vector<int> queue_;
  std::set<std::vector<int>> canon_seen_;
};

}  // namespace detail

/// Deterministic depth-first enumeration of all reduced loops of the given
/// order matching the spec. Models stream to the sink in lexicographic
/// table order.
inline SearchStats enumerate_loops(const SearchSpec& spec, const ModelSink& sink) {
  if (spec.order < 1) throw loop_error("order must be positive");
  if (spec.order > spec.order_cap)
    throw loop_error("order cap exceeded (cap " +
                     std::to_string(spec.order_cap) + ")");
  if (spec.iso_reject && spec.order > spec.canon_cap)
    throw loop_error("canonicalization cap");
  SearchStats stats;
  auto start = std::chrono::steady_clock::now();
  detail::Searcher searcher(spec, sink, stats);
  searcher.run();
  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return stats;
}

/// Number of matching reduced tables (canonical classes when iso_reject).
inline long long count_models(const SearchSpec& spec,
                              SearchStats* stats_out = nullptr) {
  SearchStats stats = enumerate_loops(spec, [](const LoopTable&) { return true; });
  if (stats_out) *stats_out = stats;
  return spec.iso_reject ? stats.models_after_iso : stats.models;
}

inline std::optional<LoopTable> find_first(const SearchSpec& spec,
                                           SearchStats* stats_out = nullptr) {
  std::optional<LoopTable> found;
  SearchStats stats = enumerate_loops(spec, [&](const LoopTable& L) {
    found = L;
    return false;
  });
  if (stats_out) *stats_out = stats;
  return found;
}

// ---------------------------------------------------------------------------
// Isotope sweep (open-question exploration).

struct IsotopeSweepReport {
  bool base_moufang = false;
  bool base_a_loop = false;
  int total = 0;
  int moufang_count = 0;
  int a_loop_count = 0;
  // Isotopes of a Moufang A-loop that fail either property (conjecturally
  // none; reported, never asserted).
  std::vector<std::pair<std::pair<int, int>, LoopTable>> counterexamples;
};

inline IsotopeSweepReport isotope_sweep(const LoopTable& L) {
  IsotopeSweepReport rep;
  rep.base_moufang = is_moufang(L);
  rep.base_a_loop = is_a_loop(L);
  int n = L.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      LoopTable iso = principal_isotope(L, a, b);
      bool m = is_moufang(iso), al = is_a_loop(iso);
      ++rep.total;
      if (m) ++rep.moufang_count;
      if (al) ++rep.a_loop_count;
      if (rep.base_moufang && rep.base_a_loop && !(m && al))
        rep.counterexamples.push_back({{a, b}, iso});
    }
  return rep;
}

}  // namespace loopalg

#endif  // LOOPALG_SEARCH_HPP
