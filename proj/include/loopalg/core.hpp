#ifndef LOOPALG_CORE_HPP
#define LOOPALG_CORE_HPP

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopalg {

struct loop_error : std::runtime_error {
  explicit loop_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : loop_error {
  explicit parse_error(const std::string& what) : loop_error(what) {}
};

struct undefined_inverse : loop_error {
  explicit undefined_inverse(const std::string& what) : loop_error(what) {}
};

inline constexpr int kMaxOrder = 64;

/// Unvalidated square table over 0..n-1.
struct RawTable {
  int n = 0;
  std::vector<int> cells;  // row-major, n*n

  int at(int r, int c) const { return cells[static_cast<size_t>(r) * n + c]; }
};

// Cayley-table text format: first non-comment line is the order n, then n
// rows of n whitespace-separated cells. Lines starting with '#' are ignored.
inline RawTable parse_table(std::istream& in) {
  std::vector<std::vector<long>> rows;
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    std::vector<long> row;
    long v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw parse_error("non-integer token in line: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].size() != 1)
    throw parse_error("missing order line");
  long n = rows[0][0];
  if (n < 1 || n > kMaxOrder)
    throw parse_error("order out of range [1, 64]: " + std::to_string(n));
  if (static_cast<long>(rows.size()) != n + 1)
    throw parse_error("expected " + std::to_string(n) + " table rows, got " +
                      std::to_string(rows.size() - 1));
  RawTable t;
  t.n = static_cast<int>(n);
  t.cells.reserve(static_cast<size_t>(n) * n);
  for (long r = 1; r <= n; ++r) {
    if (static_cast<long>(rows[r].size()) != n)
      throw parse_error("ragged row " + std::to_string(r - 1));
    for (long v : rows[r]) {
      if (v < 0 || v >= n)
        throw parse_error("cell out of range [0, " + std::to_string(n) +
                          "): " + std::to_string(v));
      t.cells.push_back(static_cast<int>(v));
    }
  }
  return t;
}

inline RawTable parse_table(const std::string& text) {
  std::istringstream in(text);
  return parse_table(in);
}

/// Validated finite loop: every row/column a permutation of 0..n-1 and
/// element 0 a two-sided identity. Division tables are precomputed so mul,
/// left_div and right_div are O(1).
class LoopTable {
 public:
  LoopTable() = default;

  int order() const { return n_; }

  int mul(int a, int b) const { return cells_[static_cast<size_t>(a) * n_ + b]; }

  /// Unique x with a*x = b.
  int left_div(int a, int b) const { return ldiv_[static_cast<size_t>(a) * n_ + b]; }

  /// Unique y with y*a = b.
  int right_div(int a, int b) const { return rdiv_[static_cast<size_t>(a) * n_ + b]; }

  /// Solution of y*x = identity.
  int left_inverse(int x) const { return right_div(x, 0); }

  /// Solution of x*y = identity.
  int right_inverse(int x) const { return left_div(x, 0); }

  std::optional<int> try_inverse(int x) const {
    int l = left_inverse(x), r = right_inverse(x);
    if (l != r) return std::nullopt;
    return l;
  }

  int inverse(int x) const {
    auto i = try_inverse(x);
    if (!i)
      throw undefined_inverse("two-sided inverse undefined for element " +
                              std::to_string(x));
    return *i;
  }

  bool has_total_inverses() const {
    for (int x = 0; x < n_; ++x)
      if (!try_inverse(x)) return false;
    return true;
  }

  /// Left-bracketed power: x^0 = e, x^k = ((x*x)*x)... ; negative powers go
  /// through the two-sided inverse and may throw undefined_inverse.
  int power(int x, long k) const {
    if (k < 0) return power(inverse(x), -k);
    int acc = 0;
    for (long i = 0; i < k; ++i) acc = (i == 0) ? x : mul(acc, x);
    return acc;
  }

  const std::vector<int>& cells() const { return cells_; }

  /// Relabeling applied at validation (old index -> new index); identity
  /// permutation when the input already had its identity at position 0.
  const std::vector<int>& origin_relabeling() const { return relabel_; }

  friend bool operator==(const LoopTable& a, const LoopTable& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

  friend LoopTable validate_loop(const RawTable& t);

 private:
  int n_ = 0;
  std::vector<int> cells_, ldiv_, rdiv_, relabel_;
};

inline LoopTable validate_loop(const RawTable& t) {
  int n = t.n;
  if (n < 1 || n > kMaxOrder) throw loop_error("order out of range");
  if (static_cast<int>(t.cells.size()) != n * n) throw loop_error("table not square");
  for (int v : t.cells)
    if (v < 0 || v >= n) throw loop_error("cell out of range");

  // Latin property.
  std::vector<char> seen(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      int v = t.at(r, c);
      if (seen[v])
        throw loop_error("row " + std::to_string(r) + " repeats value " +
                         std::to_string(v));
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      int v = t.at(r, c);
      if (seen[v])
        throw loop_error("column " + std::to_string(c) + " repeats value " +
                         std::to_string(v));
      seen[v] = 1;
    }
  }

  // Locate the two-sided identity.
  int e = -1;
  for (int x = 0; x < n; ++x) {
    bool ok = true;
    for (int y = 0; y < n && ok; ++y)
      ok = t.at(x, y) == y && t.at(y, x) == y;
    if (ok) { e = x; break; }
  }
  if (e < 0) throw loop_error("no two-sided identity element");

  // Normalize the identity to index 0 by swapping labels e <-> 0.
  std::vector<int> sigma(static_cast<size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma[0], sigma[e]);

  LoopTable L;
  L.n_ = n;
  L.cells_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      L.cells_[static_cast<size_t>(sigma[a]) * n + sigma[b]] = sigma[t.at(a, b)];
  L.relabel_ = sigma;

  L.ldiv_.assign(static_cast<size_t>(n) * n, 0);
  L.rdiv_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int p = L.cells_[static_cast<size_t>(a) * n + b];
      L.ldiv_[static_cast<size_t>(a) * n + p] = b;   // a * b = p
      L.rdiv_[static_cast<size_t>(b) * n + p] = a;   // a * b = p
    }
  return L;
}

inline LoopTable validate_loop(const std::vector<int>& cells, int n) {
  RawTable t;
  t.n = n;
  t.cells = cells;
  return validate_loop(t);
}

inline std::string serialize(const LoopTable& L) {
  std::ostringstream out;
  int n = L.order();
  out << n << '\n';
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c) out << ' ';
      out << L.mul(r, c);
    }
    out << '\n';
  }
  return out.str();
}

/// Subset of the elements of a loop of a given order.
struct ElementSubset {
  int n = 0;
  std::vector<char> member;

  ElementSubset() = default;
  explicit ElementSubset(int order) : n(order), member(static_cast<size_t>(order), 0) {}
  ElementSubset(int order, std::initializer_list<int> xs) : ElementSubset(order) {
    for (int x : xs) add(x);
  }

  bool contains(int x) const { return member[x] != 0; }
  void add(int x) { member[x] = 1; }
  int count() const {
    int k = 0;
    for (char m : member) k += m;
    return k;
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
      if (member[x]) out.push_back(x);
    return out;
  }
  friend bool operator==(const ElementSubset&, const ElementSubset&) = default;
};

/// Smallest subset containing S and the identity, closed under mul and both
/// divisions (fixed-point closure).
inline ElementSubset subloop_generated(const LoopTable& L, const ElementSubset& S) {
  ElementSubset H(L.order());
  H.add(0);
  std::vector<int> frontier{0};
  for (int x = 0; x < L.order(); ++x)
    if (S.contains(x) && !H.contains(x)) {
      H.add(x);
      frontier.push_back(x);
    }
  bool grew = true;
  while (grew) {
    grew = false;
    auto els = H.elements();
    for (int a : els)
      for (int b : els)
        for (int v : {L.mul(a, b), L.left_div(a, b), L.right_div(a, b)})
          if (!H.contains(v)) {
            H.add(v);
            grew = true;
          }
  }
  return H;
}

inline ElementSubset subloop_generated(const LoopTable& L, std::initializer_list<int> xs) {
  return subloop_generated(L, ElementSubset(L.order(), xs));
}

inline bool is_closed_under_mul(const LoopTable& L, const ElementSubset& S) {
  auto els = S.elements();
  for (int a : els)
    for (int b : els)
      if (!S.contains(L.mul(a, b))) return false;
  return true;
}

/// (ab)c = a(bc) over all of S. Throws if S is not closed under mul.
inline bool is_associative_on(const LoopTable& L, const ElementSubset& S) {
  if (!is_closed_under_mul(L, S)) throw loop_error("subset not closed under mul");
  auto els = S.elements();
  for (int a : els)
    for (int b : els)
      for (int c : els)
        if (L.mul(L.mul(a, b), c) != L.mul(a, L.mul(b, c))) return false;
  return true;
}

inline ElementSubset full_subset(const LoopTable& L) {
  ElementSubset S(L.order());
  for (int x = 0; x < L.order(); ++x) S.add(x);
  return S;
}

/// Principal isotope with product x∘y = (x/b)·(a\y); new identity a·b,
/// normalized back to 0 by validate_loop.
inline LoopTable principal_isotope(const LoopTable& L, int a, int b) {
  int n = L.order();
  RawTable t;
  t.n = n;
  t.cells.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t.cells[static_cast<size_t>(x) * n + y] =
          L.mul(L.right_div(b, x), L.left_div(a, y));
  return validate_loop(t);
}

// ---------------------------------------------------------------------------
// Fixtures.

inline LoopTable cyclic_group(int n) {
  RawTable t;
  t.n = n;
  t.cells.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t.cells[static_cast<size_t>(a) * n + b] = (a + b) % n;
  return validate_loop(t);
}

inline LoopTable direct_product(const LoopTable& A, const LoopTable& B) {
  int na = A.order(), nb = B.order(), n = na * nb;
  if (n > kMaxOrder) throw loop_error("direct product exceeds order cap");
  RawTable t;
  t.n = n;
  t.cells.resize(static_cast<size_t>(n) * n);
  auto idx = [nb](int a, int b) { return a * nb + b; };
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          t.cells[static_cast<size_t>(idx(a1, b1)) * n + idx(a2, b2)] =
              idx(A.mul(a1, a2), B.mul(b1, b2));
  return validate_loop(t);
}

inline LoopTable klein_four() {
  return direct_product(cyclic_group(2), cyclic_group(2));
}

/// Symmetric group on 3 points, elements numbered with the identity first.
inline LoopTable s3() {
  // Permutations of {0,1,2} listed as image triples.
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto find = [&](const int im[3]) {
    for (int i = 0; i < 6; ++i)
      if (perms[i][0] == im[0] && perms[i][1] == im[1] && perms[i][2] == im[2])
        return i;
    return -1;
  };
  RawTable t;
  t.n = 6;
  t.cells.resize(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int im[3];
      for (int p = 0; p < 3; ++p) im[p] = perms[b][perms[a][p]];  // a then b
      t.cells[static_cast<size_t>(a) * 6 + b] = find(im);
    }
  return validate_loop(t);
}

/// Chein double M(G,2) on G x {0,1}:
///   (g,0)(h,0) = (gh,0)      (g,0)(h,1) = (hg,1)
///   (g,1)(h,0) = (gh^-1,1)   (g,1)(h,1) = (h^-1 g,0)
/// Moufang for every group G, nonassociative iff G is nonabelian.
inline LoopTable chein_double(const LoopTable& G) {
  if (!is_associative_on(G, full_subset(G)))
    throw loop_error("chein_double requires a group");
  int m = G.order(), n = 2 * m;
  if (n > kMaxOrder) throw loop_error("chein double exceeds order cap");
  RawTable t;
  t.n = n;
  t.cells.resize(static_cast<size_t>(n) * n);
  auto idx = [m](int g, int s) { return s * m + g; };
  auto set = [&](int x, int y, int v) { t.cells[static_cast<size_t>(x) * n + y] = v; };
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      int hi = G.inverse(h);
      set(idx(g, 0), idx(h, 0), idx(G.mul(g, h), 0));
      set(idx(g, 0), idx(h, 1), idx(G.mul(h, g), 1));
      set(idx(g, 1), idx(h, 0), idx(G.mul(g, hi), 1));
      set(idx(g, 1), idx(h, 1), idx(G.mul(hi, g), 0));
    }
  return validate_loop(t);
}

}  // namespace loopalg

#endif  // LOOPALG_CORE_HPP
