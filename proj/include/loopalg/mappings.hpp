#ifndef LOOPALG_MAPPINGS_HPP
#define LOOPALG_MAPPINGS_HPP

#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "loopalg/core.hpp"

namespace loopalg {

/// Permutation of 0..n-1, acting on the right: y p = img[y].
struct Perm {
  std::vector<int> img;

  Perm() = default;
  explicit Perm(int degree) : img(static_cast<size_t>(degree)) {
    std::iota(img.begin(), img.end(), 0);
  }
  explicit Perm(std::vector<int> images) : img(std::move(images)) {}

  int degree() const { return static_cast<int>(img.size()); }
  friend bool operator==(const Perm&, const Perm&) = default;
};

inline int apply(int y, const Perm& p) { return p.img[y]; }

/// Right-action composition: apply(y, compose(p, q)) = apply(apply(y, p), q).
inline Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw loop_error("permutation degree mismatch");
  Perm r;
  r.img.resize(p.img.size());
  for (size_t y = 0; y < p.img.size(); ++y) r.img[y] = q.img[p.img[y]];
  return r;
}

inline Perm invert(const Perm& p) {
  Perm r;
  r.img.resize(p.img.size());
  for (size_t y = 0; y < p.img.size(); ++y) r.img[p.img[y]] = static_cast<int>(y);
  return r;
}

inline bool is_identity(const Perm& p) {
  for (size_t y = 0; y < p.img.size(); ++y)
    if (p.img[y] != static_cast<int>(y)) return false;
  return true;
}

/// Conjugate p^q = q^-1 p q under the right-action convention.
inline Perm conjugate(const Perm& p, const Perm& q) {
  return compose(invert(q), compose(p, q));
}

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (int v : p.img) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline std::string to_string(const Perm& p) {
  std::string s = "p:";
  for (int v : p.img) s += ' ' + std::to_string(v);
  return s;
}

// ---------------------------------------------------------------------------
// Translations and inner mappings.

/// L(x): y -> xy.
inline Perm trans_L(const LoopTable& L, int x) {
  Perm p;
  p.img.resize(static_cast<size_t>(L.order()));
  for (int y = 0; y < L.order(); ++y) p.img[y] = L.mul(x, y);
  return p;
}

/// R(x): y -> yx.
inline Perm trans_R(const LoopTable& L, int x) {
  Perm p;
  p.img.resize(static_cast<size_t>(L.order()));
  for (int y = 0; y < L.order(); ++y) p.img[y] = L.mul(y, x);
  return p;
}

/// J: x -> x^-1. Requires total two-sided inverses.
inline Perm j_map(const LoopTable& L) {
  Perm p;
  p.img.resize(static_cast<size_t>(L.order()));
  for (int x = 0; x < L.order(); ++x) p.img[x] = L.inverse(x);
  return p;
}

/// T(x) = R(x) L(x)^-1.
inline Perm inner_T(const LoopTable& L, int x) {
  return compose(trans_R(L, x), invert(trans_L(L, x)));
}

/// R(x,y) = R(x) R(y) R(xy)^-1.
inline Perm inner_R(const LoopTable& L, int x, int y) {
  return compose(compose(trans_R(L, x), trans_R(L, y)),
                 invert(trans_R(L, L.mul(x, y))));
}

/// L(x,y) = L(x) L(y) L(yx)^-1.
inline Perm inner_L(const LoopTable& L, int x, int y) {
  return compose(compose(trans_L(L, x), trans_L(L, y)),
                 invert(trans_L(L, L.mul(y, x))));
}

/// C(x,y) = R(x) L(y) R(x^-1) L(y^-1). Requires inverses of x and y.
inline Perm inner_C(const LoopTable& L, int x, int y) {
  return compose(compose(trans_R(L, x), trans_L(L, y)),
                 compose(trans_R(L, L.inverse(x)), trans_L(L, L.inverse(y))));
}

// ---------------------------------------------------------------------------
// Permutation group closure.

inline constexpr size_t kDefaultGroupCap = 10'000'000;

struct PermGroup {
  int degree = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;  // full closure, BFS order

  size_t order() const { return elements.size(); }

  bool contains(const Perm& p) const {
    for (const Perm& e : elements)
      if (e == p) return true;
    return false;
  }
};

/// Breadth-first closure of the generated group: start from the identity and
/// keep multiplying by generators until no new permutations appear.
inline PermGroup generate_group(const std::vector<Perm>& gens,
                                size_t cap = kDefaultGroupCap) {
  if (gens.empty()) throw loop_error("empty generator list");
  int deg = gens[0].degree();
  for (const Perm& g : gens)
    if (g.degree() != deg) throw loop_error("permutation degree mismatch");

  PermGroup G;
  G.degree = deg;
  G.generators = gens;

  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> frontier;
  Perm id(deg);
  seen.insert(id);
  G.elements.push_back(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Perm cur = std::move(frontier.front());
    frontier.pop_front();
    for (const Perm& g : gens) {
      Perm next = compose(cur, g);
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw loop_error("group too large");
        G.elements.push_back(next);
        frontier.push_back(next);
      }
    }
  }
  return G;
}

/// Mlt(L) = <L(x), R(x) : x in L>.
inline PermGroup multiplication_group(const LoopTable& L,
                                      size_t cap = kDefaultGroupCap) {
  std::vector<Perm> gens;
  for (int x = 0; x < L.order(); ++x) {
    gens.push_back(trans_L(L, x));
    gens.push_back(trans_R(L, x));
  }
  return generate_group(gens, cap);
}

/// Generators L(x,y), R(x,y), T(x) of the inner mapping group Mlt_1(L).
inline std::vector<Perm> inner_generators(const LoopTable& L) {
  std::vector<Perm> gens;
  for (int x = 0; x < L.order(); ++x)
    for (int y = 0; y < L.order(); ++y) {
      gens.push_back(inner_L(L, x, y));
      gens.push_back(inner_R(L, x, y));
    }
  for (int x = 0; x < L.order(); ++x) gens.push_back(inner_T(L, x));
  return gens;
}

inline PermGroup inner_mapping_group(const LoopTable& L,
                                     size_t cap = kDefaultGroupCap) {
  return generate_group(inner_generators(L), cap);
}

// ---------------------------------------------------------------------------
// Automorphism tests.

inline bool is_automorphism(const LoopTable& L, const Perm& p) {
  if (p.degree() != L.order()) return false;
  if (apply(0, p) != 0) return false;
  for (int a = 0; a < L.order(); ++a)
    for (int b = 0; b < L.order(); ++b)
      if (apply(L.mul(a, b), p) != L.mul(apply(a, p), apply(b, p))) return false;
  return true;
}

}  // namespace loopalg

#endif  // LOOPALG_MAPPINGS_HPP
