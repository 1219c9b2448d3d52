#ifndef LOOPALG_SUITE_HPP
#define LOOPALG_SUITE_HPP

#include <set>
#include <string>
#include <vector>

#include "loopalg/core.hpp"
#include "loopalg/mappings.hpp"
#include "loopalg/properties.hpp"

namespace loopalg {

/// Hypothesis class an identity is quoted under.
enum class Hypothesis { AnyLoop, InverseProperty, Moufang, DiassocALoop };

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::AnyLoop: return "any-loop";
    case Hypothesis::InverseProperty: return "IP-loop";
    case Hypothesis::Moufang: return "Moufang";
    case Hypothesis::DiassocALoop: return "diassociative-A-loop";
  }
  return "?";
}

struct SuiteEntry {
  std::string id;
  Hypothesis hypothesis = Hypothesis::AnyLoop;
  bool applicable = false;
  bool holds = false;       // only meaningful when applicable
  std::string witness;      // first violating elements, when any
};

struct IdentitySuiteReport {
  bool inverse_property = false;
  bool moufang = false;
  bool diassociative_a_loop = false;
  std::vector<SuiteEntry> entries;

  bool all_applicable_hold() const {
    for (const auto& e : entries)
      if (e.applicable && !e.holds) return false;
    return true;
  }
  const SuiteEntry& get(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return e;
    throw loop_error("no such suite entry: " + id);
  }
};

namespace detail {

/// Shared caches for the operator identities: translations, inner mappings
/// and, when inverses are total, the maps that need them.
class SuiteContext {
 public:
  explicit SuiteContext(const LoopTable& L) : L_(L), n_(L.order()) {
    TL_.reserve(n_);
    TR_.reserve(n_);
    for (int x = 0; x < n_; ++x) {
      TL_.push_back(trans_L(L, x));
      TR_.push_back(trans_R(L, x));
    }
    T_.reserve(n_);
    for (int x = 0; x < n_; ++x)
      T_.push_back(compose(TR_[x], invert(TL_[x])));
    RIN_.resize(n_);
    LIN_.resize(n_);
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y) {
        RIN_[x].push_back(compose(compose(TR_[x], TR_[y]),
                                  invert(TR_[L.mul(x, y)])));
        LIN_[x].push_back(compose(compose(TL_[x], TL_[y]),
                                  invert(TL_[L.mul(y, x)])));
      }
    total_inv_ = L.has_total_inverses();
    if (total_inv_) {
      inv_.resize(n_);
      for (int x = 0; x < n_; ++x) inv_[x] = L.inverse(x);
      CIN_.resize(n_);
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          CIN_[x].push_back(compose(compose(TR_[x], TL_[y]),
                                    compose(TR_[inv_[x]], TL_[inv_[y]])));
    }
  }

  const LoopTable& L_;
  int n_;
  bool total_inv_ = false;
  std::vector<Perm> TL_, TR_, T_;
  std::vector<std::vector<Perm>> RIN_, LIN_, CIN_;
  std::vector<int> inv_;
};

inline std::string witness2(int x, int y) {
  return "x=" + std::to_string(x) + " y=" + std::to_string(y);
}
inline std::string witness3(int x, int y, int z) {
  return witness2(x, y) + " z=" + std::to_string(z);
}

}  // namespace detail

/// Runs every identity of the suite against L, marking entries whose
/// hypothesis class L does not satisfy as not applicable.
inline IdentitySuiteReport identity_suite(const LoopTable& L) {
  IdentitySuiteReport rep;
  rep.inverse_property = has_inverse_property(L);
  rep.moufang = is_moufang(L);
  rep.diassociative_a_loop = is_diassociative(L) && is_a_loop(L);

  detail::SuiteContext cx(L);
  const int n = cx.n_;

  auto applicable = [&](Hypothesis h) {
    switch (h) {
      case Hypothesis::AnyLoop: return true;
      case Hypothesis::InverseProperty: return rep.inverse_property;
      case Hypothesis::Moufang: return rep.moufang;
      case Hypothesis::DiassocALoop: return rep.diassociative_a_loop;
    }
    return false;
  };

  // check(x, y) -> true when the instance holds; scanned over all pairs.
  auto add_pairwise = [&](const std::string& id, Hypothesis h, auto&& check) {
    SuiteEntry e{id, h, applicable(h), true, ""};
    if (e.applicable) {
      for (int x = 0; x < n && e.holds; ++x)
        for (int y = 0; y < n; ++y)
          if (!check(x, y)) {
            e.holds = false;
            e.witness = detail::witness2(x, y);
            break;
          }
    }
    rep.entries.push_back(std::move(e));
  };

  auto add_triple = [&](const std::string& id, Hypothesis h, auto&& check) {
    SuiteEntry e{id, h, applicable(h), true, ""};
    if (e.applicable) {
      for (int x = 0; x < n && e.holds; ++x)
        for (int y = 0; y < n && e.holds; ++y)
          for (int z = 0; z < n; ++z)
            if (!check(x, y, z)) {
              e.holds = false;
              e.witness = detail::witness3(x, y, z);
              break;
            }
    }
    rep.entries.push_back(std::move(e));
  };

  const auto& TL = cx.TL_;
  const auto& TR = cx.TR_;
  const auto& T = cx.T_;
  const auto& RIN = cx.RIN_;
  const auto& LIN = cx.LIN_;
  const auto& CIN = cx.CIN_;
  const auto& inv = cx.inv_;

  // eq1: the Moufang identity itself.
  add_triple("eq1", Hypothesis::AnyLoop, [&](int x, int y, int z) {
    return L.mul(x, L.mul(y, L.mul(x, z))) == L.mul(L.mul(L.mul(x, y), x), z);
  });

  // eq2: [R(x,y)R(y,x)]^-1 T(x)T(y) = T(xy).
  add_pairwise("eq2", Hypothesis::DiassocALoop, [&](int x, int y) {
    Perm lhs = compose(invert(compose(RIN[x][y], RIN[y][x])),
                       compose(T[x], T[y]));
    return lhs == T[L.mul(x, y)];
  });

  // eq3: L(x,y) = R(x^-1, y^-1).
  add_pairwise("eq3", Hypothesis::DiassocALoop, [&](int x, int y) {
    return LIN[x][y] == RIN[inv[x]][inv[y]];
  });

  // eq4: R(x,y)^-1 = R(y^-1, x^-1).
  add_pairwise("eq4", Hypothesis::DiassocALoop, [&](int x, int y) {
    return invert(RIN[x][y]) == RIN[inv[y]][inv[x]];
  });

  // eq5: L(x,y)^-1 = L(y^-1, x^-1).
  add_pairwise("eq5", Hypothesis::DiassocALoop, [&](int x, int y) {
    return invert(LIN[x][y]) == LIN[inv[y]][inv[x]];
  });

  // eq6: R(y)T(x) = T(x)R(x^-1 y x).
  add_pairwise("eq6", Hypothesis::DiassocALoop, [&](int x, int y) {
    int c = L.mul(L.mul(inv[x], y), x);
    return compose(TR[y], T[x]) == compose(T[x], TR[c]);
  });

  // eq7: L(y)T(x) = T(x)L(x^-1 y x).
  add_pairwise("eq7", Hypothesis::DiassocALoop, [&](int x, int y) {
    int c = L.mul(L.mul(inv[x], y), x);
    return compose(TL[y], T[x]) == compose(T[x], TL[c]);
  });

  // eq8: C(x,y) is an inner mapping (fixes the identity).
  add_pairwise("eq8", Hypothesis::InverseProperty, [&](int x, int y) {
    return apply(0, CIN[x][y]) == 0;
  });

  // eq9: C(x,y) = L(x^-1)R(y^-1)L(x)R(y)  (C is fixed by J-conjugation).
  add_pairwise("eq9", Hypothesis::DiassocALoop, [&](int x, int y) {
    Perm rhs = compose(compose(TL[inv[x]], TR[inv[y]]), compose(TL[x], TR[y]));
    return CIN[x][y] == rhs;
  });

  // eq10: C(x,y) = R(x,y) R(y,x)^-1.
  add_pairwise("eq10", Hypothesis::DiassocALoop, [&](int x, int y) {
    return CIN[x][y] == compose(RIN[x][y], invert(RIN[y][x]));
  });

  // eq11-eq13: for p,q,r in any 2-generated subgroup, R(p) and L(p) commute
  // with R(q,r), L(q,r) and C(q,r).
  {
    SuiteEntry e11{"eq11", Hypothesis::DiassocALoop,
                   applicable(Hypothesis::DiassocALoop), true, ""};
    SuiteEntry e12 = e11, e13 = e11;
    e12.id = "eq12";
    e13.id = "eq13";
    if (e11.applicable) {
      std::set<std::vector<int>> seen;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          auto els = subloop_generated(L, {a, b}).elements();
          if (!seen.insert(els).second) continue;
          for (int q : els)
            for (int r : els) {
              const Perm& Rqr = RIN[q][r];
              const Perm& Lqr = LIN[q][r];
              const Perm& Cqr = CIN[q][r];
              for (int p : els) {
                std::string w = "p=" + std::to_string(p) + " q=" +
                                std::to_string(q) + " r=" + std::to_string(r);
                if (e11.holds &&
                    (compose(TR[p], Rqr) != compose(Rqr, TR[p]) ||
                     compose(TL[p], Rqr) != compose(Rqr, TL[p]))) {
                  e11.holds = false;
                  e11.witness = w;
                }
                if (e12.holds &&
                    (compose(TR[p], Lqr) != compose(Lqr, TR[p]) ||
                     compose(TL[p], Lqr) != compose(Lqr, TL[p]))) {
                  e12.holds = false;
                  e12.witness = w;
                }
                if (e13.holds &&
                    (compose(TR[p], Cqr) != compose(Cqr, TR[p]) ||
                     compose(TL[p], Cqr) != compose(Cqr, TL[p]))) {
                  e13.holds = false;
                  e13.witness = w;
                }
              }
            }
        }
    }
    rep.entries.push_back(std::move(e11));
    rep.entries.push_back(std::move(e12));
    rep.entries.push_back(std::move(e13));
  }

  // eq14: R(x,y) = R(y)R(y^-1 x^-1)R(x) = R(y^-1 x^-1)R(x)R(y).
  add_pairwise("eq14", Hypothesis::DiassocALoop, [&](int x, int y) {
    int c = L.mul(inv[y], inv[x]);
    return RIN[x][y] == compose(TR[y], compose(TR[c], TR[x])) &&
           RIN[x][y] == compose(TR[c], compose(TR[x], TR[y]));
  });

  // eq15: L(x,y) = L(y)L(x^-1 y^-1)L(x) = L(x^-1 y^-1)L(x)L(y).
  add_pairwise("eq15", Hypothesis::DiassocALoop, [&](int x, int y) {
    int c = L.mul(inv[x], inv[y]);
    return LIN[x][y] == compose(TL[y], compose(TL[c], TL[x])) &&
           LIN[x][y] == compose(TL[c], compose(TL[x], TL[y]));
  });

  // eq16: R(x,y)^-1 = R(y,x).
  add_pairwise("eq16", Hypothesis::DiassocALoop, [&](int x, int y) {
    return invert(RIN[x][y]) == RIN[y][x];
  });

  // eq17: R(x,y) = R(x^-1,y^-1) = L(x,y) = L(x^-1,y^-1).
  add_pairwise("eq17", Hypothesis::DiassocALoop, [&](int x, int y) {
    return RIN[x][y] == RIN[inv[x]][inv[y]] && RIN[x][y] == LIN[x][y] &&
           RIN[x][y] == LIN[inv[x]][inv[y]];
  });

  // eq18: C(x,y) = C(x^-1,y^-1) = R(x,y)^2.
  add_pairwise("eq18", Hypothesis::DiassocALoop, [&](int x, int y) {
    return CIN[x][y] == CIN[inv[x]][inv[y]] &&
           CIN[x][y] == compose(RIN[x][y], RIN[x][y]);
  });

  // eq19: (yx)C(z,y) = (yx)C(z^-1,x).
  add_triple("eq19", Hypothesis::DiassocALoop, [&](int x, int y, int z) {
    int yx = L.mul(y, x);
    return apply(yx, CIN[z][y]) == apply(yx, CIN[inv[z]][x]);
  });

  // lemma3: T(x)T(y) = T(xy).
  add_pairwise("lemma3", Hypothesis::DiassocALoop, [&](int x, int y) {
    return compose(T[x], T[y]) == T[L.mul(x, y)];
  });

  // thm1: x(y(xz)) = ((xy)x)z, the conclusion of the main proof.
  add_triple("thm1", Hypothesis::DiassocALoop, [&](int x, int y, int z) {
    return L.mul(x, L.mul(y, L.mul(x, z))) ==
           L.mul(L.mul(L.mul(x, y), x), z);
  });

  // cor8: C(x,z) = L(z,x) = R(z,x) and C(x,z)^3 = I.
  add_pairwise("cor8", Hypothesis::DiassocALoop, [&](int x, int z) {
    const Perm& C = CIN[x][z];
    return C == LIN[z][x] && C == RIN[z][x] &&
           is_identity(compose(C, compose(C, C)));
  });

  // moufang_op: R(xz)L(x) = R(x)L(x)R(z), the Moufang identity in operator
  // form used to derive cor8.
  add_pairwise("moufang_op", Hypothesis::Moufang, [&](int x, int z) {
    return compose(TR[L.mul(x, z)], TL[x]) ==
           compose(compose(TR[x], TL[x]), TR[z]);
  });

  return rep;
}

}  // namespace loopalg

#endif  // LOOPALG_SUITE_HPP
