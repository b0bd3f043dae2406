#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "polytract/mconvex.hpp"
#include "polytract/tracts.hpp"

namespace polytract {

// Index data of one Pluecker relation: s, a base point alpha, the sorted
// index tuples i_0..i_s and j_2..j_s. For bounded relations alpha lives in
// reduced coordinates (relative to dminus); for unbounded relations it is a
// point of the ambient simplex.
struct PluckerIndex {
  int s = 2;
  Vec alpha;
  std::vector<int> i;  // s+1 entries, weakly increasing
  std::vector<int> j;  // s-1 entries, weakly increasing

  bool operator==(const PluckerIndex& o) const {
    return s == o.s && alpha == o.alpha && i == o.i && j == o.j;
  }
};

struct PluckerTerm {
  Vec beta, gamma;  // the k-th term is sign * x_beta * x_gamma
  int sign = 1;     // (-1)^{k+sigma(k)} under the sorted-tuple convention
  bool nonzero = false;

  bool operator==(const PluckerTerm& o) const {
    return beta == o.beta && gamma == o.gamma && sign == o.sign &&
           nonzero == o.nonzero;
  }
};

struct PluckerRelation {
  PluckerIndex index;
  std::vector<PluckerTerm> terms;

  int nonzero_count() const {
    int c = 0;
    for (const auto& t : terms) c += t.nonzero;
    return c;
  }

  bool operator==(const PluckerRelation& o) const {
    return index == o.index && terms == o.terms;
  }
};

enum class RelationKind { full, three_term };

// Relation enumeration is polynomial in the candidate-point count, unlike
// subset enumeration, so it tolerates a larger cap (the Fano plane needs 35).
constexpr int kDefaultRelationGuard = 64;

namespace detail {

// sigma(k) = number of j's strictly below i_k; the parity of inserting i_k
// into the sorted j-list. Reproduces the classical determinant convention.
inline int sigma_of(const std::vector<int>& j, int ik) {
  int c = 0;
  for (int x : j)
    if (x < ik) ++c;
  return c;
}

// Canonical key: the multiset of nonzero monomials with relative signs,
// normalized so the first entry is positive.
using RelationKey = std::vector<std::tuple<Vec, Vec, int>>;

// Relative signs enter the key only when the support is a matroid
// translate; otherwise 1 = -1 is forced and sign patterns are meaningless.
inline RelationKey relation_key(const PluckerRelation& rel, bool with_signs) {
  RelationKey key;
  for (const auto& t : rel.terms) {
    if (!t.nonzero) continue;
    Vec b = t.beta, g = t.gamma;
    if (g < b) std::swap(b, g);
    key.emplace_back(b, g, with_signs ? t.sign : 1);
  }
  std::sort(key.begin(), key.end(),
            [](const auto& a, const auto& b) {
              if (std::get<0>(a) != std::get<0>(b))
                return std::get<0>(a) < std::get<0>(b);
              if (std::get<1>(a) != std::get<1>(b))
                return std::get<1>(a) < std::get<1>(b);
              return std::get<2>(a) < std::get<2>(b);
            });
  if (!key.empty() && std::get<2>(key.front()) < 0)
    for (auto& e : key) std::get<2>(e) = -std::get<2>(e);
  return key;
}

inline PluckerRelation build_relation(const MConvexSet& support, int s,
                                      const Vec& alpha,
                                      const std::vector<int>& is,
                                      const std::vector<int>& js) {
  PluckerRelation rel;
  rel.index = PluckerIndex{s, alpha, is, js};
  Vec isum = add(alpha, tuple_point(support.n, is));
  Vec jsum = add(alpha, tuple_point(support.n, js));
  for (int k = 0; k <= s; ++k) {
    PluckerTerm t;
    int ik = is[static_cast<size_t>(k)];
    t.beta = sub(isum, unit_vec(support.n, ik));
    t.gamma = add(jsum, unit_vec(support.n, ik));
    t.sign = ((k + sigma_of(js, ik)) % 2 == 0) ? 1 : -1;
    t.nonzero = support.contains(t.beta) && support.contains(t.gamma);
    rel.terms.push_back(std::move(t));
  }
  return rel;
}

}  // namespace detail

// Enumerates the canonical relations of J. Bounded relations are indexed on
// the reduction (alpha >= 0 and alpha + sum(e_i) + sum(e_j) <= omega);
// unbounded relations run over the whole ambient simplex, as used for the
// Polygrassmannian over idempotent fusion tracts. Each canonical index is
// emitted once; relations whose terms all vanish are dropped.
inline std::vector<PluckerRelation> enumerate_relations(
    const MConvexSet& J, RelationKind kind, bool bounded = true,
    int guard = kDefaultRelationGuard) {
  Invariants inv = invariants_of(J);
  const MConvexSet& support = bounded ? inv.reduction : J;
  int top_rank = bounded ? inv.eff_rank : J.r;
  Vec bound = bounded ? inv.omega : Vec(static_cast<size_t>(J.n), top_rank);

  if (static_cast<int>(bounded_points(bound, top_rank).size()) > guard)
    throw Error(ErrorKind::size_guard, "relation enumeration guard exceeded");

  bool with_signs = true;
  for (const Vec& b : support.bases)
    for (int x : b)
      if (x >= 2) with_signs = false;

  std::vector<PluckerRelation> out;
  std::set<detail::RelationKey> seen;
  int s_hi = (kind == RelationKind::three_term) ? 2 : top_rank;
  for (int s = 2; s <= s_hi; ++s) {
    std::vector<Vec> alphas = bounded ? bounded_points(bound, top_rank - s)
                                      : simplex_points(J.n, top_rank - s);
    for (const Vec& alpha : alphas) {
      for (const auto& is : sorted_tuples(J.n, s + 1)) {
        Vec ai = add(alpha, tuple_point(J.n, is));
        if (bounded && !leq(ai, bound)) continue;
        for (const auto& js : sorted_tuples(J.n, s - 1)) {
          if (bounded && !leq(add(ai, tuple_point(J.n, js)), bound)) continue;
          PluckerRelation rel =
              detail::build_relation(support, s, alpha, is, js);
          if (rel.nonzero_count() == 0) continue;
          auto key = detail::relation_key(rel, with_signs);
          if (!seen.insert(key).second) continue;
          out.push_back(std::move(rel));
        }
      }
    }
  }
  return out;
}

// A degenerate relation normalized to x_{b1} x_{g1} = +/- x_{b2} x_{g2}.
// sign_bit 1 records a relative minus sign between the surviving terms.
struct DegenerateRelation {
  PluckerIndex index;
  Vec b1, g1, b2, g2;
  int sign_bit = 0;
};

namespace detail {

inline std::optional<DegenerateRelation> degenerate_of(
    const PluckerRelation& rel) {
  if (rel.nonzero_count() != 2) return std::nullopt;
  int k1 = -1, k2 = -1;
  for (size_t k = 0; k < rel.terms.size(); ++k) {
    if (!rel.terms[k].nonzero) continue;
    (k1 < 0 ? k1 : k2) = static_cast<int>(k);
  }
  const auto& t1 = rel.terms[static_cast<size_t>(k1)];
  const auto& t2 = rel.terms[static_cast<size_t>(k2)];
  DegenerateRelation d;
  d.index = rel.index;
  d.b1 = t1.beta;
  d.g1 = t1.gamma;
  d.b2 = t2.beta;
  d.g2 = t2.gamma;
  d.sign_bit = (t1.sign == t2.sign) ? 1 : 0;  // a + b in N forces b = -a
  auto mono = [](const Vec& x, const Vec& y) {
    return x < y ? std::make_pair(x, y) : std::make_pair(y, x);
  };
  if (mono(d.b1, d.g1) == mono(d.b2, d.g2) && d.sign_bit == 0)
    return std::nullopt;  // trivial instance a - a
  return d;
}

}  // namespace detail

inline std::vector<DegenerateRelation> degenerate_relations(
    const MConvexSet& J, int guard = kDefaultRelationGuard) {
  std::vector<DegenerateRelation> out;
  for (const auto& rel :
       enumerate_relations(J, RelationKind::three_term, true, guard))
    if (auto d = detail::degenerate_of(rel)) out.push_back(*d);
  return out;
}

inline std::vector<DegenerateRelation> degenerate_full_relations(
    const MConvexSet& J, int guard = kDefaultRelationGuard) {
  std::vector<DegenerateRelation> out;
  for (const auto& rel :
       enumerate_relations(J, RelationKind::full, true, guard))
    if (auto d = detail::degenerate_of(rel)) out.push_back(*d);
  return out;
}

// Evaluates a relation against unit values keyed on the relation's points.
// `values` must cover every nonzero term (support mismatch otherwise). For
// tracts with 1 != -1 the term signs fold into the unit payload.
inline FormalSum instantiate(const PluckerRelation& rel,
                             const std::map<Vec, TractElement>& values,
                             TractId tract) {
  FormalSum sum(tract);
  bool signs_matter = !minus_one_is_one(tract);
  for (const auto& t : rel.terms) {
    if (!t.nonzero) continue;
    auto itb = values.find(t.beta);
    auto itg = values.find(t.gamma);
    if (itb == values.end() || itg == values.end() ||
        itb->second.zero || itg->second.zero)
      throw Error(ErrorKind::support_mismatch,
                  "relation term outside the representation support");
    TractElement u = mul(itb->second, itg->second);
    if (signs_matter && t.sign < 0) u = neg(u);
    sum.push(u);
  }
  return sum;
}

// Tuples (alpha, i, j, k, l) whose four cross points lie in the reduction;
// canonical representatives under the (CR-sigma) symmetries and inversion.
struct CrossTuple {
  Vec alpha;  // reduced coordinates
  int i, j, k, l;
  bool degenerate = false;

  std::array<Vec, 4> cross_points(int n) const {
    return {add(alpha, add(unit_vec(n, i), unit_vec(n, k))),
            add(alpha, add(unit_vec(n, j), unit_vec(n, l))),
            add(alpha, add(unit_vec(n, i), unit_vec(n, l))),
            add(alpha, add(unit_vec(n, j), unit_vec(n, k)))};
  }
};

namespace detail {

// Tuple-sign parity of a cross ratio symbol; 0 whenever 1 = -1 is forced.
inline int cross_tuple_parity(const MConvexSet& reduction, const CrossTuple& w) {
  for (const Vec& b : reduction.bases)
    for (int x : b)
      if (x >= 2) return 0;  // proper reduction: alternation forces 1 = -1
  std::vector<int> base = point_tuple(w.alpha);
  auto par = [&](int a, int b) {
    std::vector<int> t = base;
    t.push_back(a);
    t.push_back(b);
    return sort_parity(t);
  };
  return (par(w.i, w.k) + par(w.j, w.l) + par(w.i, w.l) + par(w.j, w.k)) % 2;
}

inline std::array<int, 4> canonical_ijkl(int i, int j, int k, int l) {
  std::array<std::array<int, 4>, 8> orbit = {{
      {i, j, k, l}, {k, l, i, j}, {j, i, l, k}, {l, k, j, i},
      {i, j, l, k}, {l, k, i, j}, {j, i, k, l}, {k, l, j, i},
  }};
  return *std::min_element(orbit.begin(), orbit.end());
}

}  // namespace detail

// Enumerates Omega_J as canonical symbols on the reduction of J.
inline std::vector<CrossTuple> enumerate_omega(const MConvexSet& J) {
  Invariants inv = invariants_of(J);
  const MConvexSet& R = inv.reduction;
  std::vector<CrossTuple> out;
  if (inv.eff_rank < 2) return out;
  std::set<std::pair<Vec, std::array<int, 4>>> seen;
  for (const Vec& alpha : bounded_points(inv.omega, inv.eff_rank - 2)) {
    for (int i = 0; i < J.n; ++i)
      for (int j = 0; j < J.n; ++j) {
        if (i == j) continue;
        for (int k = 0; k < J.n; ++k)
          for (int l = 0; l < J.n; ++l) {
            if (k == l) continue;
            CrossTuple t{alpha, i, j, k, l, false};
            auto pts = t.cross_points(J.n);
            if (!R.contains(pts[0]) || !R.contains(pts[1]) ||
                !R.contains(pts[2]) || !R.contains(pts[3]))
              continue;
            auto canon = detail::canonical_ijkl(i, j, k, l);
            if (!seen.insert({alpha, canon}).second) continue;
            CrossTuple c{alpha, canon[0], canon[1], canon[2], canon[3], false};
            Vec pij = add(alpha, add(unit_vec(J.n, c.i), unit_vec(J.n, c.j)));
            Vec pkl = add(alpha, add(unit_vec(J.n, c.k), unit_vec(J.n, c.l)));
            c.degenerate = !(R.contains(pij) && R.contains(pkl));
            out.push_back(std::move(c));
          }
      }
  }
  return out;
}

// One line per relation: "s | alpha | i | j | terms".
inline std::string relation_to_string(const PluckerRelation& rel) {
  std::ostringstream os;
  auto put_vec = [&](const Vec& v) {
    os << "(";
    for (size_t t = 0; t < v.size(); ++t) os << (t ? "," : "") << v[t];
    os << ")";
  };
  os << rel.index.s << " | ";
  put_vec(rel.index.alpha);
  os << " | ";
  for (size_t t = 0; t < rel.index.i.size(); ++t)
    os << (t ? "," : "") << rel.index.i[t] + 1;
  os << " | ";
  for (size_t t = 0; t < rel.index.j.size(); ++t)
    os << (t ? "," : "") << rel.index.j[t] + 1;
  os << " |";
  for (const auto& t : rel.terms) {
    os << " ";
    if (!t.nonzero) {
      os << "0";
      continue;
    }
    os << (t.sign > 0 ? "+" : "-") << "x";
    put_vec(t.beta);
    os << "*x";
    put_vec(t.gamma);
  }
  return os.str();
}

}  // namespace polytract
