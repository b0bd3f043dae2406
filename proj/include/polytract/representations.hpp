#pragma once

#include <map>
#include <optional>
#include <vector>

#include "polytract/plucker.hpp"

namespace polytract {

// A representation of J over a concrete tract. Values are stored on the
// bases of the reduction (point-indexed); the support is exactly those
// bases and zero is never stored.
struct Representation {
  MConvexSet J;
  TractId tract = TractId::K;
  std::map<Vec, TractElement> values;  // keyed on bases of the reduction

  const TractElement& at(const Vec& reduced_basis) const {
    auto it = values.find(reduced_basis);
    if (it == values.end())
      throw Error(ErrorKind::support_mismatch, "basis outside the support");
    return it->second;
  }
};

inline Representation make_representation(MConvexSet J, TractId tract,
                                          std::map<Vec, TractElement> values) {
  Invariants inv = invariants_of(J);
  if (values.size() != inv.reduction.bases.size())
    throw Error(ErrorKind::support_mismatch,
                "support must equal the reduced base set");
  for (const auto& [p, v] : values) {
    if (!inv.reduction.contains(p))
      throw Error(ErrorKind::support_mismatch, "value on a non-basis point");
    if (v.zero || v.tract != tract)
      throw Error(ErrorKind::malformed_input, "values must be units of the tract");
  }
  return Representation{std::move(J), tract, std::move(values)};
}

struct VerifyResult {
  enum class Status { ok, violated, idempotency_diagnostic };
  Status status = Status::ok;
  std::vector<PluckerIndex> violations;

  bool ok() const { return status == Status::ok; }
};

enum class VerifyMode { strong, weak };

// Checks the bounded Pluecker relations (all of them for strong, the 3-term
// ones for weak). Over tracts with 1 != -1 a proper polymatroid cannot be
// representable at all, and the delicate sign conventions only have a
// classical meaning for matroid translates, so verification of a proper set
// short-circuits with the idempotency-principle diagnostic.
inline VerifyResult verify(const Representation& rho, VerifyMode mode,
                           int guard = kDefaultRelationGuard) {
  VerifyResult res;
  if (!minus_one_is_one(rho.tract) && is_proper(rho.J)) {
    res.status = VerifyResult::Status::idempotency_diagnostic;
    return res;
  }
  RelationKind kind = (mode == VerifyMode::strong) ? RelationKind::full
                                                   : RelationKind::three_term;
  for (const auto& rel : enumerate_relations(rho.J, kind, true, guard)) {
    if (!is_null(instantiate(rel, rho.values, rho.tract)))
      res.violations.push_back(rel.index);
  }
  if (!res.violations.empty()) res.status = VerifyResult::Status::violated;
  return res;
}

// The trivial representation: every basis carries the unit 1.
inline Representation characteristic_representation(const MConvexSet& J,
                                                    TractId tract) {
  if (!tract_flags(tract).idempotent)
    throw Error(ErrorKind::non_idempotent_tract,
                "characteristic representation needs an idempotent tract");
  std::map<Vec, TractElement> vals;
  for (const Vec& b : invariants_of(J).reduction.bases)
    vals.emplace(b, TractElement::one(tract));
  return Representation{J, tract, std::move(vals)};
}

inline Representation pushforward(const Representation& rho,
                                  const TractMorphism& m) {
  if (m.source != rho.tract)
    throw Error(ErrorKind::morphism_mismatch, "morphism source mismatch");
  std::map<Vec, TractElement> vals;
  for (const auto& [p, v] : rho.values) vals.emplace(p, m(v));
  return Representation{rho.J, m.target, std::move(vals)};
}

// An element (a, t) of the extended torus F^x x (F^x)^n.
struct TorusElement {
  TractElement a;
  std::vector<TractElement> t;
};

inline TractElement unit_pow(const TractElement& u, int e) {
  if (e == 0) return TractElement::one(u.tract);
  TractElement base = e < 0 ? inv(u) : u;
  TractElement acc = base;
  for (int k = 1; k < (e < 0 ? -e : e); ++k) acc = mul(acc, base);
  return acc;
}

// (a,t).rho(b) = a * prod_i t_i^{b_i} * rho(b), on reduced points.
inline Representation rescale(const Representation& rho, const TorusElement& g) {
  if (g.a.tract != rho.tract || static_cast<int>(g.t.size()) != rho.J.n)
    throw Error(ErrorKind::tract_mismatch, "torus element mismatch");
  std::map<Vec, TractElement> vals;
  for (const auto& [p, v] : rho.values) {
    TractElement u = mul(g.a, v);
    for (int i = 0; i < rho.J.n; ++i)
      u = mul(u, unit_pow(g.t[static_cast<size_t>(i)], p[static_cast<size_t>(i)]));
    vals.emplace(p, u);
  }
  return Representation{rho.J, rho.tract, std::move(vals)};
}

namespace detail {

// sign(beta beta*) for the duality isomorphism: the parity of sorting the
// concatenation of the two index tuples. Only meaningful on matroid
// translates, where the entries are pairwise distinct.
inline int dual_sign(const Vec& reduced_basis, const Vec& omega) {
  std::vector<int> cat = point_tuple(reduced_basis);
  std::vector<int> rest = point_tuple(sub(omega, reduced_basis));
  cat.insert(cat.end(), rest.begin(), rest.end());
  return sort_parity(cat) == 0 ? 1 : -1;
}

}  // namespace detail

// rho*(delta - b) = sign(b b*) rho(b); the result represents J*.
inline Representation dual_representation(const Representation& rho) {
  Invariants inv = invariants_of(rho.J);
  bool signs = !minus_one_is_one(rho.tract);
  std::map<Vec, TractElement> vals;
  for (const auto& [p, v] : rho.values) {
    TractElement u = v;
    if (signs && detail::dual_sign(p, inv.omega) < 0) u = neg(u);
    vals.emplace(sub(inv.omega, p), u);
  }
  return Representation{dual(rho.J), rho.tract, std::move(vals)};
}

// Restriction of rho along the minor embedding of (J \ nu) / mu + tau.
inline Representation minor_representation(const Representation& rho,
                                           const Vec& nu, const Vec& mu,
                                           const Vec& tau) {
  EmbeddedMinor em = embedded_minor(rho.J, nu, mu, tau);
  Invariants inv = invariants_of(rho.J);
  Invariants minv = invariants_of(em.minor);
  bool signs = !minus_one_is_one(rho.tract);
  // gamma: the tuple completing a minor basis to a basis of J, lex-least
  Vec gamma_pt = sub(sub(add(minv.dminus, mu), tau), inv.dminus);
  std::vector<int> gamma = point_tuple(gamma_pt);
  std::map<Vec, TractElement> vals;
  for (const Vec& b : minv.reduction.bases) {
    Vec ambient = em.embed(add(b, minv.dminus));
    Vec reduced = sub(ambient, inv.dminus);
    TractElement u = rho.at(reduced);
    if (signs) {
      std::vector<int> cat = gamma;
      std::vector<int> bt = point_tuple(b);
      cat.insert(cat.end(), bt.begin(), bt.end());
      if (sort_parity(cat) != 0) u = neg(u);
    }
    vals.emplace(b, u);
  }
  return Representation{em.minor, rho.tract, std::move(vals)};
}

inline Representation direct_sum_representation(const Representation& r1,
                                                const Representation& r2) {
  if (r1.tract != r2.tract)
    throw Error(ErrorKind::tract_mismatch, "direct sum across tracts");
  std::map<Vec, TractElement> vals;
  for (const auto& [p1, v1] : r1.values)
    for (const auto& [p2, v2] : r2.values) {
      Vec p(p1);
      p.insert(p.end(), p2.begin(), p2.end());
      vals.emplace(std::move(p), mul(v1, v2));
    }
  return Representation{direct_sum(r1.J, r2.J), r1.tract, std::move(vals)};
}

// <ij|kl>_alpha = rho(a+ei+ek) rho(a+ej+el) / (rho(a+ei+el) rho(a+ej+ek)),
// with the tuple-sign convention on matroid translates.
inline TractElement cross_ratio(const Representation& rho, const CrossTuple& w) {
  Invariants jinv = invariants_of(rho.J);
  auto pts = w.cross_points(rho.J.n);
  for (const auto& p : pts)
    if (!jinv.reduction.contains(p))
      throw Error(ErrorKind::precondition_violation, "tuple outside Omega_J");
  TractElement num = mul(rho.at(pts[0]), rho.at(pts[1]));
  TractElement den = mul(rho.at(pts[2]), rho.at(pts[3]));
  TractElement val = mul(num, inv(den));
  if (!minus_one_is_one(rho.tract) &&
      detail::cross_tuple_parity(jinv.reduction, w) != 0)
    val = neg(val);
  return val;
}

// Cross ratios over the canonical nondegenerate symbols.
inline std::map<std::pair<Vec, std::array<int, 4>>, TractElement>
cross_ratio_vector(const Representation& rho) {
  std::map<std::pair<Vec, std::array<int, 4>>, TractElement> out;
  for (const CrossTuple& w : enumerate_omega(rho.J)) {
    if (w.degenerate) continue;
    out.emplace(std::make_pair(w.alpha, std::array<int, 4>{w.i, w.j, w.k, w.l}),
                cross_ratio(rho, w));
  }
  return out;
}

// Membership in the lineality space (the torus orbit of the trivial
// representation): every cross ratio over Omega_J equals 1.
inline bool is_in_lineality(const Representation& rho) {
  if (!tract_flags(rho.tract).idempotent)
    throw Error(ErrorKind::non_idempotent_tract,
                "lineality requires an idempotent tract");
  TractElement one = TractElement::one(rho.tract);
  for (const CrossTuple& w : enumerate_omega(rho.J))
    if (cross_ratio(rho, w) != one) return false;
  return true;
}

// Degeneracy-locus membership for an arbitrary unit assignment on the
// reduced bases: only the degenerate 3-term relations are checked.
inline bool is_in_degeneracy_locus(const MConvexSet& J,
                                   const std::map<Vec, TractElement>& values,
                                   TractId tract) {
  Invariants inv = invariants_of(J);
  bool signs = !minus_one_is_one(tract);
  for (const auto& d : degenerate_relations(J)) {
    auto val = [&](const Vec& p) {
      auto it = values.find(p);
      if (it == values.end() || it->second.zero)
        throw Error(ErrorKind::support_mismatch, "missing unit value");
      return it->second;
    };
    TractElement lhs = mul(val(d.b1), val(d.g1));
    TractElement rhs = mul(val(d.b2), val(d.g2));
    if (signs && d.sign_bit) rhs = neg(rhs);
    if (lhs != rhs) return false;
  }
  (void)inv;
  return true;
}

// Rescaling-class equality (same extended-torus orbit). For idempotent
// tracts this is cross-ratio-vector equality; the finite sign-like tracts
// are handled by enumerating the torus.
inline bool same_rescaling_class(const Representation& a,
                                 const Representation& b) {
  if (a.tract != b.tract || a.J != b.J)
    throw Error(ErrorKind::tract_mismatch, "comparing unrelated representations");
  if (tract_flags(a.tract).idempotent)
    return cross_ratio_vector(a) == cross_ratio_vector(b);
  // finite unit group: enumerate (a, t) over {+1,-1}^{n+1}
  int n = a.J.n;
  for (uint32_t mask = 0; mask < (uint32_t{1} << (n + 1)); ++mask) {
    TorusElement g;
    g.a = (mask & 1) ? neg(TractElement::one(a.tract))
                     : TractElement::one(a.tract);
    for (int i = 0; i < n; ++i)
      g.t.push_back((mask & (2u << i)) ? neg(TractElement::one(a.tract))
                                       : TractElement::one(a.tract));
    if (rescale(a, g).values == b.values) return true;
  }
  return false;
}

// An M-convex function candidate: finite rational values on part of the
// simplex, infinity elsewhere.
struct RationalFunction {
  int n = 0;
  int r = 0;
  std::map<Vec, mpq_class> finite;  // absent = infinity

  bool has(const Vec& p) const { return finite.count(p) > 0; }
};

namespace detail {

inline void check_function_domain(const RationalFunction& f) {
  for (const auto& [p, q] : f.finite)
    if (static_cast<int>(p.size()) != f.n || norm(p) != f.r || !nonneg(p))
      throw Error(ErrorKind::malformed_input, "bad function support");
}

}  // namespace detail

// Route 1: Murota's defining exchange axiom, scanned directly over pairs of
// support points. For a, b in the support and a_k > b_k there must be an l
// with a_l < b_l and f(a) + f(b) >= f(a-ek+el) + f(b+ek-el).
inline bool mconvex_function_local(const RationalFunction& f) {
  if (f.finite.empty()) return false;
  detail::check_function_domain(f);
  for (const auto& [a, fa] : f.finite)
    for (const auto& [b, fb] : f.finite)
      for (int k = 0; k < f.n; ++k) {
        if (a[static_cast<size_t>(k)] <= b[static_cast<size_t>(k)]) continue;
        mpq_class lhs = fa + fb;
        bool ok = false;
        for (int l = 0; l < f.n && !ok; ++l) {
          if (a[static_cast<size_t>(l)] >= b[static_cast<size_t>(l)]) continue;
          Vec a2 = sub(add(a, unit_vec(f.n, l)), unit_vec(f.n, k));
          Vec b2 = sub(add(b, unit_vec(f.n, k)), unit_vec(f.n, l));
          auto ia = f.finite.find(a2);
          auto ib = f.finite.find(b2);
          if (ia == f.finite.end() || ib == f.finite.end()) continue;
          ok = lhs >= ia->second + ib->second;
        }
        if (!ok) return false;
      }
  return true;
}

// The local 3-term variant: the minimum among the three pairings of
// { f(a+ei+ek)+f(a+ej+el) } is attained twice. Equivalent to the exchange
// axiom when the support is M-convex (Murota's local characterization).
inline bool mconvex_function_local3(const RationalFunction& f) {
  if (f.finite.empty()) return false;
  detail::check_function_domain(f);
  auto term = [&](const Vec& x, const Vec& y) -> std::optional<mpq_class> {
    auto ix = f.finite.find(x);
    auto iy = f.finite.find(y);
    if (ix == f.finite.end() || iy == f.finite.end()) return std::nullopt;
    return ix->second + iy->second;
  };
  for (const Vec& alpha : simplex_points(f.n, f.r - 2)) {
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j)
        for (int k = 0; k < f.n; ++k)
          for (int l = 0; l < f.n; ++l) {
            Vec aik = add(alpha, add(unit_vec(f.n, i), unit_vec(f.n, k)));
            Vec ajl = add(alpha, add(unit_vec(f.n, j), unit_vec(f.n, l)));
            auto lhs = term(aik, ajl);
            if (!lhs) continue;
            Vec aij = add(alpha, add(unit_vec(f.n, i), unit_vec(f.n, j)));
            Vec akl = add(alpha, add(unit_vec(f.n, k), unit_vec(f.n, l)));
            Vec ail = add(alpha, add(unit_vec(f.n, i), unit_vec(f.n, l)));
            Vec ajk = add(alpha, add(unit_vec(f.n, j), unit_vec(f.n, k)));
            auto t1 = term(aij, akl);
            auto t2 = term(ail, ajk);
            bool ok = (t1 && *lhs >= *t1) || (t2 && *lhs >= *t2);
            if (!ok) return false;
          }
  }
  return true;
}

// Route 2: the support is M-convex and rho = e^{-f} verifies over T0.
inline bool mconvex_function_via_t0(const RationalFunction& f,
                                    VerifyMode mode = VerifyMode::strong) {
  if (f.finite.empty()) return false;
  std::vector<Vec> support;
  for (const auto& [p, q] : f.finite) support.push_back(p);
  if (!is_m_convex(f.n, f.r, support)) return false;
  MConvexSet J{f.n, f.r, support};
  Invariants inv = invariants_of(J);
  std::map<Vec, TractElement> vals;
  for (const auto& [p, q] : f.finite)
    vals.emplace(sub(p, inv.dminus), TractElement::tropical(TractId::T0, -q));
  Representation rho{J, TractId::T0, std::move(vals)};
  return verify(rho, mode).ok();
}

}  // namespace polytract
