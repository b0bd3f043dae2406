#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polytract/lattice.hpp"

namespace polytract {

namespace detail {

// Symmetric exchange axiom, direct O(|J|^2 n^2) scan over a sorted point list.
inline bool exchange_axiom(int n, const std::vector<Vec>& pts) {
  auto contains = [&](const Vec& v) {
    return std::binary_search(pts.begin(), pts.end(), v);
  };
  for (const Vec& a : pts) {
    for (const Vec& b : pts) {
      for (int i = 0; i < n; ++i) {
        if (a[static_cast<size_t>(i)] <= b[static_cast<size_t>(i)]) continue;
        bool found = false;
        for (int j = 0; j < n && !found; ++j) {
          if (a[static_cast<size_t>(j)] >= b[static_cast<size_t>(j)]) continue;
          Vec a2 = a;
          a2[static_cast<size_t>(i)] -= 1;
          a2[static_cast<size_t>(j)] += 1;
          if (!contains(a2)) continue;
          Vec b2 = b;
          b2[static_cast<size_t>(i)] += 1;
          b2[static_cast<size_t>(j)] -= 1;
          if (contains(b2)) found = true;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// M-convex set of rank r on ground set [n]: a nonempty antichain-free list of
// lattice points of Delta^r_n closed under the symmetric exchange axiom.
// Bases are kept sorted ascending lexicographically; set equality is list
// equality.
struct MConvexSet {
  int n = 0;
  int r = 0;
  std::vector<Vec> bases;

  bool operator==(const MConvexSet& o) const {
    return n == o.n && r == o.r && bases == o.bases;
  }
  bool operator!=(const MConvexSet& o) const { return !(*this == o); }
  bool operator<(const MConvexSet& o) const {
    if (n != o.n) return n < o.n;
    if (r != o.r) return r < o.r;
    return bases < o.bases;
  }

  bool contains(const Vec& v) const {
    return std::binary_search(bases.begin(), bases.end(), v);
  }
};

namespace detail {

inline void check_points(int n, int r, const std::vector<Vec>& pts) {
  if (n < 0 || r < 0)
    throw Error(ErrorKind::malformed_input, "n and r must be nonnegative");
  if (pts.empty())
    throw Error(ErrorKind::malformed_input, "empty point set");
  for (const Vec& p : pts) {
    if (static_cast<int>(p.size()) != n)
      throw Error(ErrorKind::malformed_input, "point has wrong length");
    if (!nonneg(p))
      throw Error(ErrorKind::malformed_input, "point has a negative entry");
    if (norm(p) != r)
      throw Error(ErrorKind::malformed_input, "point has wrong norm");
  }
}

inline std::vector<Vec> sort_unique(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Construct without the exchange check; for results of operations that are
// M-convex by theorem.
inline MConvexSet make_unchecked(int n, int r, std::vector<Vec> pts) {
  return MConvexSet{n, r, sort_unique(std::move(pts))};
}

}  // namespace detail

inline bool is_m_convex(int n, int r, const std::vector<Vec>& points) {
  detail::check_points(n, r, points);
  return detail::exchange_axiom(n, detail::sort_unique(points));
}

inline MConvexSet make_mconvex(int n, int r, std::vector<Vec> points) {
  detail::check_points(n, r, points);
  auto pts = detail::sort_unique(std::move(points));
  if (!detail::exchange_axiom(n, pts))
    throw Error(ErrorKind::malformed_input, "points violate the exchange axiom");
  return MConvexSet{n, r, std::move(pts)};
}

// The dilated simplex Delta^r_n as an M-convex set.
inline MConvexSet simplex(int n, int r) {
  return detail::make_unchecked(n, r, simplex_points(n, r));
}

struct Invariants {
  Vec dminus;   // componentwise infimum
  Vec dplus;    // componentwise supremum
  Vec delta;    // duality vector dminus + dplus
  Vec omega;    // width dplus - dminus
  int eff_rank = 0;
  MConvexSet reduction;  // J - dminus
};

inline Invariants invariants_of(const MConvexSet& J) {
  Invariants inv;
  inv.dminus = J.bases.front();
  inv.dplus = J.bases.front();
  for (const Vec& b : J.bases) {
    inv.dminus = cmp_inf(inv.dminus, b);
    inv.dplus = cmp_sup(inv.dplus, b);
  }
  inv.delta = add(inv.dminus, inv.dplus);
  inv.omega = sub(inv.dplus, inv.dminus);
  inv.eff_rank = J.r - norm(inv.dminus);
  std::vector<Vec> red;
  red.reserve(J.bases.size());
  for (const Vec& b : J.bases) red.push_back(sub(b, inv.dminus));
  inv.reduction = detail::make_unchecked(J.n, inv.eff_rank, std::move(red));
  return inv;
}

inline MConvexSet translate(const MConvexSet& J, const Vec& tau) {
  std::vector<Vec> pts;
  pts.reserve(J.bases.size());
  for (const Vec& b : J.bases) {
    Vec t = add(b, tau);
    if (!nonneg(t))
      throw Error(ErrorKind::out_of_orthant,
                  "translate leaves the nonnegative orthant");
    pts.push_back(std::move(t));
  }
  return detail::make_unchecked(J.n, J.r + norm(tau), std::move(pts));
}

// J* = delta_J - J, an involution with delta_{J*} = delta_J.
inline MConvexSet dual(const MConvexSet& J) {
  Invariants inv = invariants_of(J);
  std::vector<Vec> pts;
  pts.reserve(J.bases.size());
  for (const Vec& b : J.bases) pts.push_back(sub(inv.delta, b));
  return detail::make_unchecked(J.n, norm(inv.delta) - J.r, std::move(pts));
}

// mu effectively independent: mu <= a - dminus for some basis a.
inline bool is_effectively_independent(const MConvexSet& J, const Vec& mu) {
  Invariants inv = invariants_of(J);
  Vec lo = add(inv.dminus, mu);
  for (const Vec& b : J.bases)
    if (leq(lo, b)) return true;
  return false;
}

inline bool is_effectively_coindependent(const MConvexSet& J, const Vec& nu) {
  Invariants inv = invariants_of(J);
  Vec hi = sub(inv.dplus, nu);
  for (const Vec& b : J.bases)
    if (leq(b, hi)) return true;
  return false;
}

inline MConvexSet contraction(const MConvexSet& J, const Vec& mu) {
  if (!nonneg(mu))
    throw Error(ErrorKind::malformed_input, "contraction vector must be >= 0");
  Invariants inv = invariants_of(J);
  Vec lo = add(inv.dminus, mu);
  std::vector<Vec> pts;
  for (const Vec& b : J.bases)
    if (leq(lo, b)) pts.push_back(sub(b, mu));
  if (pts.empty())
    throw Error(ErrorKind::independence_violation,
                "vector is not effectively independent");
  return detail::make_unchecked(J.n, J.r - norm(mu), std::move(pts));
}

inline MConvexSet deletion(const MConvexSet& J, const Vec& nu) {
  if (!nonneg(nu))
    throw Error(ErrorKind::malformed_input, "deletion vector must be >= 0");
  Invariants inv = invariants_of(J);
  Vec hi = sub(inv.dplus, nu);
  std::vector<Vec> pts;
  for (const Vec& b : J.bases)
    if (leq(b, hi)) pts.push_back(b);
  if (pts.empty())
    throw Error(ErrorKind::independence_violation,
                "vector is not effectively coindependent");
  return detail::make_unchecked(J.n, J.r, std::move(pts));
}

// (J \ nu) / mu + tau together with its embedding a -> a + mu - tau into J.
struct EmbeddedMinor {
  MConvexSet minor;
  Vec nu, mu, tau;

  Vec embed(const Vec& a) const { return sub(add(a, mu), tau); }
};

inline EmbeddedMinor embedded_minor(const MConvexSet& J, const Vec& nu,
                                    const Vec& mu, const Vec& tau) {
  MConvexSet del = deletion(J, nu);
  MConvexSet con = contraction(del, mu);
  MConvexSet res = translate(con, tau);
  EmbeddedMinor em{std::move(res), nu, mu, tau};
  for (const Vec& a : em.minor.bases)
    if (!J.contains(em.embed(a)))
      throw Error(ErrorKind::precondition_violation,
                  "minor embedding does not land in J");
  return em;
}

struct CommuteMinorsResult {
  Vec nu_prime, mu_prime, tau_prime;
};

// Exchange of deletion and contraction:
//   (J \ nu) / mu' = (J / mu) \ nu' + tau'.
// The equality is verified on the instance.
inline CommuteMinorsResult commute_minors(const MConvexSet& J, const Vec& nu,
                                          const Vec& mu) {
  Invariants inv = invariants_of(J);
  Vec lo = add(inv.dminus, mu);
  Vec hi = sub(inv.dplus, nu);
  bool ok = false;
  for (const Vec& b : J.bases)
    if (leq(lo, b) && leq(b, hi)) ok = true;
  if (!ok)
    throw Error(ErrorKind::precondition_violation,
                "no basis between dminus+mu and dplus-nu");

  MConvexSet Jc = contraction(J, mu);
  MConvexSet Jd = deletion(J, nu);
  Invariants invc = invariants_of(Jc);
  Invariants invd = invariants_of(Jd);

  Vec z = zero_vec(J.n);
  CommuteMinorsResult res;
  res.nu_prime = cmp_sup(z, add(sub(nu, inv.dplus), add(invc.dplus, mu)));
  res.mu_prime = cmp_sup(z, add(sub(inv.dminus, invd.dminus), mu));
  res.tau_prime = sub(mu, res.mu_prime);  // = inf{mu, dminus(J\nu) - dminus(J)}

  MConvexSet lhs = contraction(Jd, res.mu_prime);
  MConvexSet rhs = translate(deletion(Jc, res.nu_prime), res.tau_prime);
  if (lhs != rhs)
    throw Error(ErrorKind::precondition_violation,
                "commute_minors identity failed");
  return res;
}

// Shift in (J \ nu)* = J*/nu + shift, validated on the instance.
inline Vec minor_duality_shift(const MConvexSet& J, const Vec& nu) {
  MConvexSet Jd = deletion(J, nu);
  Vec shift = sub(add(invariants_of(Jd).delta, nu), invariants_of(J).delta);
  MConvexSet lhs = dual(Jd);
  MConvexSet rhs = translate(contraction(dual(J), nu), shift);
  if (lhs != rhs)
    throw Error(ErrorKind::precondition_violation,
                "minor duality identity failed");
  return shift;
}

// sigma maps coordinate i of the input to coordinate sigma[i] of the output.
inline MConvexSet permute(const MConvexSet& J, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != J.n)
    throw Error(ErrorKind::malformed_input, "permutation has wrong length");
  std::vector<bool> seen(static_cast<size_t>(J.n), false);
  for (int s : sigma) {
    if (s < 0 || s >= J.n || seen[static_cast<size_t>(s)])
      throw Error(ErrorKind::malformed_input, "not a permutation");
    seen[static_cast<size_t>(s)] = true;
  }
  std::vector<Vec> pts;
  pts.reserve(J.bases.size());
  for (const Vec& b : J.bases) {
    Vec p = zero_vec(J.n);
    for (int i = 0; i < J.n; ++i)
      p[static_cast<size_t>(sigma[static_cast<size_t>(i)])] =
          b[static_cast<size_t>(i)];
    pts.push_back(std::move(p));
  }
  return detail::make_unchecked(J.n, J.r, std::move(pts));
}

inline MConvexSet extend(const MConvexSet& J) {
  std::vector<Vec> pts;
  pts.reserve(J.bases.size());
  for (const Vec& b : J.bases) {
    Vec p(b);
    p.push_back(0);
    pts.push_back(std::move(p));
  }
  return detail::make_unchecked(J.n + 1, J.r, std::move(pts));
}

inline MConvexSet restrict(const MConvexSet& J) {
  if (J.n == 0)
    throw Error(ErrorKind::malformed_input, "cannot restrict empty ground set");
  std::vector<Vec> pts;
  pts.reserve(J.bases.size());
  for (const Vec& b : J.bases) {
    if (b.back() != 0)
      throw Error(ErrorKind::precondition_violation,
                  "last coordinate not identically zero");
    pts.emplace_back(b.begin(), b.end() - 1);
  }
  return detail::make_unchecked(J.n - 1, J.r, std::move(pts));
}

// Reduce, drop width-0 coordinates, then take the lexicographically least
// base list over all coordinate permutations.
inline MConvexSet canonical_form(const MConvexSet& J) {
  Invariants inv = invariants_of(J);
  std::vector<int> keep;
  for (int i = 0; i < J.n; ++i)
    if (inv.omega[static_cast<size_t>(i)] != 0) keep.push_back(i);
  int m = static_cast<int>(keep.size());
  std::vector<Vec> pts;
  pts.reserve(J.bases.size());
  for (const Vec& b : inv.reduction.bases) {
    Vec p(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      p[static_cast<size_t>(i)] = b[static_cast<size_t>(keep[static_cast<size_t>(i)])];
    pts.push_back(std::move(p));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<int> perm(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
  std::vector<Vec> best;
  std::vector<Vec> cand(pts.size(), Vec(static_cast<size_t>(m)));
  do {
    for (size_t k = 0; k < pts.size(); ++k)
      for (int i = 0; i < m; ++i)
        cand[k][static_cast<size_t>(perm[static_cast<size_t>(i)])] =
            pts[k][static_cast<size_t>(i)];
    std::sort(cand.begin(), cand.end());
    if (best.empty() || cand < best) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return detail::make_unchecked(m, inv.eff_rank, std::move(best));
}

inline bool combinatorially_equivalent(const MConvexSet& J1,
                                       const MConvexSet& J2) {
  return canonical_form(J1) == canonical_form(J2);
}

inline MConvexSet direct_sum(const MConvexSet& J1, const MConvexSet& J2) {
  std::vector<Vec> pts;
  pts.reserve(J1.bases.size() * J2.bases.size());
  for (const Vec& a : J1.bases)
    for (const Vec& b : J2.bases) {
      Vec p(a);
      p.insert(p.end(), b.begin(), b.end());
      pts.push_back(std::move(p));
    }
  return detail::make_unchecked(J1.n + J2.n, J1.r + J2.r, std::move(pts));
}

struct Decomposition {
  std::vector<MConvexSet> components;       // ordered by their blocks
  std::vector<std::vector<int>> blocks;     // partition of [n], by min index

  int count() const { return static_cast<int>(components.size()); }
};

// Minimal coordinate sets on which every basis has constant sum. n is
// desk-scale, so the 2^n scan is fine.
inline Decomposition decompose(const MConvexSet& J) {
  Decomposition dec;
  int n = J.n;
  if (n == 0) {
    dec.components.push_back(J);
    dec.blocks.push_back({});
    return dec;
  }
  if (n > 20)
    throw Error(ErrorKind::size_guard, "decompose limited to n <= 20");
  auto is_summand = [&](uint32_t mask) {
    int want = -1;
    for (const Vec& b : J.bases) {
      int s = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s += b[static_cast<size_t>(i)];
      if (want < 0) want = s;
      if (s != want) return false;
    }
    return true;
  };
  std::vector<uint32_t> atoms;
  uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    uint32_t atom = full;
    for (uint32_t mask = 1; mask <= full; ++mask) {
      if (!(mask & (1u << i))) continue;
      if ((atom & mask) == atom) continue;
      if (is_summand(mask)) atom &= mask;
    }
    atoms.push_back(atom);
    for (int j = 0; j < n; ++j)
      if (atom & (1u << j)) used[static_cast<size_t>(j)] = true;
  }
  std::sort(atoms.begin(), atoms.end(), [](uint32_t a, uint32_t b) {
    return __builtin_ctz(a) < __builtin_ctz(b);  // blocks are disjoint
  });
  for (uint32_t atom : atoms) {
    std::vector<int> block;
    for (int i = 0; i < n; ++i)
      if (atom & (1u << i)) block.push_back(i);
    std::vector<Vec> proj;
    for (const Vec& b : J.bases) {
      Vec p;
      p.reserve(block.size());
      for (int i : block) p.push_back(b[static_cast<size_t>(i)]);
      proj.push_back(std::move(p));
    }
    std::sort(proj.begin(), proj.end());
    proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
    int rk = norm(proj.front());
    dec.components.push_back(detail::make_unchecked(
        static_cast<int>(block.size()), rk, std::move(proj)));
    dec.blocks.push_back(std::move(block));
  }
  return dec;
}

// Rank function values max{ a_S : a in J } for all S, indexed by bitmask.
struct RankFunction {
  int n = 0;
  std::vector<int> values;  // size 2^n

  int operator()(uint32_t mask) const { return values[mask]; }
};

inline RankFunction rank_function(const MConvexSet& J) {
  RankFunction rf;
  rf.n = J.n;
  rf.values.assign(size_t{1} << J.n, 0);
  for (uint32_t mask = 0; mask < (uint32_t{1} << J.n); ++mask) {
    int best = 0;
    for (const Vec& b : J.bases) {
      int s = 0;
      for (int i = 0; i < J.n; ++i)
        if (mask & (1u << i)) s += b[static_cast<size_t>(i)];
      best = std::max(best, s);
    }
    rf.values[mask] = best;
  }
  return rf;
}

namespace detail {

// Reindex a subset of [n]-{i} to [n-1] by closing the gap at i.
inline uint32_t drop_index(uint32_t mask, int i) {
  uint32_t low = mask & ((1u << i) - 1);
  uint32_t high = mask >> (i + 1);
  return low | (high << i);
}

}  // namespace detail

// Whittle's single-element deletion of rank functions: r\i(S) = r(S).
inline RankFunction whittle_delete(const RankFunction& r, int i) {
  if (i < 0 || i >= r.n)
    throw Error(ErrorKind::malformed_input, "element out of range");
  RankFunction out;
  out.n = r.n - 1;
  out.values.assign(size_t{1} << out.n, 0);
  for (uint32_t mask = 0; mask < (uint32_t{1} << r.n); ++mask) {
    if (mask & (1u << i)) continue;
    out.values[detail::drop_index(mask, i)] = r.values[mask];
  }
  return out;
}

// Whittle's single-element contraction: r/i(S) = r(S + i) - r({i}).
inline RankFunction whittle_contract(const RankFunction& r, int i) {
  if (i < 0 || i >= r.n)
    throw Error(ErrorKind::malformed_input, "element out of range");
  RankFunction out;
  out.n = r.n - 1;
  out.values.assign(size_t{1} << out.n, 0);
  int ri = r.values[1u << i];
  for (uint32_t mask = 0; mask < (uint32_t{1} << r.n); ++mask) {
    if (mask & (1u << i)) continue;
    out.values[detail::drop_index(mask, i)] = r.values[mask | (1u << i)] - ri;
  }
  return out;
}

inline bool is_matroid_translate(const MConvexSet& J) {
  Invariants inv = invariants_of(J);
  return std::all_of(inv.omega.begin(), inv.omega.end(),
                     [](int w) { return w <= 1; });
}

inline bool is_proper(const MConvexSet& J) { return !is_matroid_translate(J); }

constexpr int kDefaultEnumerationGuard = 22;

// All nonempty M-convex subsets of Delta^r_n by brute-force filtering.
inline std::vector<MConvexSet> enumerate_mconvex(
    int n, int r, int guard = kDefaultEnumerationGuard) {
  std::vector<Vec> pts = simplex_points(n, r);
  if (static_cast<int>(pts.size()) > guard)
    throw Error(ErrorKind::size_guard,
                "|Delta^r_n| = " + std::to_string(pts.size()) +
                    " exceeds the enumeration guard " + std::to_string(guard));
  std::vector<MConvexSet> out;
  uint64_t total = uint64_t{1} << pts.size();
  for (uint64_t mask = 1; mask < total; ++mask) {
    std::vector<Vec> sub;
    for (size_t k = 0; k < pts.size(); ++k)
      if (mask & (uint64_t{1} << k)) sub.push_back(pts[k]);
    if (detail::exchange_axiom(n, sub))
      out.push_back(MConvexSet{n, r, std::move(sub)});
  }
  return out;
}

}  // namespace polytract
