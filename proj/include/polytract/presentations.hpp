#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polytract/plucker.hpp"
#include "polytract/snf.hpp"

namespace polytract {

// Finitely presented abelian group backing the unit group of the extended
// universal pasture (3-term relations) or the extended universal tract (all
// degenerate relations). Generator 0 is g_{-1}; generators 1.. are x_beta
// for the reduced bases in ascending order.
struct AbelianPresentation {
  std::vector<Vec> points;  // x-generator labels, sorted
  IntMat relations;         // rows in generator exponents
  std::vector<std::string> provenance;  // one entry per relation row
  std::map<Vec, size_t> column;         // point -> column index (>= 1)

  size_t width() const { return 1 + points.size(); }

  IntRow zero_row() const { return IntRow(width(), 0); }
};

// Total degree (x_beta -> 1) and multidegree (x_beta -> beta) gradings.
struct GradedPresentation : AbelianPresentation {
  int n = 0;  // ambient coordinates for the multidegree

  // columns of the grading matrix: one for total degree, n for multidegree
  IntMat degree_matrix() const {
    IntMat W(width(), IntRow(1, 0));
    for (size_t g = 0; g < points.size(); ++g) W[1 + g][0] = 1;
    return W;
  }
  // total degree alongside the multidegree: the torus in the rescaling
  // action is the extended one, so the foundation sits in the kernel of
  // both gradings (they coincide once the effective rank is positive)
  IntMat multidegree_matrix() const {
    IntMat W(width(), IntRow(static_cast<size_t>(n) + 1, 0));
    for (size_t g = 0; g < points.size(); ++g) {
      W[1 + g][0] = 1;
      for (int i = 0; i < n; ++i)
        W[1 + g][static_cast<size_t>(i) + 1] = points[g][static_cast<size_t>(i)];
    }
    return W;
  }
};

namespace detail {

inline std::string vec_label(const Vec& v) {
  std::string s = "x[";
  for (size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

inline GradedPresentation presentation_skeleton(const MConvexSet& J) {
  GradedPresentation pres;
  pres.n = J.n;
  Invariants inv = invariants_of(J);
  pres.points = inv.reduction.bases;
  for (size_t g = 0; g < pres.points.size(); ++g)
    pres.column.emplace(pres.points[g], 1 + g);

  IntRow two = pres.zero_row();
  two[0] = 2;
  pres.relations.push_back(two);
  pres.provenance.push_back("2g");

  bool repeated = false;
  for (const Vec& b : pres.points)
    for (int x : b)
      if (x >= 2) repeated = true;
  if (repeated) {
    IntRow one = pres.zero_row();
    one[0] = 1;
    pres.relations.push_back(one);
    pres.provenance.push_back("alternation");
  }
  return pres;
}

inline IntRow degenerate_row(const GradedPresentation& pres,
                             const DegenerateRelation& d) {
  IntRow row = pres.zero_row();
  row[pres.column.at(d.b1)] += 1;
  row[pres.column.at(d.g1)] += 1;
  row[pres.column.at(d.b2)] -= 1;
  row[pres.column.at(d.g2)] -= 1;
  row[0] += d.sign_bit;
  return row;
}

}  // namespace detail

// Presents the unit group of the extended universal pasture: generators
// g_{-1} and x_beta, relations 2g, the alternation relation g = 0 when some
// reduced basis has a repeated coordinate, and one row per degenerate
// 3-term Pluecker relation.
inline GradedPresentation pasture_presentation(const MConvexSet& J) {
  GradedPresentation pres = detail::presentation_skeleton(J);
  for (const auto& d : degenerate_relations(J)) {
    pres.relations.push_back(detail::degenerate_row(pres, d));
    pres.provenance.push_back("degenerate " + relation_to_string(detail::build_relation(
                                  invariants_of(J).reduction, d.index.s,
                                  d.index.alpha, d.index.i, d.index.j)));
  }
  return pres;
}

// Same, with the degenerate relations of every arity (the extended
// universal tract).
inline GradedPresentation tract_presentation(const MConvexSet& J) {
  GradedPresentation pres = detail::presentation_skeleton(J);
  for (const auto& d : degenerate_full_relations(J)) {
    pres.relations.push_back(detail::degenerate_row(pres, d));
    pres.provenance.push_back("degenerate s=" + std::to_string(d.index.s));
  }
  return pres;
}

struct GroupAnalysis {
  int free_rank = 0;
  std::vector<mpz_class> invariant_factors;  // the factors > 1
  enum class MinusOne { order_two, trivial };
  MinusOne minus_one = MinusOne::order_two;
};

// Analysis of the full presented group.
inline GroupAnalysis analyze_group(const AbelianPresentation& pres) {
  GroupAnalysis out;
  SmithResult snf = smith_normal_form(pres.relations);
  out.free_rank = static_cast<int>(pres.width()) - snf.rank;
  out.invariant_factors = snf.invariant_factors();
  IntRow g = pres.zero_row();
  g[0] = 1;
  out.minus_one = in_row_lattice(hermite_normal_form(pres.relations), g)
                      ? GroupAnalysis::MinusOne::trivial
                      : GroupAnalysis::MinusOne::order_two;
  return out;
}

namespace detail {

// Analysis of the grading-kernel subgroup: pull the relation lattice back
// through a basis of { v : v W = 0 } and read off the induced presentation.
inline GroupAnalysis analyze_graded_kernel(const AbelianPresentation& pres,
                                           const IntMat& W) {
  IntMat K = left_kernel_basis(W);
  IntMat induced;
  for (const auto& row : pres.relations) {
    auto coeff = solve_in_row_basis(K, row);
    if (!coeff)
      throw Error(ErrorKind::precondition_violation,
                  "relation row outside the grading kernel");
    induced.push_back(*coeff);
  }
  GroupAnalysis out;
  SmithResult snf = smith_normal_form(induced);
  out.free_rank = static_cast<int>(K.size()) - snf.rank;
  out.invariant_factors = snf.invariant_factors();
  IntRow g(pres.width(), 0);
  g[0] = 1;
  auto gk = solve_in_row_basis(K, g);
  if (!gk)
    throw Error(ErrorKind::precondition_violation, "g outside grading kernel");
  out.minus_one = in_row_lattice(hermite_normal_form(induced), *gk)
                      ? GroupAnalysis::MinusOne::trivial
                      : GroupAnalysis::MinusOne::order_two;
  return out;
}

}  // namespace detail

// The Tutte group P_J^x: the total-degree-0 subgroup of the extended
// universal pasture.
inline GroupAnalysis tutte_group(const MConvexSet& J) {
  GradedPresentation pres = pasture_presentation(J);
  return detail::analyze_graded_kernel(pres, pres.degree_matrix());
}

// tau(J) = rk P_J^x = rk of the extended pasture minus one.
inline int tutte_rank(const MConvexSet& J) {
  GradedPresentation pres = pasture_presentation(J);
  int full = analyze_group(pres).free_rank;
  int sub = detail::analyze_graded_kernel(pres, pres.degree_matrix()).free_rank;
  if (sub != full - 1)
    throw Error(ErrorKind::precondition_violation,
                "degree-0 subgroup rank mismatch");
  return sub;
}

// The foundation unit group F_J^x: the multidegree-0 subgroup.
inline GroupAnalysis foundation_unit_group(const MConvexSet& J) {
  GradedPresentation pres = pasture_presentation(J);
  return detail::analyze_graded_kernel(pres, pres.multidegree_matrix());
}

// Exponent vector of a cross ratio symbol in the presentation, including
// its tuple-sign contribution to g_{-1} on matroid translates.
inline IntRow cross_ratio_exponents(const GradedPresentation& pres,
                                    const MConvexSet& reduction,
                                    const CrossTuple& w) {
  IntRow row(pres.width(), 0);
  int n = static_cast<int>(pres.n);
  auto pt = [&](int a, int b) {
    return add(w.alpha, add(unit_vec(n, a), unit_vec(n, b)));
  };
  row[pres.column.at(pt(w.i, w.k))] += 1;
  row[pres.column.at(pt(w.j, w.l))] += 1;
  row[pres.column.at(pt(w.i, w.l))] -= 1;
  row[pres.column.at(pt(w.j, w.k))] -= 1;
  row[0] += detail::cross_tuple_parity(reduction, w);
  return row;
}

struct CrossRatioCatalog {
  std::vector<CrossTuple> omega;        // canonical symbols
  std::vector<size_t> nondegenerate;    // indices into omega
  std::vector<size_t> degenerate;       // indices into omega
  IntMat exponents;                     // one row per symbol
};

inline CrossRatioCatalog enumerate_cross_ratios(const MConvexSet& J) {
  CrossRatioCatalog cat;
  GradedPresentation pres = pasture_presentation(J);
  MConvexSet red = invariants_of(J).reduction;
  cat.omega = enumerate_omega(J);
  for (size_t t = 0; t < cat.omega.size(); ++t) {
    (cat.omega[t].degenerate ? cat.degenerate : cat.nondegenerate).push_back(t);
    cat.exponents.push_back(cross_ratio_exponents(pres, red, cat.omega[t]));
  }
  return cat;
}

// Comparison theorem check: every degenerate relation of any arity lies in
// the lattice generated by the pasture relations, so the universal pasture
// and the universal tract present the same group.
inline bool verify_bijection_theorem(const MConvexSet& J) {
  GradedPresentation pasture = pasture_presentation(J);
  HermiteResult h = hermite_normal_form(pasture.relations);
  for (const auto& d : degenerate_full_relations(J))
    if (!in_row_lattice(h, detail::degenerate_row(pasture, d))) return false;
  return true;
}

// The cross ratios (together with -1) generate the multidegree-0 subgroup:
// the lattice spanned by their exponent vectors, g, and the relation rows
// equals the full multidegree-0 kernel lattice.
inline bool verify_cross_ratios_generate(const MConvexSet& J) {
  GradedPresentation pres = pasture_presentation(J);
  MConvexSet red = invariants_of(J).reduction;
  IntMat gens = pres.relations;
  IntRow g = pres.zero_row();
  g[0] = 1;
  gens.push_back(g);
  for (const CrossTuple& w : enumerate_omega(J))
    gens.push_back(cross_ratio_exponents(pres, red, w));
  IntMat kernel = left_kernel_basis(pres.multidegree_matrix());
  return lattices_equal(gens, kernel, pres.width());
}

struct CrossRatioReport {
  long symmetry_checked = 0, symmetry_failed = 0;     // (CR-sigma)
  long cr0_checked = 0, cr0_failed = 0;
  long cr1_checked = 0, cr1_failed = 0;
  long cr2_checked = 0, cr2_failed = 0;
  long cr3_checked = 0, cr3_failed = 0;
  long cr4_checked = 0, cr4_failed = 0;
  long cr5_checked = 0, cr5_failed = 0;
  bool witness_checked = false;  // (CR-)/(CR+) via idempotency witnesses

  bool ok() const {
    return symmetry_failed + cr0_failed + cr1_failed + cr2_failed +
               cr3_failed + cr4_failed + cr5_failed ==
           0;
  }
};

namespace detail {

struct OmegaContext {
  GradedPresentation pres;
  MConvexSet red;
  Vec omega_bound;
  int eff_rank = 0;
  HermiteResult rel_lattice;

  bool in_omega(const Vec& alpha, int i, int j, int k, int l) const {
    int n = static_cast<int>(red.n);
    auto pt = [&](int a, int b) {
      return add(alpha, add(unit_vec(n, a), unit_vec(n, b)));
    };
    return red.contains(pt(i, k)) && red.contains(pt(i, l)) &&
           red.contains(pt(j, k)) && red.contains(pt(j, l));
  }
  bool nondeg(const Vec& alpha, int i, int j, int k, int l) const {
    int n = static_cast<int>(red.n);
    auto pt = [&](int a, int b) {
      return add(alpha, add(unit_vec(n, a), unit_vec(n, b)));
    };
    return in_omega(alpha, i, j, k, l) && red.contains(pt(i, j)) &&
           red.contains(pt(k, l));
  }
  IntRow vec(const Vec& alpha, int i, int j, int k, int l) const {
    return cross_ratio_exponents(pres, red, CrossTuple{alpha, i, j, k, l, false});
  }
  bool is_identity(const IntRow& row) const {
    return in_row_lattice(rel_lattice, row);
  }
};

inline IntRow row_sum(const IntRow& a, const IntRow& b) {
  IntRow c(a);
  for (size_t t = 0; t < c.size(); ++t) c[t] += b[t];
  return c;
}

inline IntRow row_diff(const IntRow& a, const IntRow& b) {
  IntRow c(a);
  for (size_t t = 0; t < c.size(); ++t) c[t] -= b[t];
  return c;
}

}  // namespace detail

// Instance scan of the multiplicative relations between cross ratios,
// evaluated in the presented group.
inline CrossRatioReport verify_cross_ratio_relations(const MConvexSet& J) {
  CrossRatioReport rep;
  detail::OmegaContext ctx{pasture_presentation(J), invariants_of(J).reduction,
                           invariants_of(J).omega, invariants_of(J).eff_rank,
                           {}};
  ctx.rel_lattice = hermite_normal_form(ctx.pres.relations);
  int n = J.n;
  if (ctx.eff_rank < 2) return rep;

  IntRow g = ctx.pres.zero_row();
  g[0] = 1;

  for (const Vec& alpha : bounded_points(ctx.omega_bound, ctx.eff_rank - 2)) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            if (k == l) continue;
            if (!ctx.in_omega(alpha, i, j, k, l)) continue;
            bool nd = ctx.nondeg(alpha, i, j, k, l);
            IntRow v = ctx.vec(alpha, i, j, k, l);

            if (nd) {
              // (CR-sigma): the symmetric tuples are in Omega and give the
              // same element
              std::array<std::array<int, 4>, 3> syms = {
                  {{k, l, i, j}, {j, i, l, k}, {l, k, j, i}}};
              for (const auto& s : syms) {
                ++rep.symmetry_checked;
                if (!ctx.nondeg(alpha, s[0], s[1], s[2], s[3]) ||
                    !ctx.is_identity(detail::row_diff(
                        v, ctx.vec(alpha, s[0], s[1], s[2], s[3]))))
                  ++rep.symmetry_failed;
              }
              // (CR1) <ij|kl> <ij|lk> = 1
              ++rep.cr1_checked;
              if (!ctx.is_identity(
                      detail::row_sum(v, ctx.vec(alpha, i, j, l, k))))
                ++rep.cr1_failed;
              // (CR2) <ij|kl> <ik|lj> <il|jk> = -1
              ++rep.cr2_checked;
              IntRow prod = detail::row_sum(
                  detail::row_sum(v, ctx.vec(alpha, i, k, l, j)),
                  ctx.vec(alpha, i, l, j, k));
              if (!ctx.is_identity(detail::row_diff(prod, g)))
                ++rep.cr2_failed;
            } else {
              // (CR0): degenerate cross ratios are 1 (up to g when signs
              // are meaningful)
              ++rep.cr0_checked;
              if (!ctx.is_identity(v) &&
                  !ctx.is_identity(detail::row_diff(v, g)))
                ++rep.cr0_failed;
            }

            // (CR3): product over cyclic shifts of (k, l, m)
            for (int m = 0; m < n; ++m) {
              if (m == k || m == l) continue;
              if (!ctx.in_omega(alpha, i, j, l, m) ||
                  !ctx.in_omega(alpha, i, j, m, k))
                continue;
              ++rep.cr3_checked;
              IntRow prod = detail::row_sum(
                  detail::row_sum(v, ctx.vec(alpha, i, j, l, m)),
                  ctx.vec(alpha, i, j, m, k));
              if (!ctx.is_identity(prod)) ++rep.cr3_failed;
            }
          }
      }
  }

  // (CR4) and (CR5) range over alpha of norm eff_rank - 3
  if (ctx.eff_rank >= 3) {
    for (const Vec& alpha : bounded_points(ctx.omega_bound, ctx.eff_rank - 3)) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              if (k == l) continue;
              for (int m = 0; m < n; ++m) {
                Vec am = add(alpha, unit_vec(n, m));
                Vec ak = add(alpha, unit_vec(n, k));
                Vec al = add(alpha, unit_vec(n, l));
                if (ctx.in_omega(am, i, j, k, l) &&
                    ctx.in_omega(ak, i, j, l, m) &&
                    ctx.in_omega(al, i, j, m, k)) {
                  ++rep.cr4_checked;
                  IntRow prod = detail::row_sum(
                      detail::row_sum(ctx.vec(am, i, j, k, l),
                                       ctx.vec(ak, i, j, l, m)),
                      ctx.vec(al, i, j, m, k));
                  if (!ctx.is_identity(prod)) ++rep.cr4_failed;
                }
              }
              // (CR5)
              for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                  if (p == q) continue;
                  Vec ap = add(alpha, unit_vec(n, p));
                  Vec aq = add(alpha, unit_vec(n, q));
                  Vec ai = add(alpha, unit_vec(n, i));
                  Vec aj = add(alpha, unit_vec(n, j));
                  if (!ctx.nondeg(ap, i, j, k, l) ||
                      !ctx.nondeg(aq, i, j, k, l))
                    continue;
                  if (!ctx.in_omega(ai, k, l, p, q) ||
                      ctx.nondeg(ai, k, l, p, q))
                    continue;
                  if (!ctx.in_omega(aj, k, l, p, q) ||
                      ctx.nondeg(aj, k, l, p, q))
                    continue;
                  ++rep.cr5_checked;
                  if (!ctx.is_identity(detail::row_diff(
                          ctx.vec(ap, i, j, k, l), ctx.vec(aq, i, j, k, l))))
                    ++rep.cr5_failed;
                }
            }
        }
    }
  }
  rep.witness_checked = true;
  return rep;
}

// rk P_J^x = rk F_J^x + n - c(J).
inline bool rank_formula_check(const MConvexSet& J) {
  int lhs = tutte_group(J).free_rank;
  int rhs = foundation_unit_group(J).free_rank + J.n - decompose(J).count();
  return lhs == rhs;
}

struct IdempotencyWitness {
  PluckerIndex index;
  bool one_one_one = false;  // three equal nonzero terms (1+1+1), else 1+1+x
};

// Searches the bounded 3-term relations for an instance normalizing to
// 1+1+x (a repeated nonzero monomial among three nonzero terms) or to
// 1+1+1 (all three equal). Matroid translates admit none.
inline std::optional<IdempotencyWitness> idempotency_witness(
    const MConvexSet& J) {
  std::optional<IdempotencyWitness> found;
  for (const auto& rel : enumerate_relations(J, RelationKind::three_term)) {
    if (rel.nonzero_count() != 3) continue;
    std::vector<std::pair<Vec, Vec>> monos;
    for (const auto& t : rel.terms)
      if (t.nonzero) {
        Vec b = t.beta, g = t.gamma;
        if (g < b) std::swap(b, g);
        monos.emplace_back(b, g);
      }
    bool all_eq = monos[0] == monos[1] && monos[1] == monos[2];
    bool some_eq =
        monos[0] == monos[1] || monos[1] == monos[2] || monos[0] == monos[2];
    if (all_eq) return IdempotencyWitness{rel.index, true};
    if (some_eq && !found) found = IdempotencyWitness{rel.index, false};
  }
  return found;
}

}  // namespace polytract
