#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "polytract/representations.hpp"

namespace polytract {

// Labeling of the hive triangle, coordinatized by Delta^r_3 with (r,0,0)
// the lower-left corner, (0,r,0) the lower-right corner, (0,0,r) the top.
struct HiveLabeling {
  int r = 0;
  std::map<Vec, mpq_class> labels;

  const mpq_class& at(const Vec& v) const {
    auto it = labels.find(v);
    if (it == labels.end())
      throw Error(ErrorKind::malformed_input, "missing hive label");
    return it->second;
  }
};

struct Rhombus {
  std::array<Vec, 2> obtuse;  // the shared-edge endpoints
  std::array<Vec, 2> acute;
};

// All rhombi of the r-th hive triangle: one per (alpha, i) with alpha of
// norm r-2, pairing the small triangles across the edge opposite to i.
// Count 3 r (r-1) / 2.
inline std::vector<Rhombus> rhombus_inequalities(int r) {
  if (r < 1) throw Error(ErrorKind::malformed_input, "hive order must be >= 1");
  std::vector<Rhombus> out;
  for (const Vec& alpha : simplex_points(3, r - 2))
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      Rhombus rh;
      rh.obtuse = {add(alpha, add(unit_vec(3, i), unit_vec(3, j))),
                   add(alpha, add(unit_vec(3, i), unit_vec(3, k)))};
      rh.acute = {add(alpha, scale(2, unit_vec(3, i))),
                  add(alpha, add(unit_vec(3, j), unit_vec(3, k)))};
      out.push_back(std::move(rh));
    }
  return out;
}

inline bool is_hive(const HiveLabeling& h) {
  for (const Vec& v : simplex_points(3, h.r)) h.at(v);  // totality
  for (const Rhombus& rh : rhombus_inequalities(h.r)) {
    mpq_class obtuse = h.at(rh.obtuse[0]) + h.at(rh.obtuse[1]);
    mpq_class acute = h.at(rh.acute[0]) + h.at(rh.acute[1]);
    if (obtuse < acute) return false;
  }
  return true;
}

// Weakly decreasing nonnegative integer partitions with at most r parts.
struct PartitionTriple {
  std::vector<int> lambda, mu, nu;
};

namespace detail {

inline void check_partition(const std::vector<int>& p, int r) {
  if (static_cast<int>(p.size()) > r)
    throw Error(ErrorKind::malformed_input, "partition has too many parts");
  for (size_t t = 0; t < p.size(); ++t) {
    if (p[t] < 0)
      throw Error(ErrorKind::malformed_input, "negative partition part");
    if (t + 1 < p.size() && p[t] < p[t + 1])
      throw Error(ErrorKind::malformed_input, "partition not weakly decreasing");
  }
}

inline int part(const std::vector<int>& p, int k) {  // 1-based, 0 beyond
  return (k >= 1 && k <= static_cast<int>(p.size())) ? p[static_cast<size_t>(k - 1)]
                                                     : 0;
}

inline int weight(const std::vector<int>& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

}  // namespace detail

// The border assignment for a triple (lambda, mu, nu): top corner 0, the
// right edge carries partial sums of lambda, the left edge of nu, and the
// bottom edge |lambda|, |lambda|+mu_1, ..., |nu|.
inline HiveLabeling border_labels(const PartitionTriple& t, int r) {
  detail::check_partition(t.lambda, r);
  detail::check_partition(t.mu, r);
  detail::check_partition(t.nu, r);
  if (detail::weight(t.nu) != detail::weight(t.lambda) + detail::weight(t.mu))
    throw Error(ErrorKind::malformed_input, "|nu| != |lambda| + |mu|");
  HiveLabeling h;
  h.r = r;
  int acc = 0;
  h.labels[{0, 0, r}] = 0;
  for (int k = 1; k <= r; ++k) {
    acc += detail::part(t.nu, k);
    h.labels[{k, 0, r - k}] = acc;  // left edge
  }
  acc = 0;
  for (int k = 1; k <= r; ++k) {
    acc += detail::part(t.lambda, k);
    h.labels[{0, k, r - k}] = acc;  // right edge
  }
  acc = detail::weight(t.lambda);
  for (int k = 1; k <= r; ++k) {
    acc += detail::part(t.mu, k);
    h.labels[{k, r - k, 0}] = acc;  // bottom edge
  }
  return h;
}

// Counts integral hives with the given border by DFS over the interior
// vertices, row by row from the top; rhombi whose other vertices are
// already fixed supply integer bounds for each new vertex.
inline int lr_coefficient(const PartitionTriple& t, int r,
                          std::vector<HiveLabeling>* hives_out = nullptr) {
  HiveLabeling border = border_labels(t, r);
  std::vector<Rhombus> rhombi = rhombus_inequalities(r);

  // interior vertices ordered rows top to bottom, left to right
  std::vector<Vec> interior;
  for (int c = r - 2; c >= 1; --c)
    for (int b = 1; b <= r - 1 - c; ++b) interior.push_back(Vec{r - b - c, b, c});

  std::map<Vec, int> order;  // assignment position; border = -1
  for (size_t idx = 0; idx < interior.size(); ++idx)
    order.emplace(interior[idx], static_cast<int>(idx));

  // border-only rhombi are checked upfront
  auto assigned_before = [&](const Vec& v, int step) {
    auto it = order.find(v);
    return it == order.end() || it->second < step;
  };
  for (const Rhombus& rh : rhombi) {
    bool all_border = true;
    for (const Vec* v : {&rh.obtuse[0], &rh.obtuse[1], &rh.acute[0], &rh.acute[1]})
      all_border = all_border && !order.count(*v);
    if (all_border) {
      mpq_class ob = border.at(rh.obtuse[0]) + border.at(rh.obtuse[1]);
      mpq_class ac = border.at(rh.acute[0]) + border.at(rh.acute[1]);
      if (ob < ac) return 0;
    }
  }

  // for each interior vertex, the rhombi that become fully assigned there
  std::vector<std::vector<const Rhombus*>> closing(interior.size());
  for (const Rhombus& rh : rhombi) {
    int last = -1;
    for (const Vec* v : {&rh.obtuse[0], &rh.obtuse[1], &rh.acute[0], &rh.acute[1]}) {
      auto it = order.find(*v);
      if (it != order.end()) last = std::max(last, it->second);
    }
    if (last >= 0) closing[static_cast<size_t>(last)].push_back(&rh);
  }

  std::map<Vec, mpq_class> value = border.labels;
  int count = 0;
  std::function<void(size_t)> dfs = [&](size_t step) {
    if (step == interior.size()) {
      ++count;
      if (hives_out) hives_out->push_back(HiveLabeling{r, value});
      return;
    }
    const Vec& v = interior[step];
    std::optional<mpq_class> lo, hi;
    for (const Rhombus* rh : closing[step]) {
      // bound contributed by this rhombus, with v its last vertex
      auto val = [&](const Vec& w) { return value.at(w); };
      if (rh->obtuse[0] == v || rh->obtuse[1] == v) {
        const Vec& other = (rh->obtuse[0] == v) ? rh->obtuse[1] : rh->obtuse[0];
        mpq_class bound = val(rh->acute[0]) + val(rh->acute[1]) - val(other);
        if (!lo || bound > *lo) lo = bound;
      } else {
        const Vec& other = (rh->acute[0] == v) ? rh->acute[1] : rh->acute[0];
        mpq_class bound = val(rh->obtuse[0]) + val(rh->obtuse[1]) - val(other);
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (!lo || !hi) return;  // unreachable for interior vertices
    mpz_class lo_i, hi_i;
    mpz_cdiv_q(lo_i.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    mpz_fdiv_q(hi_i.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
    for (mpz_class x = lo_i; x <= hi_i; ++x) {
      value[v] = mpq_class(x);
      dfs(step + 1);
    }
    value.erase(v);
  };
  dfs(0);
  return count;
}

// A hive is exactly the log of a T0-representation of Delta^r_3 (an
// integral hive over the discrete tropical tract).
inline Representation hive_to_representation(const HiveLabeling& h,
                                             TractId tract = TractId::T0) {
  if (tract != TractId::T0 && tract != TractId::T0Z)
    throw Error(ErrorKind::malformed_input, "hives live over t0 or t0z");
  std::map<Vec, TractElement> vals;
  for (const Vec& v : simplex_points(3, h.r))
    vals.emplace(v, TractElement::tropical(tract, h.at(v)));
  return Representation{simplex(3, h.r), tract, std::move(vals)};
}

inline HiveLabeling representation_to_hive(const Representation& rho) {
  if (rho.tract != TractId::T0 && rho.tract != TractId::T0Z)
    throw Error(ErrorKind::malformed_input, "hives live over t0 or t0z");
  if (rho.J != simplex(3, rho.J.r))
    throw Error(ErrorKind::support_mismatch, "support must be all of Delta^r_3");
  HiveLabeling h;
  h.r = rho.J.r;
  for (const auto& [p, v] : rho.values) h.labels.emplace(p, v.q);
  return h;
}

// Independent Littlewood-Richardson oracle: skew semistandard tableaux of
// shape nu/lambda and content mu whose reverse reading word is a lattice
// word. Cells are filled in reading order (rows top to bottom, right to
// left) so the lattice condition prunes as it goes.
inline int lr_tableau_oracle(const PartitionTriple& t) {
  int rows = static_cast<int>(t.nu.size());
  detail::check_partition(t.lambda, static_cast<int>(t.lambda.size()));
  detail::check_partition(t.mu, static_cast<int>(t.mu.size()));
  detail::check_partition(t.nu, rows);
  if (detail::weight(t.nu) != detail::weight(t.lambda) + detail::weight(t.mu))
    throw Error(ErrorKind::malformed_input, "|nu| != |lambda| + |mu|");
  int most = std::max(rows, static_cast<int>(t.lambda.size()));
  for (int i = 1; i <= most; ++i)
    if (detail::part(t.lambda, i) > detail::part(t.nu, i)) return 0;

  int m = static_cast<int>(t.mu.size());
  // empty content: lambda is contained in nu with equal weight, so nu = lambda
  if (detail::weight(t.mu) == 0) return 1;

  // reading order cell list
  struct Cell {
    int row, col;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < rows; ++i)
    for (int c = detail::part(t.nu, i + 1) - 1; c >= detail::part(t.lambda, i + 1);
         --c)
      cells.push_back({i, c});

  std::map<std::pair<int, int>, int> filled;
  std::vector<int> used(static_cast<size_t>(m) + 1, 0);
  int count = 0;
  std::function<void(size_t)> dfs = [&](size_t idx) {
    if (idx == cells.size()) {
      for (int v = 1; v <= m; ++v)
        if (used[static_cast<size_t>(v)] != detail::part(t.mu, v)) return;
      ++count;
      return;
    }
    const Cell& cell = cells[idx];
    for (int v = 1; v <= m; ++v) {
      if (used[static_cast<size_t>(v)] >= detail::part(t.mu, v)) continue;
      // lattice word: after reading, #v <= #(v-1)
      if (v > 1 && used[static_cast<size_t>(v)] + 1 > used[static_cast<size_t>(v) - 1])
        continue;
      // row weakly increasing left to right: the right neighbour was filled
      auto right = filled.find({cell.row, cell.col + 1});
      if (right != filled.end() && v > right->second) continue;
      // column strictly increasing downward: the cell above
      auto above = filled.find({cell.row - 1, cell.col});
      if (above != filled.end() && v <= above->second) continue;
      // the cell below may already be filled only in lower rows; reading
      // order fills top rows first, so check when we are above it
      filled[{cell.row, cell.col}] = v;
      used[static_cast<size_t>(v)] += 1;
      dfs(idx + 1);
      used[static_cast<size_t>(v)] -= 1;
      filled.erase({cell.row, cell.col});
    }
  };
  dfs(0);
  return count;
}

}  // namespace polytract
