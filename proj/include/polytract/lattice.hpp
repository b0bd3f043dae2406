#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "polytract/errors.hpp"

namespace polytract {

// A lattice point with signed integer entries. Length = ground-set size n.
// Negative entries are allowed (translation offsets, duality vectors).
using Vec = std::vector<int>;

inline int norm(const Vec& v) { return std::accumulate(v.begin(), v.end(), 0); }

inline Vec zero_vec(int n) { return Vec(static_cast<size_t>(n), 0); }

inline Vec unit_vec(int n, int i) {
  Vec v = zero_vec(n);
  v[static_cast<size_t>(i)] += 1;
  return v;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

inline Vec negate(const Vec& a) {
  Vec c(a);
  for (auto& x : c) x = -x;
  return c;
}

inline Vec scale(int s, const Vec& a) {
  Vec c(a);
  for (auto& x : c) x *= s;
  return c;
}

// componentwise partial order
inline bool leq(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool nonneg(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

inline Vec cmp_sup(const Vec& a, const Vec& b) {
  Vec c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] = std::max(c[i], b[i]);
  return c;
}

inline Vec cmp_inf(const Vec& a, const Vec& b) {
  Vec c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] = std::min(c[i], b[i]);
  return c;
}

// All points of the dilated simplex Delta^r_n = { a in N^n : |a| = r },
// in ascending lexicographic order.
inline std::vector<Vec> simplex_points(int n, int r) {
  std::vector<Vec> out;
  if (r < 0) return out;
  if (n == 0) {
    if (r == 0) out.push_back(Vec{});
    return out;
  }
  Vec cur(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      cur[static_cast<size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, r);
  std::sort(out.begin(), out.end());
  return out;
}

// Points of norm r below a componentwise bound, ascending lex.
inline std::vector<Vec> bounded_points(const Vec& bound, int r) {
  std::vector<Vec> out;
  int n = static_cast<int>(bound.size());
  if (n == 0) {
    if (r == 0) out.push_back(Vec{});
    return out;
  }
  Vec cur(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      if (left <= bound[static_cast<size_t>(pos)]) {
        cur[static_cast<size_t>(pos)] = left;
        out.push_back(cur);
      }
      return;
    }
    int cap = std::min(left, bound[static_cast<size_t>(pos)]);
    for (int v = 0; v <= cap; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  if (r >= 0) rec(0, r);
  return out;
}

// Weakly increasing index tuples (i_1 <= ... <= i_len) over [0, n).
inline std::vector<std::vector<int>> sorted_tuples(int n, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(len), 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v < n; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  if (len == 0)
    out.push_back({});
  else
    rec(0, 0);
  return out;
}

// Sum of unit vectors for an index tuple.
inline Vec tuple_point(int n, const std::vector<int>& tuple) {
  Vec v = zero_vec(n);
  for (int i : tuple) v[static_cast<size_t>(i)] += 1;
  return v;
}

// The weakly increasing tuple whose point is v (entries >= 0 required).
inline std::vector<int> point_tuple(const Vec& v) {
  std::vector<int> t;
  for (size_t i = 0; i < v.size(); ++i)
    for (int c = 0; c < v[i]; ++c) t.push_back(static_cast<int>(i));
  return t;
}

// Parity of the permutation that sorts `tuple` (entries must be pairwise
// distinct). Returns 0 for even, 1 for odd.
inline int sort_parity(std::vector<int> tuple) {
  int parity = 0;
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] > tuple[j]) parity ^= 1;
  return parity;
}

}  // namespace polytract
