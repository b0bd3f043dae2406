#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "polytract/errors.hpp"

namespace polytract {

using IntRow = std::vector<mpz_class>;
using IntMat = std::vector<IntRow>;  // row-major; all rows equal length

inline IntMat identity_mat(size_t n) {
  IntMat I(n, IntRow(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline IntMat mat_mul(const IntMat& A, const IntMat& B) {
  size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
  IntMat C(n, IntRow(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (A[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
    }
  return C;
}

// D = U * M * V with U, V unimodular; D diagonal with d1 | d2 | ... .
struct SmithResult {
  IntMat d, u, v;
  int rank = 0;
  std::vector<mpz_class> diagonal;  // the nonzero diagonal entries, positive

  std::vector<mpz_class> invariant_factors() const {
    std::vector<mpz_class> out;
    for (const auto& x : diagonal)
      if (x > 1) out.push_back(x);
    return out;
  }
};

inline SmithResult smith_normal_form(IntMat m_in) {
  size_t rows = m_in.size();
  size_t cols = rows ? m_in[0].size() : 0;
  SmithResult res;
  res.d = std::move(m_in);
  res.u = identity_mat(rows);
  res.v = identity_mat(cols);
  IntMat& A = res.d;

  auto row_sub = [&](size_t dst, size_t src, const mpz_class& q) {
    for (size_t j = 0; j < cols; ++j) A[dst][j] -= q * A[src][j];
    for (size_t j = 0; j < rows; ++j) res.u[dst][j] -= q * res.u[src][j];
  };
  auto col_sub = [&](size_t dst, size_t src, const mpz_class& q) {
    for (size_t i = 0; i < rows; ++i) A[i][dst] -= q * A[i][src];
    for (size_t i = 0; i < cols; ++i) res.v[i][dst] -= q * res.v[i][src];
  };
  auto row_swap = [&](size_t a, size_t b) {
    if (a == b) return;
    std::swap(A[a], A[b]);
    std::swap(res.u[a], res.u[b]);
  };
  auto col_swap = [&](size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < rows; ++i) std::swap(A[i][a], A[i][b]);
    for (size_t i = 0; i < cols; ++i) std::swap(res.v[i][a], res.v[i][b]);
  };
  auto row_negate = [&](size_t i) {
    for (size_t j = 0; j < cols; ++j) A[i][j] = -A[i][j];
    for (size_t j = 0; j < rows; ++j) res.u[i][j] = -res.u[i][j];
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // locate a minimal-magnitude nonzero entry in the trailing block
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (A[i][j] == 0) continue;
        if (!found || cmp(abs(A[i][j]), abs(A[pi][pj])) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (A[i][t] == 0) continue;
        mpz_class q = A[i][t] / A[t][t];
        row_sub(i, t, q);
        if (A[i][t] != 0) {  // remainder becomes the smaller pivot
          row_swap(t, i);
          dirty = true;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (A[t][j] == 0) continue;
        mpz_class q = A[t][j] / A[t][t];
        col_sub(j, t, q);
        if (A[t][j] != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
    }
    // enforce divisibility of the trailing block by the pivot
    bool redo = false;
    for (size_t i = t + 1; i < rows && !redo; ++i)
      for (size_t j = t + 1; j < cols && !redo; ++j)
        if (A[i][j] % A[t][t] != 0) {
          row_sub(t, i, mpz_class(-1));  // add row i to row t
          redo = true;
        }
    if (redo) continue;
    if (A[t][t] < 0) row_negate(t);
    ++t;
  }
  res.rank = static_cast<int>(t);
  for (size_t i = 0; i < t; ++i) res.diagonal.push_back(A[i][i]);
  return res;
}

// Row-style Hermite normal form H = U * M: pivots positive, zero below,
// entries above a pivot reduced into [0, pivot). Zero rows sink to the
// bottom.
struct HermiteResult {
  IntMat h, u;
  std::vector<size_t> pivot_cols;  // one per nonzero row of h
  int rank = 0;
};

inline HermiteResult hermite_normal_form(IntMat m_in) {
  size_t rows = m_in.size();
  size_t cols = rows ? m_in[0].size() : 0;
  HermiteResult res;
  res.h = std::move(m_in);
  res.u = identity_mat(rows);
  IntMat& H = res.h;

  auto row_sub = [&](size_t dst, size_t src, const mpz_class& q) {
    for (size_t j = 0; j < cols; ++j) H[dst][j] -= q * H[src][j];
    for (size_t j = 0; j < rows; ++j) res.u[dst][j] -= q * res.u[src][j];
  };
  auto row_swap = [&](size_t a, size_t b) {
    if (a == b) return;
    std::swap(H[a], H[b]);
    std::swap(res.u[a], res.u[b]);
  };
  auto row_negate = [&](size_t i) {
    for (size_t j = 0; j < cols; ++j) H[i][j] = -H[i][j];
    for (size_t j = 0; j < rows; ++j) res.u[i][j] = -res.u[i][j];
  };

  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-eliminate column c below row r down to a single entry
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (H[i][c] != 0 && (best == rows || cmp(abs(H[i][c]), abs(H[best][c])) < 0))
          best = i;
      if (best == rows) break;  // column is zero
      row_swap(r, best);
      bool any = false;
      for (size_t i = r + 1; i < rows; ++i) {
        if (H[i][c] == 0) continue;
        mpz_class q = H[i][c] / H[r][c];
        row_sub(i, r, q);
        if (H[i][c] != 0) any = true;
      }
      if (!any) break;
    }
    if (r < rows && H[r][c] != 0) {
      if (H[r][c] < 0) row_negate(r);
      for (size_t i = 0; i < r; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
        if (q != 0) row_sub(i, r, q);
      }
      res.pivot_cols.push_back(c);
      ++r;
    }
  }
  res.rank = static_cast<int>(r);
  return res;
}

// Membership of a row vector in the lattice spanned by the rows of H (a
// HermiteResult of the generating matrix).
inline bool in_row_lattice(const HermiteResult& hnf, IntRow v) {
  for (size_t t = 0; t < hnf.pivot_cols.size(); ++t) {
    size_t c = hnf.pivot_cols[t];
    if (v[c] % hnf.h[t][c] != 0) return false;
    mpz_class q = v[c] / hnf.h[t][c];
    if (q != 0)
      for (size_t j = 0; j < v.size(); ++j) v[j] -= q * hnf.h[t][j];
  }
  return std::all_of(v.begin(), v.end(),
                     [](const mpz_class& x) { return x == 0; });
}

// Canonical generator list of a row lattice: the nonzero rows of the HNF.
inline IntMat lattice_canonical(const IntMat& gens, size_t cols) {
  if (gens.empty()) return {};
  (void)cols;
  HermiteResult h = hermite_normal_form(gens);
  IntMat out(h.h.begin(), h.h.begin() + h.rank);
  return out;
}

inline bool lattices_equal(const IntMat& a, const IntMat& b, size_t cols) {
  return lattice_canonical(a, cols) == lattice_canonical(b, cols);
}

// Z-basis of { v : v * M = 0 } (the left kernel): the transform rows of the
// HNF that align with zero rows. The result is a basis of the full
// (saturated) kernel lattice.
inline IntMat left_kernel_basis(const IntMat& m) {
  if (m.empty()) return {};
  HermiteResult h = hermite_normal_form(m);
  IntMat out;
  for (size_t i = static_cast<size_t>(h.rank); i < m.size(); ++i)
    out.push_back(h.u[i]);
  return out;
}

// Solve c * K = r over the integers for a basis K (rows independent).
// Returns nullopt if r is not in the rational row span or not integral.
inline std::optional<IntRow> solve_in_row_basis(const IntMat& K, const IntRow& r) {
  size_t d = K.size();
  size_t m = r.size();
  // rational elimination on the augmented system K^T c = r^T
  std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(d + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < d; ++j) A[i][j] = mpq_class(K[j][i]);
    A[i][d] = mpq_class(r[i]);
  }
  size_t row = 0;
  std::vector<size_t> pivot_of_col(d, m);
  for (size_t c = 0; c < d && row < m; ++c) {
    size_t p = row;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[row]);
    mpq_class inv_p = 1 / A[row][c];
    for (size_t j = c; j <= d; ++j) A[row][j] *= inv_p;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || A[i][c] == 0) continue;
      mpq_class f = A[i][c];
      for (size_t j = c; j <= d; ++j) A[i][j] -= f * A[row][j];
    }
    pivot_of_col[c] = row;
    ++row;
  }
  // inconsistency check
  for (size_t i = row; i < m; ++i)
    if (A[i][d] != 0) return std::nullopt;
  IntRow c(d, 0);
  for (size_t j = 0; j < d; ++j) {
    if (pivot_of_col[j] == m) continue;  // free variable, take 0
    mpq_class val = A[pivot_of_col[j]][d];
    if (val.get_den() != 1) return std::nullopt;
    c[j] = val.get_num();
  }
  // verify
  IntRow check(m, 0);
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < m; ++i) check[i] += c[j] * K[j][i];
  for (size_t i = 0; i < m; ++i)
    if (check[i] != r[i]) return std::nullopt;
  return c;
}

}  // namespace polytract
