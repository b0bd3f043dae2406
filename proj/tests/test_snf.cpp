#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "polytract/snf.hpp"

using namespace polytract;

namespace {

mpz_class det(const IntMat& A) {
  size_t n = A.size();
  if (n == 0) return 1;
  if (n == 1) return A[0][0];
  mpz_class d = 0;
  int sign = 1;
  for (size_t j = 0; j < n; ++j) {
    IntMat minor;
    for (size_t i = 1; i < n; ++i) {
      IntRow row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(A[i][k]);
      minor.push_back(row);
    }
    d += sign * A[0][j] * det(minor);
    sign = -sign;
  }
  return d;
}

// Determinantal-divisor oracle: k-th diagonal entry = gcd(k-minors)/gcd((k-1)-minors).
std::vector<mpz_class> invariant_diagonal_oracle(const IntMat& A) {
  size_t rows = A.size(), cols = A[0].size();
  std::vector<mpz_class> gcds;
  for (size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<size_t> ri(k), ci(k);
    std::function<void(size_t, size_t)> pick_cols = [&](size_t pos, size_t lo) {
      if (pos == k) {
        IntMat sub(k, IntRow(k));
        for (size_t a = 0; a < k; ++a)
          for (size_t b = 0; b < k; ++b) sub[a][b] = A[ri[a]][ci[b]];
        mpz_class d = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (size_t c = lo; c < cols; ++c) {
        ci[pos] = c;
        pick_cols(pos + 1, c + 1);
      }
    };
    std::function<void(size_t, size_t)> pick_rows = [&](size_t pos, size_t lo) {
      if (pos == k) {
        pick_cols(0, 0);
        return;
      }
      for (size_t r = lo; r < rows; ++r) {
        ri[pos] = r;
        pick_rows(pos + 1, r + 1);
      }
    };
    pick_rows(0, 0);
    gcds.push_back(g);
  }
  std::vector<mpz_class> diag;
  mpz_class prev = 1;
  for (const auto& g : gcds) {
    if (g == 0) break;
    diag.push_back(g / prev);
    prev = g;
  }
  return diag;
}

}  // namespace

TEST_CASE("smith normal form basics") {
  auto r1 = smith_normal_form({{2}});
  CHECK(r1.rank == 1);
  CHECK(r1.diagonal == std::vector<mpz_class>{2});
  CHECK(r1.invariant_factors() == std::vector<mpz_class>{2});

  auto r2 = smith_normal_form({{1, 0}, {0, 0}});
  CHECK(r2.rank == 1);
  CHECK(r2.invariant_factors().empty());

  auto r3 = smith_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  CHECK(r3.diagonal == std::vector<mpz_class>{2, 2, 156});
}

TEST_CASE("smith normal form vs determinantal divisor oracle") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    IntMat A(rows, IntRow(cols));
    for (auto& row : A)
      for (auto& x : row) x = entry(rng);
    auto snf = smith_normal_form(A);

    CHECK(mat_mul(mat_mul(snf.u, A), snf.v) == snf.d);
    mpz_class du = det(snf.u), dv = det(snf.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (size_t i = 0; i + 1 < snf.diagonal.size(); ++i)
      CHECK(snf.diagonal[i + 1] % snf.diagonal[i] == 0);
    CHECK(snf.diagonal == invariant_diagonal_oracle(A));
  }
}

TEST_CASE("hermite normal form shape and lattice invariance") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMat A(rows, IntRow(cols));
    for (auto& row : A)
      for (auto& x : row) x = entry(rng);
    auto h = hermite_normal_form(A);
    CHECK(mat_mul(h.u, A) == h.h);
    mpz_class du = det(h.u);
    CHECK((du == 1 || du == -1));
    for (size_t t = 0; t < h.pivot_cols.size(); ++t) {
      size_t c = h.pivot_cols[t];
      CHECK(h.h[t][c] > 0);
      for (size_t i = t + 1; i < rows; ++i) CHECK(h.h[i][c] == 0);
      for (size_t i = 0; i < t; ++i) {
        CHECK(h.h[i][c] >= 0);
        CHECK(h.h[i][c] < h.h[t][c]);
      }
    }
    for (const auto& row : A) CHECK(in_row_lattice(h, row));

    IntMat B = A;
    std::shuffle(B.begin(), B.end(), rng);
    B.push_back(B[0]);  // redundant generator
    CHECK(lattices_equal(A, B, cols));
  }
}

TEST_CASE("membership distinguishes sublattices") {
  IntMat A{{2, 0}, {0, 2}};
  auto h = hermite_normal_form(A);
  CHECK(in_row_lattice(h, {4, 2}));
  CHECK_FALSE(in_row_lattice(h, {1, 0}));
  CHECK_FALSE(in_row_lattice(h, {2, 1}));
}

TEST_CASE("left kernel basis") {
  IntMat M{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  IntMat K = left_kernel_basis(M);
  REQUIRE(K.size() == 1);
  IntRow k = K[0];
  CHECK(k[2] == 0);
  CHECK(k[0] + k[1] == 0);
  CHECK(abs(k[0]) == 1);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    size_t rows = 2 + rng() % 4, cols = 1 + rng() % 4;
    IntMat A(rows, IntRow(cols));
    for (auto& row : A)
      for (auto& x : row) x = entry(rng);
    IntMat ker = left_kernel_basis(A);
    auto snf = smith_normal_form(A);
    CHECK(ker.size() == rows - static_cast<size_t>(snf.rank));
    for (const auto& v : ker) {
      IntRow prod(cols, 0);
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) prod[j] += v[i] * A[i][j];
      CHECK(std::all_of(prod.begin(), prod.end(),
                        [](const mpz_class& x) { return x == 0; }));
    }
  }
}

TEST_CASE("solve in row basis") {
  IntMat K{{1, 2, 0}, {0, 1, 1}};
  auto c = solve_in_row_basis(K, {2, 5, 1});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 1);
  auto not_integral = solve_in_row_basis(IntMat{{2, 0}}, {1, 0});
  CHECK_FALSE(not_integral.has_value());
  auto inconsistent = solve_in_row_basis(K, {1, 0, 0});
  CHECK_FALSE(inconsistent.has_value());
}
