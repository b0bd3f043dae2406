#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polytract/representations.hpp"

using namespace polytract;

namespace {

MConvexSet u24() {
  std::vector<Vec> pts;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      pts.push_back(add(unit_vec(4, i), unit_vec(4, j)));
  return make_mconvex(4, 2, pts);
}

Representation t0_rep(const MConvexSet& J, std::map<Vec, int> logs) {
  std::map<Vec, TractElement> vals;
  for (auto& [p, v] : logs)
    vals.emplace(p, TractElement::tropical(TractId::T0, v));
  return make_representation(J, TractId::T0, std::move(vals));
}

// GF(3) representation of U24 from the columns (1,0),(0,1),(1,1),(1,2)
Representation u24_over_f3() {
  std::map<Vec, TractElement> vals;
  auto sgn = [](int s) { return TractElement::make_sign(TractId::F3, s); };
  vals.emplace(add(unit_vec(4, 0), unit_vec(4, 1)), sgn(1));   // p12 = 1
  vals.emplace(add(unit_vec(4, 0), unit_vec(4, 2)), sgn(1));   // p13 = 1
  vals.emplace(add(unit_vec(4, 0), unit_vec(4, 3)), sgn(-1));  // p14 = 2
  vals.emplace(add(unit_vec(4, 1), unit_vec(4, 2)), sgn(-1));  // p23 = -1
  vals.emplace(add(unit_vec(4, 1), unit_vec(4, 3)), sgn(-1));  // p24 = -1
  vals.emplace(add(unit_vec(4, 2), unit_vec(4, 3)), sgn(1));   // p34 = 1
  return make_representation(u24(), TractId::F3, std::move(vals));
}

}  // namespace

TEST_CASE("characteristic representations verify strongly") {
  for (const auto& J : enumerate_mconvex(3, 2)) {
    CHECK(verify(characteristic_representation(J, TractId::K), VerifyMode::strong).ok());
    CHECK(verify(characteristic_representation(J, TractId::T0), VerifyMode::strong).ok());
  }
  CHECK(verify(characteristic_representation(u24(), TractId::T0), VerifyMode::strong).ok());
  CHECK_THROWS_AS(characteristic_representation(u24(), TractId::F3), Error);
  CHECK_THROWS_AS(characteristic_representation(u24(), TractId::F2), Error);
}

TEST_CASE("T0 verification on Delta^2_2") {
  auto J = simplex(2, 2);
  // log-values 0,0 on the corners; +1 in the middle verifies, -1 does not
  auto good = t0_rep(J, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}});
  CHECK(verify(good, VerifyMode::strong).ok());
  CHECK(verify(good, VerifyMode::weak).ok());

  auto bad = t0_rep(J, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, -1}});
  auto res = verify(bad, VerifyMode::strong);
  CHECK(res.status == VerifyResult::Status::violated);
  CHECK(res.violations.size() == 1);
}

TEST_CASE("idempotency short-circuit for sign tracts on proper sets") {
  auto J = simplex(2, 2);
  std::map<Vec, TractElement> vals;
  for (const Vec& b : J.bases)
    vals.emplace(b, TractElement::make_sign(TractId::F3, 1));
  auto rho = make_representation(J, TractId::F3, std::move(vals));
  CHECK(verify(rho, VerifyMode::strong).status ==
        VerifyResult::Status::idempotency_diagnostic);
  CHECK(verify(rho, VerifyMode::weak).status ==
        VerifyResult::Status::idempotency_diagnostic);
}

TEST_CASE("a genuine GF(3) representation of U24") {
  auto rho = u24_over_f3();
  CHECK(verify(rho, VerifyMode::strong).ok());
  // flipping one sign breaks it
  auto broken = rho;
  broken.values[add(unit_vec(4, 2), unit_vec(4, 3))] =
      TractElement::make_sign(TractId::F3, -1);
  CHECK(verify(broken, VerifyMode::strong).status ==
        VerifyResult::Status::violated);
}

TEST_CASE("pushforward") {
  auto J = simplex(2, 2);
  auto rho = t0_rep(J, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}});

  auto to_k = require_morphism(TractId::T0, TractId::K);
  auto chi = pushforward(rho, to_k);
  CHECK(chi.values == characteristic_representation(J, TractId::K).values);

  auto idm = require_morphism(TractId::T0, TractId::T0);
  CHECK(pushforward(rho, idm).values == rho.values);

  std::map<Vec, TractElement> zvals;
  for (const auto& [p, v] : rho.values)
    zvals.emplace(p, TractElement::tropical(TractId::T0Z, v.q));
  auto rho_z = make_representation(J, TractId::T0Z, std::move(zvals));
  auto lifted = pushforward(rho_z, require_morphism(TractId::T0Z, TractId::T0));
  CHECK(lifted.values == rho.values);

  CHECK_THROWS_AS(pushforward(rho, require_morphism(TractId::K, TractId::K)), Error);
}

TEST_CASE("rescaling") {
  auto J = simplex(2, 1);
  auto rho = t0_rep(J, {{{1, 0}, 0}, {{0, 1}, 0}});
  TorusElement id{TractElement::one(TractId::T0),
                  {TractElement::one(TractId::T0), TractElement::one(TractId::T0)}};
  CHECK(rescale(rho, id).values == rho.values);

  TorusElement g{TractElement::one(TractId::T0),
                 {TractElement::tropical(TractId::T0, 1),
                  TractElement::tropical(TractId::T0, 0)}};
  auto moved = rescale(rho, g);
  CHECK(moved.at({1, 0}) == TractElement::tropical(TractId::T0, 1));
  CHECK(moved.at({0, 1}) == TractElement::tropical(TractId::T0, 0));

  // validity is preserved under rescaling
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> val(-2, 2);
  auto J22 = simplex(2, 2);
  auto good = t0_rep(J22, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}});
  for (int trial = 0; trial < 10; ++trial) {
    TorusElement h{TractElement::tropical(TractId::T0, val(rng)),
                   {TractElement::tropical(TractId::T0, val(rng)),
                    TractElement::tropical(TractId::T0, val(rng))}};
    CHECK(verify(rescale(good, h), VerifyMode::strong).ok());
  }
}

TEST_CASE("dual representations") {
  // dual of chi is chi of the dual
  for (const auto& J : enumerate_mconvex(3, 2)) {
    auto chi = characteristic_representation(J, TractId::K);
    auto d = dual_representation(chi);
    CHECK(d.J == dual(J));
    CHECK(d.values == characteristic_representation(dual(J), TractId::K).values);
  }

  // T0 on Delta^2_2: values are mirrored on the self-dual set
  auto J = simplex(2, 2);
  auto rho = t0_rep(J, {{{2, 0}, 3}, {{0, 2}, 0}, {{1, 1}, 2}});
  auto d = dual_representation(rho);
  CHECK(d.J == J);
  CHECK(d.at({2, 0}) == TractElement::tropical(TractId::T0, 0));
  CHECK(d.at({0, 2}) == TractElement::tropical(TractId::T0, 3));
  CHECK(d.at({1, 1}) == TractElement::tropical(TractId::T0, 2));
  // involution on values
  auto dd = dual_representation(d);
  CHECK(dd.values == rho.values);

  // sign-sensitive case: the dual of a valid GF(3) representation verifies
  auto rho3 = u24_over_f3();
  auto d3 = dual_representation(rho3);
  CHECK(d3.J == dual(u24()));
  CHECK(verify(d3, VerifyMode::strong).ok());
  CHECK(dual_representation(d3).values == rho3.values);
}

TEST_CASE("minor representations") {
  auto J = simplex(2, 3);
  auto rho = t0_rep(J, {{{3, 0}, 0}, {{2, 1}, 5}, {{1, 2}, 7}, {{0, 3}, 6}});
  REQUIRE(verify(rho, VerifyMode::strong).ok());

  auto same = minor_representation(rho, zero_vec(2), zero_vec(2), zero_vec(2));
  CHECK(same.values == rho.values);

  // contraction by e1: values on {a : a_1 >= 1} shifted down
  auto con = minor_representation(rho, zero_vec(2), unit_vec(2, 0), zero_vec(2));
  CHECK(con.J == contraction(J, unit_vec(2, 0)));
  CHECK(con.at({2, 0}) == TractElement::tropical(TractId::T0, 0));
  CHECK(con.at({1, 1}) == TractElement::tropical(TractId::T0, 5));
  CHECK(con.at({0, 2}) == TractElement::tropical(TractId::T0, 7));
  CHECK(verify(con, VerifyMode::strong).ok());

  // minors of valid representations verify; pushforward commutes with minors
  auto to_k = require_morphism(TractId::T0, TractId::K);
  for (int i = 0; i < 2; ++i) {
    Vec nu = unit_vec(2, i), mu = unit_vec(2, 1 - i);
    auto m = minor_representation(rho, nu, mu, zero_vec(2));
    CHECK(verify(m, VerifyMode::strong).ok());
    auto a = pushforward(minor_representation(rho, nu, mu, zero_vec(2)), to_k);
    auto b = minor_representation(pushforward(rho, to_k), nu, mu, zero_vec(2));
    CHECK(a.values == b.values);
  }

  // sign-sensitive minors of the GF(3) representation remain valid
  auto rho3 = u24_over_f3();
  for (int i = 0; i < 4; ++i) {
    auto m = minor_representation(rho3, unit_vec(4, i), zero_vec(4), zero_vec(4));
    CHECK(verify(m, VerifyMode::strong).ok());
    auto c = minor_representation(rho3, zero_vec(4), unit_vec(4, i), zero_vec(4));
    CHECK(verify(c, VerifyMode::strong).ok());
  }
}

TEST_CASE("direct sum representations") {
  auto J1 = simplex(2, 2);
  auto r1 = t0_rep(J1, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}});
  auto J2 = simplex(1, 2);
  auto r2 = t0_rep(J2, {{{0}, 4}});  // reduced basis of {(2)}
  auto s = direct_sum_representation(r1, r2);
  CHECK(s.J == direct_sum(J1, J2));
  CHECK(s.at({1, 1, 0}) == TractElement::tropical(TractId::T0, 5));
  CHECK(verify(s, VerifyMode::strong).ok());

  auto chi1 = characteristic_representation(J1, TractId::K);
  auto chi2 = characteristic_representation(J2, TractId::K);
  CHECK(direct_sum_representation(chi1, chi2).values ==
        characteristic_representation(direct_sum(J1, J2), TractId::K).values);
}

TEST_CASE("cross ratios") {
  auto J = simplex(2, 2);
  auto rho = t0_rep(J, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, -1}});
  CrossTuple w{{0, 0}, 0, 1, 0, 1, false};
  CHECK(cross_ratio(rho, w) == TractElement::tropical(TractId::T0, 2));

  // chi has all cross ratios 1
  for (const auto& K : enumerate_mconvex(3, 2)) {
    auto chi = characteristic_representation(K, TractId::T0);
    for (const auto& t : enumerate_omega(K))
      CHECK(cross_ratio(chi, t) == TractElement::one(TractId::T0));
  }

  // degenerate tuples have cross ratio 1 on any valid representation (CR0)
  auto M = make_mconvex(4, 2,
                        {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}});
  auto rhoM = t0_rep(M, {{{1, 0, 1, 0}, 2},
                         {{1, 0, 0, 1}, 3},
                         {{0, 1, 1, 0}, 4},
                         {{0, 1, 0, 1}, 5}});
  REQUIRE(verify(rhoM, VerifyMode::strong).ok());
  for (const auto& t : enumerate_omega(M))
    if (t.degenerate)
      CHECK(cross_ratio(rhoM, t) == TractElement::one(TractId::T0));

  // out-of-Omega tuple
  CHECK_THROWS_AS(cross_ratio(rhoM, CrossTuple{{0, 0, 0, 0}, 0, 1, 0, 1, false}),
                  Error);

  // cross ratios are invariant under rescaling
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    TorusElement g{TractElement::tropical(TractId::T0, val(rng)), {}};
    for (int i = 0; i < 2; ++i)
      g.t.push_back(TractElement::tropical(TractId::T0, val(rng)));
    CHECK(cross_ratio_vector(rescale(rho, g)) == cross_ratio_vector(rho));
  }
}

TEST_CASE("lineality") {
  for (const auto& J : enumerate_mconvex(2, 2)) {
    auto chi = characteristic_representation(J, TractId::T0);
    CHECK(is_in_lineality(chi));
    TorusElement g{TractElement::tropical(TractId::T0, 2),
                   {TractElement::tropical(TractId::T0, -1),
                    TractElement::tropical(TractId::T0, 3)}};
    CHECK(is_in_lineality(rescale(chi, g)));
  }
  auto rho = t0_rep(simplex(2, 2), {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, -1}});
  CHECK_FALSE(is_in_lineality(rho));
  auto rho2 = t0_rep(simplex(2, 2), {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}});
  CHECK_FALSE(is_in_lineality(rho2));

  auto chi_f = characteristic_representation(simplex(2, 2), TractId::K);
  auto chi_s = pushforward(chi_f, require_morphism(TractId::K, TractId::K));
  CHECK(is_in_lineality(chi_s));
  std::map<Vec, TractElement> svals;
  for (const Vec& b : simplex(2, 2).bases)
    svals.emplace(b, TractElement::make_sign(TractId::S, 1));
  CHECK_THROWS_AS(
      is_in_lineality(Representation{simplex(2, 2), TractId::S, svals}), Error);
}

TEST_CASE("degeneracy locus membership") {
  auto M = make_mconvex(4, 2,
                        {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}});
  // v13 + v24 = v14 + v23 keeps the assignment in the locus
  std::map<Vec, TractElement> in_locus{
      {{1, 0, 1, 0}, TractElement::tropical(TractId::T0, 1)},
      {{1, 0, 0, 1}, TractElement::tropical(TractId::T0, 2)},
      {{0, 1, 1, 0}, TractElement::tropical(TractId::T0, 3)},
      {{0, 1, 0, 1}, TractElement::tropical(TractId::T0, 4)}};
  CHECK(is_in_degeneracy_locus(M, in_locus, TractId::T0));
  auto out_locus = in_locus;
  out_locus[{1, 0, 1, 0}] = TractElement::tropical(TractId::T0, 0);
  CHECK_FALSE(is_in_degeneracy_locus(M, out_locus, TractId::T0));

  // no degenerate relations: everything is in the locus
  std::map<Vec, TractElement> any{
      {{2, 0}, TractElement::tropical(TractId::T0, 9)},
      {{1, 1}, TractElement::tropical(TractId::T0, 1)},
      {{0, 2}, TractElement::tropical(TractId::T0, 0)}};
  CHECK(is_in_degeneracy_locus(simplex(2, 2), any, TractId::T0));
}

TEST_CASE("rescaling class equality") {
  auto J = simplex(2, 2);
  auto rho = t0_rep(J, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}});
  TorusElement g{TractElement::tropical(TractId::T0, 5),
                 {TractElement::tropical(TractId::T0, -2),
                  TractElement::tropical(TractId::T0, 1)}};
  CHECK(same_rescaling_class(rho, rescale(rho, g)));
  auto other = t0_rep(J, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 2}});
  CHECK_FALSE(same_rescaling_class(rho, other));

  // finite tract: the two GF(3) classes of U24 representations
  auto rho3 = u24_over_f3();
  TorusElement h{TractElement::make_sign(TractId::F3, -1),
                 {TractElement::make_sign(TractId::F3, 1),
                  TractElement::make_sign(TractId::F3, -1),
                  TractElement::make_sign(TractId::F3, 1),
                  TractElement::make_sign(TractId::F3, -1)}};
  CHECK(same_rescaling_class(rho3, rescale(rho3, h)));
}

TEST_CASE("M-convex function checks agree") {
  RationalFunction f0{2, 2, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 0}}};
  CHECK(mconvex_function_local(f0));
  CHECK(mconvex_function_via_t0(f0));

  RationalFunction fplus{2, 2, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, 1}}};
  CHECK_FALSE(mconvex_function_local(fplus));
  CHECK_FALSE(mconvex_function_via_t0(fplus));

  RationalFunction fminus{2, 2, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 1}, -1}}};
  CHECK(mconvex_function_local(fminus));
  CHECK(mconvex_function_via_t0(fminus));

  // random rational functions: both routes agree, strong = weak over T0
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (auto [n, r] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    auto pts = simplex_points(n, r);
    for (int trial = 0; trial < 120; ++trial) {
      RationalFunction f{n, r, {}};
      for (const Vec& p : pts)
        if (rng() % 4 != 0)
          f.finite.emplace(p, mpq_class(num(rng), den(rng)));
      if (f.finite.empty()) continue;
      bool a = mconvex_function_local(f);
      bool b = mconvex_function_via_t0(f, VerifyMode::strong);
      bool c = mconvex_function_via_t0(f, VerifyMode::weak);
      CHECK(a == b);
      CHECK(b == c);
      std::vector<Vec> supp;
      for (auto& [p, q] : f.finite) supp.push_back(p);
      if (is_m_convex(n, r, supp))
        CHECK(mconvex_function_local3(f) == a);
    }
  }
}
