#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polytract/tracts.hpp"

using namespace polytract;

namespace {

const std::vector<TractId> kAllTracts = {
    TractId::K,  TractId::Fpm, TractId::F2,  TractId::F3, TractId::S,
    TractId::T0, TractId::T0Z, TractId::T1, TractId::Tinf};

FormalSum sum_of(TractId t, std::initializer_list<TractElement> es) {
  FormalSum s(t);
  for (const auto& e : es) s.push(e);
  return s;
}

// a small pool of sample units per tract, for randomized property checks
std::vector<TractElement> sample_units(TractId t) {
  switch (t) {
    case TractId::K:
    case TractId::F2:
      return {TractElement::one(t)};
    case TractId::Fpm:
    case TractId::F3:
    case TractId::S:
      return {TractElement::make_sign(t, 1), TractElement::make_sign(t, -1)};
    case TractId::T0:
      return {TractElement::tropical(t, 0), TractElement::tropical(t, 1),
              TractElement::tropical(t, mpq_class(1, 2)),
              TractElement::tropical(t, -2)};
    case TractId::T0Z:
      return {TractElement::tropical(t, 0), TractElement::tropical(t, 1),
              TractElement::tropical(t, -3)};
    case TractId::T1:
    case TractId::Tinf:
      return {TractElement::triangular(t, 1), TractElement::triangular(t, 2),
              TractElement::triangular(t, mpq_class(3, 2))};
  }
  return {};
}

}  // namespace

TEST_CASE("unit arithmetic") {
  auto e12 = TractElement::tropical(TractId::T0, mpq_class(1, 2));
  auto e32 = TractElement::tropical(TractId::T0, mpq_class(3, 2));
  CHECK(mul(e12, e32) == TractElement::tropical(TractId::T0, 2));

  CHECK(neg(TractElement::make_sign(TractId::F3, 1)) ==
        TractElement::make_sign(TractId::F3, -1));
  CHECK(inv(TractElement::one(TractId::K)) == TractElement::one(TractId::K));
  CHECK(inv(mul(e12, e32)) == TractElement::tropical(TractId::T0, -2));
  CHECK_THROWS_AS(inv(TractElement::make_zero(TractId::T0)), Error);
  CHECK_THROWS_AS(mul(TractElement::one(TractId::K), e12), Error);
  CHECK_THROWS_AS(TractElement::tropical(TractId::T0Z, mpq_class(1, 2)), Error);
}

TEST_CASE("null set membership per tract") {
  auto one = [](TractId t) { return TractElement::one(t); };

  // K: any size except one
  CHECK(is_null(sum_of(TractId::K, {one(TractId::K), one(TractId::K)})));
  CHECK(is_null(FormalSum(TractId::K)));
  CHECK_FALSE(is_null(sum_of(TractId::K, {one(TractId::K)})));

  // Fpm: balanced signs
  auto p = TractElement::make_sign(TractId::Fpm, 1);
  auto m = TractElement::make_sign(TractId::Fpm, -1);
  CHECK(is_null(sum_of(TractId::Fpm, {p, m})));
  CHECK(is_null(sum_of(TractId::Fpm, {p, p, m, m})));
  CHECK_FALSE(is_null(sum_of(TractId::Fpm, {p, p, m})));

  // F2: even size
  CHECK(is_null(sum_of(TractId::F2, {one(TractId::F2), one(TractId::F2)})));
  CHECK_FALSE(is_null(
      sum_of(TractId::F2, {one(TractId::F2), one(TractId::F2), one(TractId::F2)})));

  // F3: signed count divisible by 3
  auto p3 = TractElement::make_sign(TractId::F3, 1);
  auto m3 = TractElement::make_sign(TractId::F3, -1);
  CHECK(is_null(sum_of(TractId::F3, {p3, p3, p3})));
  CHECK(is_null(sum_of(TractId::F3, {p3, m3})));
  CHECK(is_null(sum_of(TractId::F3, {m3, m3, m3})));
  CHECK_FALSE(is_null(sum_of(TractId::F3, {p3, p3})));

  // S: both signs present
  auto ps = TractElement::make_sign(TractId::S, 1);
  auto ms = TractElement::make_sign(TractId::S, -1);
  CHECK(is_null(sum_of(TractId::S, {ps, ps, ms})));
  CHECK_FALSE(is_null(sum_of(TractId::S, {ps, ps})));

  // T0: max log-value attained at least twice
  auto e2 = TractElement::tropical(TractId::T0, 2);
  auto e0 = TractElement::tropical(TractId::T0, 0);
  CHECK(is_null(sum_of(TractId::T0, {e2, e2, e0})));
  CHECK_FALSE(is_null(sum_of(TractId::T0, {e2, e0})));

  // T1: side lengths of a possibly degenerate polygon
  auto t1 = [](int v) { return TractElement::triangular(TractId::T1, v); };
  CHECK(is_null(sum_of(TractId::T1, {t1(3), t1(4), t1(5)})));
  CHECK_FALSE(is_null(sum_of(TractId::T1, {t1(1), t1(1), t1(5)})));
  CHECK_FALSE(is_null(sum_of(TractId::T1, {t1(5)})));

  // Tinf: two equal terms, or at least three
  auto ti = [](int v) { return TractElement::triangular(TractId::Tinf, v); };
  CHECK(is_null(sum_of(TractId::Tinf, {ti(2), ti(2)})));
  CHECK(is_null(sum_of(TractId::Tinf, {ti(1), ti(2), ti(7)})));
  CHECK_FALSE(is_null(sum_of(TractId::Tinf, {ti(1), ti(2)})));
}

TEST_CASE("additive inverses are unique") {
  for (TractId t : kAllTracts) {
    for (const auto& a : sample_units(t)) {
      FormalSum s(t);
      s.push(a);
      s.push(neg(a));
      CHECK(is_null(s));
      // {a, b} null forces b = neg(a)
      for (const auto& b : sample_units(t)) {
        FormalSum s2(t);
        s2.push(a);
        s2.push(b);
        if (is_null(s2)) CHECK(b == neg(a));
      }
      // tropical families: exponent arithmetic, unequal values never cancel
      if (t == TractId::T0 || t == TractId::T0Z) {
        FormalSum s3(t);
        s3.push(a);
        s3.push(TractElement::tropical(t, a.q + 1));
        CHECK_FALSE(is_null(s3));
      }
    }
  }
}

TEST_CASE("null sets are ideals on sampled instances") {
  std::mt19937 rng(5);
  for (TractId t : kAllTracts) {
    auto pool = sample_units(t);
    auto random_null = [&]() {
      // a + neg(a) + (a + neg(a)) ... random balanced pile
      FormalSum s(t);
      int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) {
        const auto& a = pool[rng() % pool.size()];
        s.push(a);
        s.push(neg(a));
      }
      return s;
    };
    for (int trial = 0; trial < 25; ++trial) {
      FormalSum s1 = random_null(), s2 = random_null();
      REQUIRE(is_null(s1));
      REQUIRE(is_null(s2));
      FormalSum both(t);
      for (const auto& e : s1.terms) both.push(e);
      for (const auto& e : s2.terms) both.push(e);
      CHECK(is_null(both));  // N + N = N
      const auto& c = pool[rng() % pool.size()];
      FormalSum scaled(t);
      for (const auto& e : s1.terms) scaled.push(mul(c, e));
      CHECK(is_null(scaled));  // F * N = N
    }
  }
}

TEST_CASE("idempotency flags match 1+1 and 1+1+1") {
  for (TractId t : kAllTracts) {
    auto one = TractElement::one(t);
    FormalSum two(t), three(t);
    two.push(one);
    two.push(one);
    three.push(one);
    three.push(one);
    three.push(one);
    TractFlags f = tract_flags(t);
    CHECK(f.idempotent == (minus_one_is_one(t) && is_null(two) && is_null(three)));
    if (f.idempotent) CHECK(f.near_idempotent);
  }
  CHECK_FALSE(tract_flags(TractId::F2).near_idempotent);
  CHECK(tract_flags(TractId::K).degenerate);
  CHECK(tract_flags(TractId::Tinf).degenerate);
  CHECK_FALSE(tract_flags(TractId::T0).degenerate);
}

TEST_CASE("fusion rule on flagged tracts") {
  std::mt19937 rng(17);
  for (TractId t : kAllTracts) {
    if (!tract_flags(t).fusion) continue;
    auto pool = sample_units(t);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
      // random A, B and a unit c with A + (-c) and c + B null
      std::vector<TractElement> A, B;
      for (size_t i = 0, k = 1 + rng() % 3; i < k; ++i)
        A.push_back(pool[rng() % pool.size()]);
      for (size_t i = 0, k = 1 + rng() % 3; i < k; ++i)
        B.push_back(pool[rng() % pool.size()]);
      const auto& c = pool[rng() % pool.size()];
      FormalSum ac(t), cb(t);
      for (const auto& e : A) ac.push(e);
      ac.push(neg(c));
      cb.push(c);
      for (const auto& e : B) cb.push(e);
      if (!is_null(ac) || !is_null(cb)) continue;
      ++checked;
      FormalSum ab(t);
      for (const auto& e : A) ab.push(e);
      for (const auto& e : B) ab.push(e);
      CHECK(is_null(ab));
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("morphism catalog") {
  // any -> k collapses to the characteristic pattern
  for (TractId t : kAllTracts) {
    auto m = morphism(t, TractId::K);
    REQUIRE(m.has_value());
    for (const auto& u : sample_units(t))
      CHECK((*m)(u) == TractElement::one(TractId::K));
  }
  // fpm is initial
  for (TractId t : kAllTracts) {
    auto m = morphism(TractId::Fpm, t);
    REQUIRE(m.has_value());
    CHECK((*m)(TractElement::make_sign(TractId::Fpm, -1)) ==
          neg(TractElement::one(t)));
  }
  auto m23 = morphism(TractId::Fpm, TractId::F2);
  CHECK((*m23)(TractElement::make_sign(TractId::Fpm, -1)) ==
        TractElement::one(TractId::F2));

  auto mz = morphism(TractId::T0Z, TractId::T0);
  REQUIRE(mz.has_value());
  CHECK((*mz)(TractElement::tropical(TractId::T0Z, 3)) ==
        TractElement::tropical(TractId::T0, 3));

  CHECK_FALSE(morphism(TractId::T0, TractId::T0Z).has_value());
  CHECK_FALSE(morphism(TractId::F3, TractId::S).has_value());
  CHECK_FALSE(morphism(TractId::T0, TractId::Tinf).has_value());
  CHECK_THROWS_AS(require_morphism(TractId::K, TractId::F3), Error);
}

TEST_CASE("unit string round trip") {
  for (TractId t : kAllTracts) {
    for (const auto& u : sample_units(t))
      CHECK(parse_unit(t, unit_to_string(u)) == u);
    CHECK(parse_unit(t, "0").zero);
  }
  CHECK(unit_to_string(TractElement::tropical(TractId::T0, mpq_class(1, 2))) ==
        "1/2");
  CHECK(unit_to_string(TractElement::tropical(TractId::T0, -1)) == "-1");
  CHECK_THROWS_AS(parse_unit(TractId::F3, "2"), Error);
}
