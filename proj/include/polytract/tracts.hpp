#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polytract/errors.hpp"

namespace polytract {

// The concrete tracts handled by this library. Tropical elements (t0, t0z)
// are stored in the log domain as exact rationals; t1/tinf elements are the
// actual positive rational values.
enum class TractId { K, Fpm, F2, F3, S, T0, T0Z, T1, Tinf };

inline const char* tract_name(TractId t) {
  switch (t) {
    case TractId::K: return "k";
    case TractId::Fpm: return "fpm";
    case TractId::F2: return "f2";
    case TractId::F3: return "f3";
    case TractId::S: return "s";
    case TractId::T0: return "t0";
    case TractId::T0Z: return "t0z";
    case TractId::T1: return "t1";
    case TractId::Tinf: return "tinf";
  }
  return "?";
}

inline std::optional<TractId> tract_from_name(const std::string& s) {
  if (s == "k") return TractId::K;
  if (s == "fpm") return TractId::Fpm;
  if (s == "f2") return TractId::F2;
  if (s == "f3") return TractId::F3;
  if (s == "s") return TractId::S;
  if (s == "t0") return TractId::T0;
  if (s == "t0z") return TractId::T0Z;
  if (s == "t1") return TractId::T1;
  if (s == "tinf") return TractId::Tinf;
  return std::nullopt;
}

struct TractFlags {
  bool idempotent;       // 1 = -1 and 1+1+1 null
  bool near_idempotent;  // 1 = -1 and 1+1+x null for some unit x
  bool fusion;
  bool degenerate;       // every sum with >= 3 nonzero terms is null
};

inline TractFlags tract_flags(TractId t) {
  switch (t) {
    case TractId::K: return {true, true, true, true};
    case TractId::Fpm: return {false, false, true, false};
    case TractId::F2: return {false, false, true, false};
    case TractId::F3: return {false, false, true, false};
    case TractId::S: return {false, false, true, false};
    case TractId::T0: return {true, true, true, false};
    case TractId::T0Z: return {true, true, true, false};
    case TractId::T1: return {true, true, true, false};
    case TractId::Tinf: return {true, true, true, true};
  }
  return {false, false, false, false};
}

// 1 = -1 holds exactly in these tracts (f2 satisfies it without being
// near-idempotent).
inline bool minus_one_is_one(TractId t) {
  switch (t) {
    case TractId::K:
    case TractId::F2:
    case TractId::T0:
    case TractId::T0Z:
    case TractId::T1:
    case TractId::Tinf:
      return true;
    default:
      return false;
  }
}

// Zero or a unit. The payload in use depends on the tract: `sign` for
// fpm/f3/s, `q` for the tropical and triangular families, nothing for k/f2.
struct TractElement {
  TractId tract = TractId::K;
  bool zero = true;
  int sign = 1;
  mpq_class q = 0;

  static TractElement make_zero(TractId t) { return TractElement{t, true, 1, 0}; }

  static TractElement one(TractId t) {
    TractElement e{t, false, 1, 0};
    if (t == TractId::T1 || t == TractId::Tinf) e.q = 1;
    return e;
  }

  static TractElement make_sign(TractId t, int s) {
    if (t != TractId::Fpm && t != TractId::F3 && t != TractId::S)
      throw Error(ErrorKind::malformed_input, "sign payload for non-sign tract");
    if (s != 1 && s != -1)
      throw Error(ErrorKind::malformed_input, "sign must be +1 or -1");
    return TractElement{t, false, s, 0};
  }

  // Tropical element e^v given as its exact log-value v.
  static TractElement tropical(TractId t, const mpq_class& logval) {
    if (t != TractId::T0 && t != TractId::T0Z)
      throw Error(ErrorKind::malformed_input, "tropical payload for non-tropical tract");
    if (t == TractId::T0Z && logval.get_den() != 1)
      throw Error(ErrorKind::malformed_input, "t0z log-value must be integral");
    TractElement e{t, false, 1, logval};
    e.q.canonicalize();
    return e;
  }

  static TractElement triangular(TractId t, const mpq_class& value) {
    if (t != TractId::T1 && t != TractId::Tinf)
      throw Error(ErrorKind::malformed_input, "triangular payload for wrong tract");
    if (value <= 0)
      throw Error(ErrorKind::malformed_input, "triangular value must be positive");
    TractElement e{t, false, 1, value};
    e.q.canonicalize();
    return e;
  }

  bool operator==(const TractElement& o) const {
    if (tract != o.tract) return false;
    if (zero != o.zero) return false;
    if (zero) return true;
    switch (tract) {
      case TractId::K:
      case TractId::F2:
        return true;
      case TractId::Fpm:
      case TractId::F3:
      case TractId::S:
        return sign == o.sign;
      default:
        return q == o.q;
    }
  }
  bool operator!=(const TractElement& o) const { return !(*this == o); }
};

inline TractElement mul(const TractElement& a, const TractElement& b) {
  if (a.tract != b.tract)
    throw Error(ErrorKind::mixed_tract, "multiplying across tracts");
  if (a.zero || b.zero) return TractElement::make_zero(a.tract);
  TractElement c{a.tract, false, 1, 0};
  switch (a.tract) {
    case TractId::K:
    case TractId::F2:
      break;
    case TractId::Fpm:
    case TractId::F3:
    case TractId::S:
      c.sign = a.sign * b.sign;
      break;
    case TractId::T0:
    case TractId::T0Z:
      c.q = a.q + b.q;  // exponent addition
      break;
    case TractId::T1:
    case TractId::Tinf:
      c.q = a.q * b.q;
      break;
  }
  c.q.canonicalize();
  return c;
}

inline TractElement inv(const TractElement& a) {
  if (a.zero) throw Error(ErrorKind::inverse_of_zero, "inverse of zero");
  TractElement c = a;
  switch (a.tract) {
    case TractId::K:
    case TractId::F2:
    case TractId::Fpm:
    case TractId::F3:
    case TractId::S:
      break;  // every unit is its own inverse or sign-stable
    case TractId::T0:
    case TractId::T0Z:
      c.q = -a.q;
      break;
    case TractId::T1:
    case TractId::Tinf:
      c.q = 1 / a.q;
      break;
  }
  return c;
}

inline TractElement neg(const TractElement& a) {
  if (a.zero) return a;
  TractElement c = a;
  if (!minus_one_is_one(a.tract)) c.sign = -a.sign;
  return c;
}

// A finite multiset of units (zeros are dropped on insertion).
struct FormalSum {
  TractId tract = TractId::K;
  std::vector<TractElement> terms;

  static constexpr size_t kMaxTerms = size_t{1} << 16;

  explicit FormalSum(TractId t) : tract(t) {}

  void push(const TractElement& e) {
    if (e.tract != tract)
      throw Error(ErrorKind::mixed_tract, "mixed-tract formal sum");
    if (e.zero) return;
    if (terms.size() >= kMaxTerms)
      throw Error(ErrorKind::malformed_input, "formal sum too large");
    terms.push_back(e);
  }

  size_t size() const { return terms.size(); }
};

// Decides membership of the null set N_F for each concrete tract.
inline bool is_null(const FormalSum& s) {
  const auto& ts = s.terms;
  if (ts.empty()) return true;
  switch (s.tract) {
    case TractId::K:
      return ts.size() != 1;
    case TractId::Fpm: {
      long pos = 0, neg_ = 0;
      for (const auto& e : ts) (e.sign > 0 ? pos : neg_)++;
      return pos == neg_;
    }
    case TractId::F2:
      return ts.size() % 2 == 0;
    case TractId::F3: {
      long d = 0;
      for (const auto& e : ts) d += e.sign;
      return ((d % 3) + 3) % 3 == 0;
    }
    case TractId::S: {
      bool pos = false, neg_ = false;
      for (const auto& e : ts) (e.sign > 0 ? pos : neg_) = true;
      return pos && neg_;
    }
    case TractId::T0:
    case TractId::T0Z: {
      mpq_class mx = ts.front().q;
      for (const auto& e : ts) mx = std::max(mx, e.q);
      int hits = 0;
      for (const auto& e : ts)
        if (e.q == mx && ++hits >= 2) return true;
      return false;
    }
    case TractId::T1: {
      if (ts.size() < 2) return false;
      mpq_class mx = ts.front().q, sum = 0;
      for (const auto& e : ts) {
        mx = std::max(mx, e.q);
        sum += e.q;
      }
      return 2 * mx <= sum;  // side lengths of a possibly degenerate polygon
    }
    case TractId::Tinf: {
      if (ts.size() >= 3) return true;
      return ts.size() == 2 && ts[0].q == ts[1].q;
    }
  }
  return false;
}

struct TractMorphism {
  TractId source;
  TractId target;
  std::function<TractElement(const TractElement&)> unit_map;

  TractElement operator()(const TractElement& e) const {
    if (e.tract != source)
      throw Error(ErrorKind::morphism_mismatch, "element not in source tract");
    if (e.zero) return TractElement::make_zero(target);
    return unit_map(e);
  }
};

namespace detail {

// A finite family of generating null relations per tract, used to re-check
// null preservation when a morphism is built.
inline std::vector<FormalSum> null_generators(TractId t) {
  std::vector<FormalSum> out;
  auto sum_of = [&](std::initializer_list<TractElement> es) {
    FormalSum s(t);
    for (const auto& e : es) s.push(e);
    out.push_back(std::move(s));
  };
  TractElement one = TractElement::one(t);
  switch (t) {
    case TractId::K:
      sum_of({one, one});
      sum_of({one, one, one});
      break;
    case TractId::Fpm:
      sum_of({one, neg(one)});
      sum_of({one, one, neg(one), neg(one)});
      break;
    case TractId::F2:
      sum_of({one, one});
      break;
    case TractId::F3:
      sum_of({one, neg(one)});
      sum_of({one, one, one});
      break;
    case TractId::S:
      sum_of({one, neg(one)});
      sum_of({one, one, neg(one)});
      break;
    case TractId::T0:
    case TractId::T0Z: {
      auto e0 = TractElement::tropical(t, 0);
      auto e1 = TractElement::tropical(t, 1);
      sum_of({e0, e0});
      sum_of({e1, e1, e0});
      break;
    }
    case TractId::T1: {
      auto v = [&](int k) { return TractElement::triangular(t, k); };
      sum_of({v(1), v(1)});
      sum_of({v(3), v(4), v(5)});
      sum_of({v(1), v(1), v(2)});
      break;
    }
    case TractId::Tinf: {
      auto v = [&](int k) { return TractElement::triangular(t, k); };
      sum_of({v(2), v(2)});
      sum_of({v(1), v(2), v(3)});
      break;
    }
  }
  return out;
}

inline void validate_morphism(const TractMorphism& m) {
  TractElement img_one = m(TractElement::one(m.source));
  if (img_one != TractElement::one(m.target))
    throw Error(ErrorKind::no_morphism, "morphism does not fix 1");
  TractElement img_neg = m(neg(TractElement::one(m.source)));
  if (img_neg != neg(TractElement::one(m.target)))
    throw Error(ErrorKind::no_morphism, "morphism does not map -1 to -1");
  for (const FormalSum& rel : null_generators(m.source)) {
    FormalSum img(m.target);
    for (const auto& e : rel.terms) img.push(m(e));
    if (!is_null(img))
      throw Error(ErrorKind::no_morphism, "morphism does not preserve nulls");
  }
}

}  // namespace detail

// The catalog: identities, the terminal maps to k, the initial maps from
// fpm, and the inclusion t0z -> t0. Every returned morphism is re-validated
// against a generating family of null relations of the source.
inline std::optional<TractMorphism> morphism(TractId src, TractId dst) {
  TractMorphism m;
  m.source = src;
  m.target = dst;
  if (src == dst) {
    m.unit_map = [](const TractElement& e) { return e; };
  } else if (dst == TractId::K) {
    m.unit_map = [](const TractElement&) { return TractElement::one(TractId::K); };
  } else if (src == TractId::Fpm) {
    m.unit_map = [dst](const TractElement& e) {
      TractElement one = TractElement::one(dst);
      return e.sign > 0 ? one : neg(one);
    };
  } else if (src == TractId::T0Z && dst == TractId::T0) {
    m.unit_map = [](const TractElement& e) {
      return TractElement::tropical(TractId::T0, e.q);
    };
  } else {
    return std::nullopt;
  }
  detail::validate_morphism(m);
  return m;
}

inline TractMorphism require_morphism(TractId src, TractId dst) {
  auto m = morphism(src, dst);
  if (!m)
    throw Error(ErrorKind::no_morphism,
                std::string("no morphism ") + tract_name(src) + " -> " +
                    tract_name(dst));
  return *m;
}

// Unit string encodings: "0", "+1"/"-1" for sign-like tracts, "1" for k/f2,
// "p/q" (or "p") for the rational-valued families.
inline std::string unit_to_string(const TractElement& e) {
  if (e.zero) return "0";
  switch (e.tract) {
    case TractId::K:
    case TractId::F2:
      return "1";
    case TractId::Fpm:
    case TractId::F3:
    case TractId::S:
      return e.sign > 0 ? "+1" : "-1";
    default:
      // "0" is reserved for the zero element; the log-value-0 unit of the
      // tropical tracts is spelled "0/1"
      if (e.q == 0) return "0/1";
      return e.q.get_str();
  }
}

inline TractElement parse_unit(TractId t, const std::string& s) {
  if (s == "0") return TractElement::make_zero(t);
  switch (t) {
    case TractId::K:
    case TractId::F2:
      if (s == "1" || s == "+1") return TractElement::one(t);
      throw Error(ErrorKind::malformed_input, "bad unit '" + s + "'");
    case TractId::Fpm:
    case TractId::F3:
    case TractId::S:
      if (s == "1" || s == "+1") return TractElement::make_sign(t, 1);
      if (s == "-1") return TractElement::make_sign(t, -1);
      throw Error(ErrorKind::malformed_input, "bad unit '" + s + "'");
    default: {
      mpq_class q;
      if (q.set_str(s, 10) != 0)
        throw Error(ErrorKind::malformed_input, "bad rational '" + s + "'");
      q.canonicalize();
      if (t == TractId::T1 || t == TractId::Tinf)
        return TractElement::triangular(t, q);
      return TractElement::tropical(t, q);
    }
  }
}

}  // namespace polytract
