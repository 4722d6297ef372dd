// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lpw/core.hpp"

using namespace lpw;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-3/2") == rat(-3, 2));
  CHECK(parse_rational("0.125") == rat(1, 8));
  CHECK(parse_rational("1e-3") == rat(1, 1000));
  CHECK(parse_rational(" 6/4 ") == rat(3, 2));
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("vector codes roundtrip") {
  RationalVector v{rat(1, 2), rat(-3)};
  CHECK(decode_vector(encode_vector(v)) == v);
  CHECK(encode_vector(RationalVector{}) == 0);
  CHECK(decode_vector(0).is_zero());
  // trailing zeros are dropped
  CHECK(encode_vector(std::vector<Rational>{1, 0, 0}) == encode_vector(std::vector<Rational>{1}));
}

TEST_CASE("combine works on codes alone") {
  Nat m = encode_vector(RationalVector{1});
  Nat n = encode_vector(RationalVector{0, 1});
  CHECK(decode_vector(combine(2, m, n)) == RationalVector{2, 1});
}

TEST_CASE("vector decoding is total and injective on small codes") {
  std::map<RationalVector, Nat> seen;
  for (long c = 0; c < 5000; ++c) {
    RationalVector v = decode_vector(c);
    Nat back = encode_vector(v);
    // Every decoded vector re-encodes to a code that decodes to itself.
    CHECK(decode_vector(back) == v);
  }
}

TEST_CASE("random vector roundtrip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30), idx(0, 40);
  for (int t = 0; t < 300; ++t) {
    RationalVector v;
    int n = static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) v.set(idx(rng), rat(num(rng), den(rng)));
    CHECK(decode_vector(encode_vector(v)) == v);
  }
}

TEST_CASE("membership certification") {
  CHECK(certify_membership({1, 1}, {rat(1, 2), rat(3, 2)}) == Membership::Inside);
  CHECK(certify_membership({1, 1}, {1, 2}) == Membership::Outside);
  CHECK(certify_membership({rat(99, 100), rat(101, 100)}, {rat(1, 2), 1}) == Membership::Unknown);
  CHECK(certify_membership({3, 4}, {0, 1}) == Membership::Outside);
}

TEST_CASE("membership refinement is monotone") {
  OpenInterval I{rat(1, 3), rat(2, 3)};
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    Rational x = rat(static_cast<long>(rng() % 1000), 1000);
    Enclosure e{x - rat(1, 5), x + rat(1, 5)};
    Membership prev = certify_membership(e, I);
    for (int i = 0; i < 12; ++i) {
      e = {x - (x - e.lo) / 2, x + (e.hi - x) / 2};
      Membership m = certify_membership(e, I);
      if (prev != Membership::Unknown) CHECK(m == prev);
      prev = m;
    }
  }
}

TEST_CASE("pairing") {
  CHECK(unpair(pair(0, 0)) == std::make_pair(Nat(0), Nat(0)));
  CHECK(unpair(pair(7, 5)) == std::make_pair(Nat(7), Nat(5)));
  CHECK(pair23(1, 2) == 18);
  CHECK(unpair23(18) == std::make_pair(1ul, 2ul));
  CHECK_FALSE(unpair23(5).has_value());
  for (long n = 0; n < 2000; ++n) {
    auto [i, j] = unpair(n);
    CHECK(pair(i, j) == n);
  }
}

TEST_CASE("interval codes form a bijection onto dyadic intervals") {
  for (long c = 0; c < 3000; ++c) {
    OpenInterval I = decode_interval(c);
    REQUIRE(I.lo < I.hi);
    CHECK(encode_interval(I) == c);
  }
  OpenInterval J{rat(7, 8), rat(9, 8)};
  CHECK(decode_interval(encode_interval(J)) == J);
  CHECK_THROWS_AS(encode_interval({rat(9, 10), rat(11, 10)}), Error);
}

TEST_CASE("dyadic cover strictly contains the enclosure") {
  Enclosure e{rat(1, 3), rat(1, 2)};
  OpenInterval I = dyadic_cover(e, 10);
  CHECK(I.lo < e.lo);
  CHECK(e.hi < I.hi);
  CHECK(I.hi - I.lo <= e.width() + pow2(-8) + pow2(-9));
}

TEST_CASE("ball and node codes") {
  Ball b{RationalVector{1, rat(-1, 3)}, rat(5, 7)};
  Ball c = decode_ball(encode_ball(b));
  CHECK(c.center == b.center);
  CHECK(c.radius == b.radius);
  for (Node nu : {Node{}, Node{0}, Node{3, 0, 2}, Node{0, 0, 1}}) CHECK(decode_node(encode_node(nu)) == nu);
  CHECK(is_prefix({1}, {1, 2}));
  CHECK_FALSE(is_prefix({2}, {1, 2}));
}

TEST_CASE("powers are outward enclosures") {
  Exponent p3(3);
  CHECK(abs_pow(rat(-1, 2), p3, 30) == Enclosure::point(rat(1, 8)));
  Exponent half(rat(3, 2));
  Enclosure e = abs_pow(2, half, 40);
  // 2^{3/2} = 2 sqrt 2; check against squares exactly
  CHECK(e.lo * e.lo <= 8);
  CHECK(e.hi * e.hi >= 8);
  CHECK(width_at_most(e, 40));
  Enclosure r = refine_to(30, [&](long prec) { return root_at(Enclosure::point(rat(1, 2)), 3, prec); });
  CHECK(ipow(r.lo, 3) <= rat(1, 2));
  CHECK(ipow(r.hi, 3) >= rat(1, 2));
}

TEST_CASE("enclosure arithmetic contains the true results") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto draw = [&] { return rat(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 17)); };
    Rational a = draw(), b = draw(), da = rat(1 + static_cast<long>(rng() % 5), 10), db = rat(1, 7);
    Enclosure A{a - da, a + da}, B{b - db, b + db};
    CHECK((A + B).contains(a + b));
    CHECK((A - B).contains(a - b));
    CHECK((A * B).contains(a * b));
    CHECK(abs(A).contains(a < 0 ? Rational(-a) : a));
  }
}

TEST_CASE("exponent refiners") {
  Exponent p = Exponent::from_refiner(
      [](long k) {
        Rational lo = floor_dyadic(rat(5, 3), k + 1);
        return Enclosure{lo, lo + pow2(-k - 1)};
      },
      "5/3");
  CHECK(p.compare(2) == -1);
  CHECK(p.compare(1) == 1);
  CHECK(Exponent(2).is_two());
  CHECK_THROWS_AS(Exponent(rat(1, 2)), Error);
}
