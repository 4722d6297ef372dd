// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lpw/convexity.hpp"

using namespace lpw;

namespace {

NamePtr lpn_name(std::uint64_t n, const Rational& p) {
  return diagram_enumerate(standard_presentation(SpaceKind::LpN, n, p));
}

}  // namespace

TEST_CASE("delta at p = 2 solves (1 - d)^2 = 1 - eps^2/4") {
  Enclosure d = delta(2, 1, 50);
  CHECK(width_at_most(d, 50));
  // 1 - d = sqrt(3)/2 exactly, so squaring the endpoints brackets 3/4.
  CHECK((1 - d.lo) * (1 - d.lo) >= Rational(3, 4));
  CHECK((1 - d.hi) * (1 - d.hi) <= Rational(3, 4));
  CHECK(d.lo > Rational(1339745, 10000000));
  CHECK(d.hi < Rational(1339746, 10000000));
}

TEST_CASE("delta at eps = 2 is 1") {
  for (const Rational& p : {Rational(2), Rational(5, 2), Rational(3), Rational(7)}) {
    Enclosure d = delta(p, 2, 30);
    CHECK(d.contains(1));
  }
  // The implicit branch reaches the same value: (2 - 1)^p + 1^p = 2 at d = 1.
  CHECK(delta(Rational(3, 2), 2, 30).contains(1));
}

TEST_CASE("delta domain errors") {
  CHECK_THROWS_AS(delta(1, 1, 10), Error);
  CHECK_THROWS_AS(delta(Rational(1, 2), 1, 10), Error);
  CHECK_THROWS_AS(delta(3, 0, 10), Error);
  CHECK_THROWS_AS(delta(3, Rational(5, 2), 10), Error);
  try {
    delta(3, 3, 10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("implicit branch residual stays within 2^(3-k) of 2") {
  const long k = 30;
  for (const Rational& p : {Rational(11, 10), Rational(3, 2), Rational(19, 10), Rational(2)}) {
    for (const Rational& eps : {Rational(1, 4), Rational(1), Rational(7, 4)}) {
      Enclosure d = delta_implicit(p, eps, k);
      Enclosure g = hanner_sum(p, eps, d.mid(), k + 10);
      CHECK(g.lo > 2 - pow2(3 - k));
      CHECK(g.hi < 2 + pow2(3 - k));
    }
  }
}

TEST_CASE("both branches agree at p = 2") {
  for (const Rational& eps : {Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
    Enclosure a = delta_closed_form(2, eps, 32);
    Enclosure b = delta_implicit(2, eps, 32);
    CHECK(a.hi - b.lo < pow2(-30));
    CHECK(b.hi - a.lo < pow2(-30));
  }
}

TEST_CASE("delta is strictly monotone in p on each side of 2") {
  CHECK(certainly_less(delta(3, 1, 30), delta(Rational(5, 2), 1, 30)));
  CHECK(certainly_less(delta(Rational(6, 5), 1, 30), delta(Rational(9, 5), 1, 30)));
  for (const Rational& eps : {Rational(1, 3), Rational(1), Rational(5, 3)}) {
    for (long a = 11; a < 20; a += 2) {
      Rational p1(a, 10), p2(a + 1, 10);
      CHECK(certainly_less(delta(p1, eps, 30), delta(p2, eps, 30)));
      Rational q1 = 2 + Rational(a - 10, 4), q2 = q1 + Rational(1, 4);
      CHECK(certainly_less(delta(q2, eps, 30), delta(q1, eps, 30)));
    }
  }
}

TEST_CASE("delta accepts an exponent given by a refiner") {
  Exponent p = Exponent::from_refiner(
      [](long k) {
        Rational c = Rational(5, 2);
        return Enclosure{c - pow2(-k - 1), c + pow2(-k - 1)};
      },
      "5/2~");
  Enclosure a = delta(p, 1, 24), b = delta(Rational(5, 2), 1, 24);
  CHECK(overlaps(a, b));
}

TEST_CASE("Hanner witnesses certify on l^p_2") {
  for (const Rational& p : {Rational(3, 2), Rational(3)}) {
    for (const Rational& eps : {Rational(1, 2), Rational(1), Rational(3, 2)}) {
      auto w = hanner_witnesses(p, eps, 20);
      CHECK(w.certificate.unit_norms);
      CHECK(w.certificate.difference);
      CHECK(w.certificate.defect);
    }
  }
}

TEST_CASE("Hanner witnesses for p = 3 have the closed-form shape") {
  auto w = hanner_witnesses(3, 1, 20);
  CHECK(w.u.get(1) == Rational(1, 2));
  CHECK(w.v.get(1) == Rational(-1, 2));
  CHECK(w.u.get(0) == w.v.get(0));
  // 1 - delta(3,1) = (7/8)^(1/3).
  Rational c = w.u.get(0);
  CHECK(c * c * c > Rational(7, 8) - pow2(-18));
  CHECK(c * c * c < Rational(7, 8) + pow2(-18));
}

TEST_CASE("Hanner witnesses at p = 2, eps = 2 are antipodal") {
  auto w = hanner_witnesses(2, 2, 20);
  CHECK(w.u == (Rational(-1) * w.v));
  CHECK(w.certificate.all());
}

TEST_CASE("a perturbed delta breaks the certificate") {
  Rational d = delta(3, 1, 30).mid() + Rational(1, 10);
  RationalVector u{1 - d, Rational(1, 2)}, v{1 - d, Rational(-1, 2)};
  auto c = certify_hanner(3, 1, u, v, 20);
  CHECK_FALSE(c.unit_norms);
  CHECK_FALSE(c.all());
}

TEST_CASE("cut step accepts exponents above p on the lower branch") {
  auto f = lpn_name(2, Rational(3, 2));
  CHECK(exponent_cut_step(f, Rational(9, 5), 20000) == CutVerdict::AcceptedIntoY);
  // Soundness: nothing at or below p.
  for (const Rational& r : {Rational(11, 10), Rational(7, 5), Rational(3, 2)})
    CHECK(exponent_cut_step(f, r, 20000) == CutVerdict::NotYet);
}

TEST_CASE("cut step on l^3_2 accepts (2,3) and nothing above 3") {
  auto f = lpn_name(2, 3);
  CHECK(exponent_cut_step(f, Rational(5, 2), 20000) == CutVerdict::AcceptedIntoY);
  CHECK(exponent_cut_step(f, Rational(7, 2), 20000) == CutVerdict::NotYet);
  CHECK(exponent_cut_step(f, 3, 20000) == CutVerdict::NotYet);
}

TEST_CASE("cut step acceptance is monotone in stage") {
  auto f = lpn_name(2, Rational(3, 2));
  bool seen = false;
  for (std::uint64_t stage : {10u, 100u, 400u, 1000u, 4000u, 20000u}) {
    bool acc = exponent_cut_step(f, Rational(9, 5), stage) == CutVerdict::AcceptedIntoY;
    if (seen) CHECK(acc);
    seen = seen || acc;
  }
  CHECK(seen);
}

TEST_CASE("estimate_exponent recovers p on l^p_2") {
  for (const Rational& p : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
    auto est = estimate_exponent(lpn_name(2, p), Rational(1, 20), 100000);
    INFO("p = " << to_string(p) << " range [" << to_double(est.lo) << ", " << to_double(est.hi) << "]");
    CHECK(est.determined);
    CHECK(est.lo <= p);
    CHECK(p <= est.hi);
    CHECK(est.used <= 100000);
  }
}

TEST_CASE("estimate_exponent on l^1: right cut takes every grid point") {
  auto est = estimate_exponent(lpn_name(2, 1), Rational(1, 20), 100000);
  CHECK(est.right.accepted.size() == 31);
  CHECK(est.lo == 1);
}

TEST_CASE("estimate_exponent never excludes p at small budgets") {
  for (std::uint64_t budget : {50u, 300u, 1500u}) {
    auto est = estimate_exponent(lpn_name(2, 3), Rational(1, 20), budget);
    for (const auto& c : est.candidates)
      if (est.candidates.size() == 1) {
        CHECK(c.lo <= 3);
        CHECK(3 <= c.hi);
      }
  }
}

TEST_CASE("estimate_exponent on an empty name is indeterminate") {
  auto est = estimate_exponent(empty_name(), Rational(1, 20), 1000);
  CHECK_FALSE(est.determined);
}

TEST_CASE("parallelogram check") {
  auto l1 = hilbert_check(lpn_name(2, 1), 2000);
  REQUIRE(l1.violation);
  CHECK(l1.witness->tau0 == RationalVector::unit(0));
  CHECK(l1.witness->tau1 == RationalVector::unit(1));

  CHECK_FALSE(hilbert_check(name_of_index(1), 3000).violation);
  CHECK_FALSE(hilbert_check(name_of_index(4), 3000).violation);
  CHECK(hilbert_check(name_of_index(2), 3000).violation);
}

TEST_CASE("Hilbert dimension by Gram-Schmidt") {
  auto l22 = standard_presentation(SpaceKind::LpN, 2, 2);
  auto d = hilbert_dimension(*l22, 5, 100);
  CHECK(d.kind == DimensionKind::Exactly);
  CHECK(d.n == 2);

  auto l2 = standard_presentation(SpaceKind::Lp, std::nullopt, 2);
  for (std::uint64_t n : {1u, 4u, 9u}) {
    auto r = hilbert_dimension(*l2, n, 100);
    CHECK(r.kind == DimensionKind::AtLeast);
    CHECK(r.n == n);
  }

  // L^2[0,1]: the heap intervals are dependent (v_0 = v_1 + v_2), but the
  // dimension still grows without bound.
  auto L2 = standard_presentation(SpaceKind::Lp01, std::nullopt, 2);
  CHECK(hilbert_dimension(*L2, 6, 100).kind == DimensionKind::AtLeast);

  auto zero = measure_backed({}, 2);
  auto z = hilbert_dimension(*zero, 3, 100);
  CHECK(z.kind == DimensionKind::Exactly);
  CHECK(z.n == 0);

  auto l32 = standard_presentation(SpaceKind::LpN, 2, 3);
  CHECK_THROWS_AS(hilbert_dimension(*l32, 3, 100), Error);
}
