// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "lpw/disintegration.hpp"
#include "lpw/orders.hpp"

using namespace lpw;

namespace {

std::vector<std::vector<bool>> chain_matrix(const std::vector<int>& rank) {
  std::size_t n = rank.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) m[s][t] = rank[s] <= rank[t];
  return m;
}

// Order-preserving and injective on the first n elements, checked pairwise.
void check_faithful_prefix(const OrderPtr& ord, std::uint64_t n) {
  auto g = embedding_trace(ord, n);
  for (std::uint64_t s = 0; s < g.size(); ++s)
    for (std::uint64_t t = 0; t < g.size(); ++t) {
      if (s == t) continue;
      REQUIRE(g[s] != g[t]);
      REQUIRE(ord->leq(s, t) == (g[s] < g[t]));
    }
}

}  // namespace

TEST_CASE("enumerations of the rationals") {
  CHECK(stern_brocot(0) == Rational(1, 2));
  CHECK(stern_brocot(1) == Rational(1, 3));
  CHECK(stern_brocot(2) == Rational(2, 3));
  CHECK(stern_brocot(3) == Rational(1, 4));
  CHECK(stern_brocot(6) == Rational(3, 4));
  CHECK(calkin_wilf(0) == 1);
  CHECK(calkin_wilf(1) == Rational(1, 2));
  CHECK(calkin_wilf(2) == 2);
  CHECK(calkin_wilf(4) == Rational(3, 2));
  // Each enumeration is injective on a long prefix and stays in range.
  std::set<Rational> a, b;
  for (std::uint64_t i = 0; i < 4000; ++i) {
    Rational q = stern_brocot(i);
    CHECK(q > 0);
    CHECK(q < 1);
    a.insert(q);
    b.insert(calkin_wilf(i));
  }
  CHECK(a.size() == 4000);
  CHECK(b.size() == 4000);
}

TEST_CASE("embedding of omega and omega*") {
  auto g = embedding_trace(omega_order(), 6);
  for (std::uint64_t s = 0; s < 6; ++s) CHECK(g[s] == Rational(static_cast<unsigned long>(s)));
  auto h = embedding_trace(omega_star_order(), 6);
  for (std::uint64_t s = 0; s < 6; ++s) CHECK(h[s] == -Rational(static_cast<unsigned long>(s)));
}

TEST_CASE("embedding of eta uses midpoints and dyadic values") {
  auto g = embedding_trace(eta_order(), 7);
  // 1/2 -> 0, 1/3 -> -1, 2/3 -> 1, 1/4 -> -2, 2/5 -> -1/2, 3/5 -> 1/2, 3/4 -> 2.
  std::vector<Rational> want{0, -1, 1, -2, Rational(-1, 2), Rational(1, 2), 2};
  CHECK(g == want);
  for (const auto& q : embedding_trace(eta_order(), 200)) CHECK(is_dyadic(q));
}

TEST_CASE("embedding is faithful on fixture prefixes") {
  check_faithful_prefix(omega_order(), 200);
  check_faithful_prefix(omega_star_order(), 200);
  check_faithful_prefix(eta_order(), 200);
  check_faithful_prefix(eta_plus_order(3), 200);
  check_faithful_prefix(matrix_order(chain_matrix({3, 0, 4, 1, 2})), 5);
}

TEST_CASE("persistent adjacencies are never filled later") {
  // An adjacency of the first 25 values that is still there at 100 stays
  // empty through 400.
  for (const auto& ord : {eta_order(), eta_plus_order(2), omega_order()}) {
    auto g = embedding_trace(ord, 400);
    std::vector<Rational> a(g.begin(), g.begin() + 25), b(g.begin(), g.begin() + 100);
    auto early = adjacencies(a);
    auto mid = adjacencies(b);
    std::set<std::pair<Rational, Rational>> kept(mid.begin(), mid.end());
    for (const auto& pr : early) {
      if (!kept.count(pr)) continue;
      for (const auto& v : g) CHECK_FALSE((pr.first < v && v < pr.second));
    }
  }
}

TEST_CASE("invalid diagrams are rejected") {
  std::vector<std::vector<bool>> sym{{true, true}, {true, true}};
  CHECK_THROWS_AS(faithful_embed(matrix_order(sym), 1), Error);
  std::vector<std::vector<bool>> none{{true, false}, {false, true}};
  try {
    faithful_embed(matrix_order(none), 1);
    FAIL("expected InvalidOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidOrder);
  }
  // A 3-cycle: 0 < 1, 1 < 2, 2 < 0.
  std::vector<std::vector<bool>> cyc{{true, true, false}, {false, true, true}, {true, false, true}};
  CHECK_THROWS_AS(embedding_trace(matrix_order(cyc), 3), Error);
  std::vector<std::vector<bool>> irreflexive{{false}};
  CHECK_THROWS_AS(faithful_embed(matrix_order(irreflexive), 0), Error);
}

TEST_CASE("finite orders give m - 1 atoms and no diffuse part") {
  for (int m = 2; m <= 6; ++m) {
    std::vector<int> rank;
    for (int i = 0; i < m; ++i) rank.push_back((i * 3) % m == i ? i : (i * 3) % m);
    std::set<int> distinct(rank.begin(), rank.end());
    if (static_cast<int>(distinct.size()) != m) {
      rank.clear();
      for (int i = 0; i < m; ++i) rank.push_back(m - 1 - i);
    }
    auto pres = order_to_space(matrix_order(chain_matrix(rank)), 3);
    auto sum = pres->summary(100);
    REQUIRE(sum);
    CHECK(sum->exact);
    CHECK(sum->atoms.size() == static_cast<std::size_t>(m - 1));
    CHECK(sum->nonatomic == 0);
    CHECK_FALSE(sum->atoms_infinite);
  }
}

TEST_CASE("two elements: one interval of length one") {
  auto pres = order_to_space(omega_order(), 2);
  (void)pres;
  auto two = order_to_space(value_order({0, 5}), 2);
  auto sum = two->summary(10);
  REQUIRE(sum);
  CHECK(sum->atoms.size() == 1);
  // G maps the two elements to 0 and 1.
  CHECK(sum->atoms[0] == 1);
  // v_{1+<0,1>} is the indicator of (0,1): norm 1; its reverse is 0.
  std::uint64_t j = 1 + pair(Nat(0), Nat(1)).get_ui();
  std::uint64_t r = 1 + pair(Nat(1), Nat(0)).get_ui();
  CHECK(two->norm(RationalVector::unit(j), 20).contains(1));
  CHECK(two->norm(RationalVector::unit(r), 20).contains(0));
  CHECK(two->norm(RationalVector::unit(0), 20).contains(0));
  CHECK_THROWS_AS(order_to_space(value_order({7}), 2), Error);
}

TEST_CASE("interval norms are exact p-th roots of lengths") {
  auto pres = order_to_space(omega_order(), 3);
  // (G(0), G(2)) = (0, 2): ||1_(0,2)||^3 = 2.
  std::uint64_t j = 1 + pair(Nat(0), Nat(2)).get_ui();
  CHECK(pres->ppow(RationalVector::unit(j), 30).contains(2));
}

TEST_CASE("infinite order summaries") {
  auto omega = order_to_space(omega_order(), 3)->summary(1024);
  REQUIRE(omega);
  CHECK_FALSE(omega->exact);
  CHECK(omega->atoms_infinite);
  CHECK(omega->nonatomic == 0);

  auto eta = order_to_space(eta_order(), 3)->summary(1024);
  REQUIRE(eta);
  CHECK(eta->atoms.empty());
  CHECK(eta->nonatomic > 0);
  CHECK_FALSE(eta->atoms_infinite);

  for (std::uint64_t n : {2u, 3u, 4u}) {
    auto s = order_to_space(eta_plus_order(n), 3)->summary(1024);
    REQUIRE(s);
    CHECK(s->atoms.size() == n - 1);
    CHECK(s->nonatomic > 0);
    CHECK_FALSE(s->atoms_infinite);
  }
}

TEST_CASE("finite order disintegration: root over the adjacent intervals") {
  auto pres = order_to_space(value_order({3, 1, 2, 0}), 3);
  auto tree = pres->disintegration(4);
  REQUIRE(tree);
  CHECK(tree->children({}).size() == 3);
  // Values embed to -2, -1, -1/2, 0.
  CHECK(pres->ppow(tree->at({}).vec, 30).contains(2));
  Rational total = 0;
  for (const auto& k : tree->children({})) total += pres->ppow(tree->at(k).vec, 30).mid();
  CHECK(total == 2);
}

TEST_CASE("sigma03 gadget: prefix monotonicity and traces") {
  auto all = [](std::uint64_t) { return true; };
  auto yes = [](std::uint64_t, std::uint64_t, std::uint64_t) { return true; };
  auto g = gadget_sigma03(yes, all, 8);
  for (std::size_t s = 1; s < g.trace.size.size(); ++s) CHECK(g.trace.size[s] >= g.trace.size[s - 1]);
  for (std::size_t s = 0; s < g.trace.delta.size(); ++s) CHECK(g.trace.delta[s] == std::uint64_t{0});
  // Earlier stages are prefixes of later ones.
  auto h = gadget_sigma03(yes, all, 6);
  REQUIRE(h.points.size() <= g.points.size());
  CHECK(std::equal(h.points.begin(), h.points.end(), g.points.begin()));

  // Q true everywhere: a dense block in [0,1) whose largest gap shrinks.
  auto gap = [](std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    Rational best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) best = std::max(best, Rational(v[i] - v[i - 1]));
    return best;
  };
  CHECK(gap(g.points) < gap(h.points));
  CHECK(gap(g.points) <= pow2(-7));

  // Q false on row 0 only: after stage 0, delta moves off 0.
  auto row0 = [](std::uint64_t x, std::uint64_t, std::uint64_t) { return x != 0; };
  auto r = gadget_sigma03(row0, all, 8);
  CHECK(r.trace.delta[0] == std::uint64_t{0});
  for (std::size_t s = 1; s < r.trace.delta.size(); ++s) {
    REQUIRE(r.trace.delta[s]);
    CHECK(*r.trace.delta[s] >= 1);
  }
  // The block added at delta = 1 lives in [0, 1/2).
  for (const auto& q : r.points) CHECK(q < 1);
}

TEST_CASE("sigma03 gadget: A controls the block sizes") {
  auto evens = [](std::uint64_t a) { return a % 2 == 0; };
  auto yes = [](std::uint64_t, std::uint64_t, std::uint64_t) { return true; };
  auto g = gadget_sigma03(yes, evens, 5);
  for (std::size_t s = 0; s < g.trace.z.size(); ++s) CHECK(g.trace.z[s] % 2 == 0);
  // Stages with no growing row add nothing.
  auto no = [](std::uint64_t, std::uint64_t, std::uint64_t) { return false; };
  auto n = gadget_sigma03(no, evens, 5);
  for (std::size_t s = 1; s < n.trace.delta.size(); ++s) CHECK_FALSE(n.trace.delta[s]);
  CHECK(n.points.size() == n.trace.size[1]);
}

TEST_CASE("pi02 gadget") {
  auto yes = [](std::uint64_t, std::uint64_t) { return true; };
  auto g = gadget_pi02(yes, 3, 60);
  // Q true: every Calkin-Wilf term among the first 60 is present.
  std::set<Rational> pts(g.points.begin(), g.points.end());
  for (std::uint64_t i = 0; i < 60; ++i) CHECK(pts.count(calkin_wilf(i)));

  // Q false from x = 2 on: (0, 3) cap Q plus {3, 4, 5} with n = 3.
  auto stop = [](std::uint64_t x, std::uint64_t) { return x < 2; };
  auto h = gadget_pi02(stop, 3, 60);
  std::set<Rational> hp(h.points.begin(), h.points.end());
  CHECK(hp.count(3));
  CHECK(hp.count(5));
  CHECK_FALSE(hp.count(6));
  for (const auto& q : h.points) CHECK((q < 3 || q == 3 || q == 4 || q == 5));
  for (std::uint64_t i = 0; i < 60; ++i)
    if (calkin_wilf(i) < 3) CHECK(hp.count(calkin_wilf(i)));
  // Stages only ever add points.
  auto early = gadget_pi02(stop, 3, 20);
  for (const auto& q : early.points) CHECK(hp.count(q));
  CHECK(std::equal(early.points.begin(), early.points.end(), h.points.begin()));
}

TEST_CASE("l^p gadget: points and norms") {
  auto yes = [](std::uint64_t, std::uint64_t) { return true; };
  auto g = gadget_lp_space(yes, 3);
  auto e = [&](std::uint64_t x, std::uint64_t y) { return pair(Nat(static_cast<unsigned long>(x)), Nat(static_cast<unsigned long>(y))).get_ui(); };
  // ||R<x,0>||^3 = 2.
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(g->ppow(RationalVector::unit(e(x, 0)), 30).contains(2));
  // Q true: R<x, y+2> = e_{3x+1} for y >= 1, so the norm is 1; at y = 0 it is
  // still R<x,1>.
  CHECK(g->ppow(RationalVector::unit(e(1, 2)), 30).contains(2));
  CHECK(g->ppow(RationalVector::unit(e(1, 3)), 30).contains(1));
  CHECK(g->ppow(RationalVector::unit(e(1, 7)), 30).contains(1));
  // e_{3x} itself is in the span: R<x,0> - R<x,3>.
  RationalVector ex = RationalVector::unit(e(2, 0)) - RationalVector::unit(e(2, 3));
  CHECK(g->ppow(ex, 30).contains(1));

  auto row0 = [](std::uint64_t x, std::uint64_t) { return x != 0; };
  auto h = gadget_lp_space(row0, Rational(3, 2));
  for (std::uint64_t y = 2; y < 12; ++y) CHECK(h->ppow(RationalVector::unit(e(0, y)), 30).contains(2));
  CHECK_FALSE(h->separation(0, 1000));
  CHECK(h->separation(1, 1) == std::uint64_t{1});

  CHECK_THROWS_AS(gadget_lp_space(yes, 2), Error);
}

TEST_CASE("l^p gadget: snapshots are disintegrations") {
  auto yes = [](std::uint64_t, std::uint64_t) { return true; };
  auto g = gadget_lp_space(yes, 3);
  auto t = g->snapshot(5);
  CHECK(t.prefix_closed());
  CHECK(t.children({}).size() == 5);
  for (std::uint64_t x = 0; x < 5; ++x) {
    auto kids = t.children({x});
    REQUIRE(kids.size() == 3);
    RationalVector sum;
    for (const auto& k : kids) sum += t.at(k).vec;
    // Pieces add up to the block vector in the space.
    CHECK(g->norm(sum - t.at({x}).vec, 30).hi < pow2(-25));
    // The pieces are disjoint unit multiples.
    CHECK(lamperti_test(*g, t.at(kids[0]).vec, t.at(kids[2]).vec, 3, 30) == Support::Disjoint);
  }
  auto row0 = [](std::uint64_t x, std::uint64_t) { return x != 0; };
  auto u = gadget_lp_space(row0, 3)->snapshot(6);
  CHECK(u.children({0}).empty());
  CHECK(u.children({1}).size() == 3);
}

TEST_CASE("l^p gadget tree name") {
  auto yes = [](std::uint64_t, std::uint64_t) { return true; };
  auto g = gadget_lp_space(yes, 3);
  auto name = g->tree_name();
  // Position <1, 2k> is node (0) with a ball of radius 2^-k.
  auto pr = name->at(keyed_position(1, 6));
  REQUIRE(pr);
  CHECK(decode_node(pr->first) == Node{0});
  Ball b = decode_ball(pr->second);
  CHECK(b.radius == pow2(-6));
  // Node (0, 1) appears once k >= 1.
  auto early = name->at(keyed_position(3, 0));
  auto later = name->at(keyed_position(3, 2));
  CHECK(decode_node(early->first).empty());
  CHECK(decode_node(later->first) == Node{0, 1});
  // The root ball contains the root: centers at two levels are close.
  Ball r0 = decode_ball(name->at(keyed_position(0, 4))->second);
  Ball r1 = decode_ball(name->at(keyed_position(0, 12))->second);
  CHECK(g->norm(r0.center - r1.center, 20).hi < r0.radius + r1.radius);
}
