// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lpw/disintegration.hpp"

using namespace lpw;

TEST_CASE("disjointness identity") {
  auto l3 = standard_presentation(SpaceKind::Lp, std::nullopt, 3);
  auto e = [](std::uint64_t j) { return RationalVector::unit(j); };
  CHECK(lamperti_test(*l3, e(0), e(1), 3, 30) == Support::Disjoint);
  CHECK(lamperti_test(*l3, e(0), e(0), 3, 30) == Support::NotDisjoint);
  auto l2 = standard_presentation(SpaceKind::Lp, std::nullopt, 2);
  CHECK_THROWS_AS(lamperti_test(*l2, e(0), e(1), 2, 30), Error);
  // an exponent other than the presentation's
  auto L32 = standard_presentation(SpaceKind::Lp01, std::nullopt, rat(3, 2));
  CHECK(lamperti_test(*L32, e(1), e(2), rat(3, 2), 30) == Support::Disjoint);
  CHECK(lamperti_test(*L32, e(1), e(0), rat(3, 2), 30) == Support::NotDisjoint);
}

TEST_CASE("formal additivity") {
  auto l1 = standard_presentation(SpaceKind::Lp, std::nullopt, 1);
  auto e = [](std::uint64_t j) { return RationalVector::unit(j); };
  CHECK(formal_p_additivity(*l1, {e(0), e(1), e(2)}, 1, 20).verdict == Support::Disjoint);
  auto bad = formal_p_additivity(*l1, {e(0), e(0)}, 1, 20);
  CHECK(bad.verdict == Support::NotDisjoint);
  REQUIRE(bad.witness.size() == 2);
  CHECK(bad.witness[1] == -1);
  CHECK(formal_p_additivity(*l1, {e(0)}, 1, 20).verdict == Support::Disjoint);
  auto l3 = standard_presentation(SpaceKind::Lp, std::nullopt, 3);
  CHECK(formal_p_additivity(*l3, {e(0), e(1) + e(2), e(4)}, 3, 20).verdict == Support::Disjoint);
}

TEST_CASE("disintegrations of measure descriptions") {
  SUBCASE("two unit atoms") {
    MeasureDescription d{{1, 1}, 0};
    auto pres = measure_backed(d, 3);
    auto tree = build_disintegration(d, 5);
    REQUIRE(tree.size() == 3);
    CHECK(pres->ppow(tree.at({}).vec, 10) == Enclosure::point(2));
    for (auto nu : tree.children({})) {
      CHECK(tree.at(nu).terminal);
      CHECK(pres->norm(tree.at(nu).vec, 10) == Enclosure::point(1));
    }
  }
  SUBCASE("nonatomic part splits dyadically") {
    MeasureDescription d{{}, 1};
    auto pres = measure_backed(d, 2);
    auto tree = build_disintegration(d, 3);
    CHECK(tree.size() == 15);
    CHECK(tree.leaves().size() == 8);
    for (const auto& [nu, entry] : tree.nodes) {
      auto kids = tree.children(nu);
      if (kids.empty()) continue;
      Rational sum = 0;
      for (auto& mu : kids) sum += pres->ppow(tree.at(mu).vec, 10).lo;
      CHECK(sum == pres->ppow(entry.vec, 10).lo);
    }
  }
  SUBCASE("zero space") { CHECK(build_disintegration({}, 4).empty()); }
}

TEST_CASE("chains") {
  SUBCASE("l^p_2 gives two chains ending at atoms") {
    auto pres = standard_presentation(SpaceKind::LpN, 2, 3);
    auto tree = build_disintegration({{1, 1}, 0}, 4);
    auto dec = chain_decompose(tree, *pres);
    REQUIRE(dec.chains.size() == 2);
    CHECK_FALSE(dec.kappa_infinite);
    for (std::size_t n = 0; n < 2; ++n) {
      auto inf = chain_infimum(dec, n, tree, *pres);
      CHECK(inf.positive);
      CHECK(inf.norm_limit == Enclosure::point(1));
    }
  }
  SUBCASE("dyadic chains decay and their number grows with depth") {
    MeasureDescription d{{}, 1};
    auto pres = measure_backed(d, 2);
    std::size_t prev = 0;
    for (std::uint64_t depth : {1u, 2u, 3u, 4u}) {
      auto tree = build_disintegration(d, depth);
      auto dec = chain_decompose(tree, *pres);
      CHECK(dec.chains.size() > prev);
      prev = dec.chains.size();
      CHECK(dec.kappa_infinite);
      for (std::size_t n = 0; n < dec.chains.size(); ++n) {
        auto inf = chain_infimum(dec, n, tree, *pres);
        CHECK(inf.is_zero_certified);
        // norms along the chain never increase
        const auto& c = dec.chains[n];
        for (std::size_t i = 1; i < c.size(); ++i)
          CHECK(pres->ppow(tree.at(c[i]).vec, 10).lo <= pres->ppow(tree.at(c[i - 1]).vec, 10).lo);
      }
    }
  }
  SUBCASE("single node") {
    auto pres = measure_backed({{rat(1, 3)}, 0}, 3);
    auto tree = build_disintegration({{rat(1, 3)}, 0}, 3);
    auto dec = chain_decompose(tree, *pres);
    REQUIRE(dec.chains.size() == 1);
    CHECK(dec.chains[0] == std::vector<Node>{Node{}});
    // limit is (1/3)^{1/3}
    auto inf = chain_infimum(dec, 0, tree, *pres, 30);
    CHECK(ipow(inf.norm_limit.lo, 3) <= rat(1, 3));
    CHECK(ipow(inf.norm_limit.hi, 3) >= rat(1, 3));
  }
  SUBCASE("broken summativity is rejected") {
    auto pres = standard_presentation(SpaceKind::LpN, 2, 3);
    auto tree = build_disintegration({{1, 1}, 0}, 1);
    tree.nodes[{}].vec = RationalVector{1, 2};
    CHECK_THROWS_AS(chain_decompose(tree, *pres), Error);
  }
  SUBCASE("chains satisfy the almost norm-maximizing inequality") {
    MeasureDescription d{{rat(1, 2), rat(1, 5), rat(1, 7)}, rat(3, 4)};
    auto pres = measure_backed(d, rat(3, 2));
    auto tree = build_disintegration(d, 4);
    auto dec = chain_decompose(tree, *pres);
    std::size_t total = 0;
    for (const auto& c : dec.chains) {
      total += c.size();
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        Rational best = 0;
        for (auto& mu : tree.children(c[i])) best = std::max(best, pres->ppow(tree.at(mu).vec, 30).hi);
        CHECK(best <= pres->ppow(tree.at(c[i + 1]).vec, 30).lo + pow2(-static_cast<long>(c[i].size())));
      }
    }
    CHECK(total == tree.size());  // a partition
    int positive = 0;
    for (std::size_t n = 0; n < dec.chains.size(); ++n) positive += chain_infimum(dec, n, tree, *pres).positive;
    CHECK(positive == 3);
  }
}

TEST_CASE("antichains") {
  CHECK(antichain_dimension(build_disintegration({{1, 1, 1}, 0}, 3), 100).bounded);
  CHECK(antichain_dimension(build_disintegration({{1, 1, 1}, 0}, 3), 100).size == 3);
  auto dy = antichain_dimension(build_disintegration({{}, 1}, 4), 1000);
  CHECK_FALSE(dy.bounded);
  CHECK(dy.size == 16);
  auto one = antichain_dimension(build_disintegration({{1}, 0}, 3), 10);
  CHECK(one.bounded);
  CHECK(one.size == 1);
}

TEST_CASE("reconstruction") {
  SUBCASE("two halves") {
    Exponent p = 3;
    MeasureDescription d{{rat(1, 2), rat(1, 2)}, 0};
    auto pres = measure_backed(d, p);
    auto tree = build_disintegration(d, 2);
    auto rec = reconstruct_measure_space(tree, *pres);
    CHECK(rec.left.at({0}) == Enclosure::point(0));
    CHECK(rec.right.at({0}) == Enclosure::point(rat(1, 2)));
    CHECK(rec.left.at({1}) == Enclosure::point(rat(1, 2)));
    CHECK(rec.right.at({1}) == Enclosure::point(1));
    CHECK(rec.measure.atoms == std::vector<Rational>{rat(1, 2), rat(1, 2)});
  }
  SUBCASE("mixed space") {
    MeasureDescription d{{rat(1, 4), rat(1, 8)}, rat(5, 8)};
    auto pres = measure_backed(d, rat(3, 2));
    auto tree = build_disintegration(d, 3);
    auto rec = reconstruct_measure_space(tree, *pres);
    CHECK(rec.exact);
    CHECK(rec.measure.atoms == d.atoms);
    CHECK(rec.measure.nonatomic == d.nonatomic);
    for (const auto& [nu, e] : tree.nodes) {
      auto kids = tree.children(nu);
      if (kids.empty()) continue;
      CHECK(rec.left.at(kids.front()) == rec.left.at(nu));
      CHECK(rec.right.at(kids.back()) == rec.right.at(nu));
    }
  }
  SUBCASE("unnormalized root") {
    MeasureDescription d{{1, 1}, 0};
    CHECK_THROWS_AS(reconstruct_measure_space(build_disintegration(d, 1), *measure_backed(d, 2)), Error);
  }
}

TEST_CASE("span solving") {
  std::vector<RationalVector> basis{{1, 1}, {0, 1}};
  auto c = solve_in_span(basis, RationalVector{2, 5});
  REQUIRE(c);
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 3);
  CHECK_FALSE(solve_in_span(basis, RationalVector{0, 0, 1}));
}

TEST_CASE("lifting tree isomorphisms") {
  Exponent p = 3;
  MeasureDescription d{{1, 1}, 0};
  auto pres = measure_backed(d, p);
  auto tree = build_disintegration(d, 1);
  RationalVector v{rat(2, 3), rat(-5, 7)};
  SUBCASE("identity") {
    std::map<Node, Node> id;
    for (auto& [nu, e] : tree.nodes) id[nu] = nu;
    auto w = lift_isomorphism(tree, tree, id, *pres, *pres, v, 30);
    CHECK(w.image == v);
  }
  SUBCASE("swap") {
    std::map<Node, Node> sw{{{}, {}}, {{0}, {1}}, {{1}, {0}}};
    auto w = lift_isomorphism(tree, tree, sw, *pres, *pres, v, 30);
    CHECK(w.image == RationalVector{rat(-5, 7), rat(2, 3)});
    CHECK(overlaps(w.norm_a, w.norm_b));
  }
  SUBCASE("norm violation") {
    MeasureDescription h{{1, rat(1, 8)}, 0};
    auto other = measure_backed(h, p);
    auto tree_b = build_disintegration(h, 1);
    std::map<Node, Node> m{{{}, {}}, {{0}, {0}}, {{1}, {1}}};
    CHECK_THROWS_AS(lift_isomorphism(tree, tree_b, m, *pres, *other, v, 30), Error);
  }
  SUBCASE("order violation") {
    std::map<Node, Node> m{{{}, {0}}, {{0}, {}}};
    CHECK_THROWS_AS(lift_isomorphism(tree, tree, m, *pres, *pres, v, 30), Error);
  }
}

TEST_CASE("tree names carry balls around node vectors") {
  MeasureDescription d{{1, 1}, 0};
  auto pres = measure_backed(d, 3);
  auto tree = build_disintegration(d, 1);
  auto g = tree_name(tree, pres);
  for (long i = 0; i < 500; ++i) {
    auto pr = g->at(i);
    REQUIRE(pr);
    Node nu = decode_node(pr->first);
    REQUIRE(tree.contains(nu));
    Ball b = decode_ball(pr->second);
    CHECK(pres->norm(b.center - tree.at(nu).vec, 40).hi < b.radius);
  }
  CHECK(tree_name(VectorTree{}, pres)->length() == 0u);
}
