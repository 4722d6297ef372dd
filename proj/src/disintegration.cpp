// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/disintegration.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace lpw {

const char* to_string(Support s) {
  switch (s) {
    case Support::Disjoint: return "Disjoint";
    case Support::NotDisjoint: return "NotDisjoint";
    case Support::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// ||v||^p for an exponent that need not be the presentation's own.
Enclosure ppow_as(const Presentation& pres, const RationalVector& v, const Exponent& p, long k) {
  if (same_exponent(pres.exponent(), p)) return pres.ppow(v, k);
  if (v.is_zero()) return Enclosure::point(0);
  return refine_to(k, [&](long prec) { return pow_at(pres.norm_at(v, prec), p.at(prec), prec); });
}

bool lamperti_overlap(const Presentation& pres, const RationalVector& u, const RationalVector& v, const Exponent& p,
                      long k) {
  Enclosure lhs = ppow_as(pres, u + v, p, k) + ppow_as(pres, u - v, p, k);
  Enclosure rhs = Rational(2) * (ppow_as(pres, u, p, k) + ppow_as(pres, v, p, k));
  return overlaps(lhs, rhs);
}

}  // namespace

Support lamperti_test(const Presentation& pres, const RationalVector& u, const RationalVector& v, const Exponent& p,
                      long k) {
  if (p.is_two()) throw Error(ErrorCode::ExponentTwo, "the disjointness identity is vacuous at p = 2");
  if (!lamperti_overlap(pres, u, v, p, k)) return Support::NotDisjoint;
  return lamperti_overlap(pres, u, v, p, k + 8) ? Support::Disjoint : Support::NotDisjoint;
}

AdditivityResult formal_p_additivity(const Presentation& pres, const std::vector<RationalVector>& vectors,
                                     const Exponent& p, long k, int random_trials, std::uint64_t seed) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidInput, "empty vector list");
  if (vectors.size() == 1) return {Support::Disjoint, {}};
  std::vector<Enclosure> parts;
  for (const auto& v : vectors) parts.push_back(ppow_as(pres, v, p, k + 4));

  auto check = [&](const std::vector<Rational>& alpha, long prec) {
    RationalVector sum;
    Enclosure rhs = Enclosure::point(0);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      sum += alpha[j] * vectors[j];
      rhs = rhs + abs_pow(alpha[j], p, prec + 4) * (prec == k ? parts[j] : ppow_as(pres, vectors[j], p, prec + 4));
    }
    return overlaps(ppow_as(pres, sum, p, prec + 4), rhs);
  };

  std::vector<std::vector<Rational>> tests;
  std::size_t n = vectors.size();
  if (n <= 10) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      std::vector<Rational> a(n, Rational(1));
      for (std::size_t j = 1; j < n; ++j)
        if (mask >> (j - 1) & 1) a[j] = -1;
      tests.push_back(std::move(a));
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_trials; ++t) {
    std::vector<Rational> a(n);
    for (auto& x : a) x = rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5));
    tests.push_back(std::move(a));
  }
  for (const auto& a : tests) {
    if (!check(a, k) || !check(a, k + 8)) return {Support::NotDisjoint, a};
  }
  return {Support::Disjoint, {}};
}

// ---------------------------------------------------------------- trees

const TreeEntry& VectorTree::at(const Node& nu) const {
  auto it = nodes.find(nu);
  if (it == nodes.end()) throw Error(ErrorCode::InvalidInput, "node " + to_string(nu) + " is not in the tree");
  return it->second;
}

std::vector<Node> VectorTree::children(const Node& nu) const {
  std::vector<Node> out;
  Node lo = nu;
  lo.push_back(0);
  for (auto it = nodes.lower_bound(lo); it != nodes.end() && is_prefix(nu, it->first); ++it)
    if (it->first.size() == nu.size() + 1) out.push_back(it->first);
  return out;
}

std::vector<Node> VectorTree::leaves() const {
  std::vector<Node> out;
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    auto next = std::next(it);
    if (next == nodes.end() || !is_prefix(it->first, next->first)) out.push_back(it->first);
  }
  return out;
}

std::vector<Node> VectorTree::bfs() const {
  std::vector<Node> out;
  for (const auto& [nu, e] : nodes) out.push_back(nu);
  std::stable_sort(out.begin(), out.end(), [](const Node& a, const Node& b) { return a.size() < b.size(); });
  return out;
}

bool VectorTree::prefix_closed() const {
  for (const auto& [nu, e] : nodes) {
    if (nu.empty()) continue;
    Node parent(nu.begin(), nu.end() - 1);
    if (!nodes.count(parent)) return false;
  }
  return true;
}

bool VectorTree::has_frontier() const {
  for (const auto& nu : leaves())
    if (!nodes.at(nu).terminal) return true;
  return false;
}

VectorTree build_disintegration(const MeasureDescription& desc, std::uint64_t depth) {
  VectorTree tree;
  if (desc.is_zero()) return tree;
  const std::uint64_t atoms = desc.atoms.size();
  const bool diffuse = desc.nonatomic > 0;

  std::function<void(const Node&, std::uint64_t, std::uint64_t)> dyadic = [&](const Node& nu, std::uint64_t t,
                                                                             std::uint64_t left) {
    tree.nodes[nu] = TreeEntry{RationalVector::unit(atoms + t), false, true, 0};
    if (left == 0) return;
    Node a = nu, b = nu;
    a.push_back(0);
    b.push_back(1);
    dyadic(a, 2 * t + 1, left - 1);
    dyadic(b, 2 * t + 2, left - 1);
  };

  if (atoms + (diffuse ? 1 : 0) == 1) {
    if (atoms == 1) tree.nodes[{}] = TreeEntry{RationalVector::unit(0), true, false, 0};
    else dyadic({}, 0, depth);
    return tree;
  }
  RationalVector root;
  for (std::uint64_t i = 0; i < atoms; ++i) {
    root.set(i, 1);
    tree.nodes[{i}] = TreeEntry{RationalVector::unit(i), true, false, 0};
  }
  if (diffuse) {
    root.set(atoms, 1);
    dyadic({atoms}, 0, depth);
  }
  tree.nodes[{}] = TreeEntry{root, false, false, 0};
  return tree;
}

ChainDecomposition chain_decompose(const VectorTree& tree, const Presentation& pres) {
  ChainDecomposition dec;
  if (tree.empty()) return dec;
  if (!tree.prefix_closed()) throw Error(ErrorCode::NotADisintegration, "node set is not closed under prefixes");

  // Summativity wherever children are present.
  for (const auto& [nu, e] : tree.nodes) {
    auto kids = tree.children(nu);
    if (kids.empty()) continue;
    RationalVector diff = e.vec;
    Rational slack = e.error + pow2(-20);
    for (const auto& mu : kids) {
      diff -= tree.at(mu).vec;
      slack += tree.at(mu).error;
    }
    if (pres.norm(diff, 24).lo > slack)
      throw Error(ErrorCode::NotADisintegration, "node " + to_string(nu) + " is not the sum of its children");
  }

  std::deque<Node> starts{Node{}};
  while (!starts.empty()) {
    Node cur = starts.front();
    starts.pop_front();
    std::vector<Node> chain{cur};
    for (;;) {
      auto kids = tree.children(cur);
      if (kids.empty()) break;
      long k = static_cast<long>(cur.size()) + 12;
      std::vector<Enclosure> pw;
      Rational best_hi;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        pw.push_back(pres.ppow(tree.at(kids[i]).vec, k));
        if (i == 0 || pw[i].hi > best_hi) best_hi = pw[i].hi;
      }
      Rational slack = pow2(-static_cast<long>(cur.size()));
      std::size_t pick = kids.size();
      for (std::size_t i = 0; i < kids.size() && pick == kids.size(); ++i)
        if (best_hi <= pw[i].lo + slack) pick = i;
      if (pick == kids.size()) {
        pick = 0;
        for (std::size_t i = 1; i < kids.size(); ++i)
          if (pw[i].lo > pw[pick].lo) pick = i;
      }
      for (std::size_t i = 0; i < kids.size(); ++i)
        if (i != pick) starts.push_back(kids[i]);
      cur = kids[pick];
      chain.push_back(cur);
    }
    dec.chains.push_back(std::move(chain));
  }
  dec.kappa_infinite = tree.has_frontier();
  return dec;
}

ChainInfimum chain_infimum(const ChainDecomposition& dec, std::size_t n, const VectorTree& tree,
                           const Presentation& pres, long k) {
  if (n >= dec.chains.size()) throw Error(ErrorCode::InvalidInput, "chain index out of range");
  const Node& last = dec.chains[n].back();
  const TreeEntry& e = tree.at(last);
  ChainInfimum out;
  out.chain = n;
  Enclosure nrm = pres.norm(e.vec, k);
  if (e.terminal) {
    out.norm_limit = nrm;
    out.positive = nrm.lo > e.error;
  } else {
    // The chain continues below the snapshot; its norms only decrease.
    out.norm_limit = {0, nrm.hi + e.error};
    out.is_zero_certified = e.halving;
  }
  return out;
}

AntichainResult antichain_dimension(const VectorTree& tree, std::uint64_t budget) {
  if (tree.empty()) return {true, 0};
  auto leaves = tree.leaves();
  bool frontier = tree.has_frontier();
  if (tree.size() > budget || frontier) return {false, leaves.size()};
  return {true, leaves.size()};
}

Reconstruction reconstruct_measure_space(const VectorTree& tree, const Presentation& pres, long k) {
  Reconstruction rec;
  if (tree.empty()) return rec;
  Enclosure total = pres.ppow(tree.at({}).vec, k);
  if (!total.contains(1)) throw Error(ErrorCode::NotNormalized, "||root||^p = " + to_string(total) + ", expected 1");
  rec.left[{}] = Enclosure::point(0);
  rec.right[{}] = Enclosure::point(1);
  std::map<Node, Enclosure> len{{Node{}, Enclosure::point(1)}};
  for (const auto& nu : tree.bfs()) {
    const TreeEntry& e = tree.at(nu);
    bool top = e.halving && (nu.empty() || !tree.at(Node(nu.begin(), nu.end() - 1)).halving);
    if (top) rec.measure.nonatomic += len[nu].mid();
    auto kids = tree.children(nu);
    if (kids.empty()) {
      if (e.terminal) rec.measure.atoms.push_back(len[nu].mid());
      else if (!e.halving) rec.exact = false;
      continue;
    }
    Enclosure a = rec.left[nu];
    for (const auto& mu : kids) {
      Enclosure l = pres.ppow(tree.at(mu).vec, k);
      if (!l.is_point()) rec.exact = false;
      len[mu] = l;
      rec.left[mu] = a;
      a = a + l;
      rec.right[mu] = a;
    }
  }
  return rec;
}

std::optional<std::vector<Rational>> solve_in_span(const std::vector<RationalVector>& basis, const RationalVector& v) {
  std::set<std::uint64_t> coords;
  for (const auto& b : basis)
    for (const auto& [j, x] : b.entries()) coords.insert(j);
  for (const auto& [j, x] : v.entries()) coords.insert(j);
  const std::size_t cols = basis.size();
  std::vector<std::vector<Rational>> rows;
  for (auto j : coords) {
    std::vector<Rational> row(cols + 1);
    for (std::size_t c = 0; c < cols; ++c) row[c] = basis[c].get(j);
    row[cols] = v.get(j);
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t t = c; t <= cols; ++t) rows[i][t] -= f * rows[r][t];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][cols] != 0) return std::nullopt;
  std::vector<Rational> sol(cols);
  for (std::size_t i = 0; i < r; ++i) sol[pivot_col[i]] = rows[i][cols];
  return sol;
}

LiftWitness lift_isomorphism(const VectorTree& tree_a, const VectorTree& tree_b, const std::map<Node, Node>& match,
                             const Presentation& pres_a, const Presentation& pres_b, const RationalVector& v, long k) {
  for (const auto& [a, b] : match) {
    if (!tree_a.contains(a) || !tree_b.contains(b))
      throw Error(ErrorCode::NotAnIsomorphism, "match uses a node outside the trees");
  }
  for (const auto& [a1, b1] : match)
    for (const auto& [a2, b2] : match)
      if (is_prefix(a1, a2) != is_prefix(b1, b2))
        throw Error(ErrorCode::NotAnIsomorphism, "match breaks prefix order at " + to_string(a1) + ", " + to_string(a2));
  for (const auto& [a, b] : match) {
    Enclosure na = pres_a.norm(tree_a.at(a).vec, k), nb = pres_b.norm(tree_b.at(b).vec, k);
    if (!overlaps(na, nb))
      throw Error(ErrorCode::NotAnIsomorphism,
                  "norms differ at " + to_string(a) + ": " + to_string(na) + " vs " + to_string(nb));
  }
  std::vector<Node> leaves;
  std::vector<RationalVector> basis;
  for (const auto& nu : tree_a.leaves()) {
    if (!match.count(nu)) continue;
    leaves.push_back(nu);
    basis.push_back(tree_a.at(nu).vec);
  }
  auto coeffs = solve_in_span(basis, v);
  if (!coeffs) throw Error(ErrorCode::NotInSpan, "vector is not a combination of matched leaf vectors");
  LiftWitness w;
  for (std::size_t i = 0; i < leaves.size(); ++i) w.image += (*coeffs)[i] * tree_b.at(match.at(leaves[i])).vec;
  w.norm_a = pres_a.norm(v, k);
  w.norm_b = pres_b.norm(w.image, k);
  if (!overlaps(w.norm_a, w.norm_b))
    throw Error(ErrorCode::NotAnIsomorphism, "image norm " + to_string(w.norm_b) + " differs from " + to_string(w.norm_a));
  return w;
}

namespace {

class TreeName final : public NameStream {
 public:
  TreeName(const VectorTree& tree, PresentationPtr pres) : pres_(std::move(pres)) {
    for (const auto& nu : tree.bfs()) {
      order_.push_back(nu);
      entries_.push_back(tree.at(nu));
    }
  }

  std::optional<Pair> at(const Nat& i) const override {
    if (order_.empty()) return std::nullopt;
    auto [tt, j] = unpair(i);
    std::size_t t = Nat(tt % order_.size()).get_ui();
    const TreeEntry& e = entries_[t];
    Nat node = encode_node(order_[t]);
    auto canonical = [&](long k) { return encode_ball({e.vec, e.error + pow2(-k)}); };
    if (mpz_even_p(j.get_mpz_t())) return Pair{node, canonical(clamp(j / 2))};
    auto [b, kk] = unpair((j - 1) / 2);
    long k = clamp(kk);
    Ball ball = decode_ball(b);
    if (pres_->norm(ball.center - e.vec, k).hi + e.error < ball.radius) return Pair{node, b};
    return Pair{node, canonical(k)};
  }

  std::optional<std::uint64_t> length() const override {
    if (order_.empty()) return 0;
    return std::nullopt;
  }
  PresentationPtr source() const override { return pres_; }

 private:
  static long clamp(const Nat& k) { return k > 1024 ? 1024L : static_cast<long>(k.get_si()); }

  PresentationPtr pres_;
  std::vector<Node> order_;
  std::vector<TreeEntry> entries_;
};

}  // namespace

NamePtr tree_name(const VectorTree& tree, PresentationPtr pres) {
  if (!pres) throw Error(ErrorCode::InvalidInput, "null presentation");
  return std::make_shared<TreeName>(tree, std::move(pres));
}

}  // namespace lpw
