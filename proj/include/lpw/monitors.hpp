// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Terms over distinguished points and tree nodes, the finite-stage judgment
// relation on names, and monitors that fold over name prefixes looking for
// certified violations of the vector-tree, disintegration, Hilbert, L^p and
// Banach-name predicates.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/names.hpp"

namespace lpw {

// sum_j pres_part_j v_j + sum_nu tree_part_nu phi_nu.
struct Term {
  RationalVector pres_part;
  std::map<Node, Rational> tree_part;

  static Term point(std::uint64_t j, const Rational& c = 1);
  static Term node(const Node& nu, const Rational& c = 1);
  bool is_pres() const { return tree_part.empty(); }
  Term& operator+=(const Term& o);
  Term& operator*=(const Rational& s);
};
Term operator+(Term a, const Term& b);
Term operator-(Term a, const Term& b);
Term operator*(const Rational& s, Term a);

enum class AtomKind { NormLess, NormGreater, InTree, InChain };

struct Atom {
  AtomKind kind = AtomKind::NormLess;
  Rational r = 0;          // for the norm atoms
  Node node;               // for InTree and InChain
  std::uint64_t chain = 0; // for InChain

  static Atom less(const Rational& r) { return {AtomKind::NormLess, r, {}, 0}; }
  static Atom greater(const Rational& r) { return {AtomKind::NormGreater, r, {}, 0}; }
  static Atom in_tree(const Node& nu) { return {AtomKind::InTree, 0, nu, 0}; }
  static Atom in_chain(const Node& nu, std::uint64_t n) { return {AtomKind::InChain, 0, nu, n}; }
};

enum class Status { Holds, NotYet };
const char* to_string(Status s);

// f names the presentation, g the tree (pairs of node code and ball code),
// h a chain decomposition (pairs of chain index and node code).
struct Subjects {
  NamePtr f;
  NamePtr g;
  NamePtr h;
};

// Each stream gets `stage` reads.  Finite streams are read from the start;
// infinite ones are also probed at the keyed positions of the vector the
// judgment asks about.  Tree-part constants are replaced by the smallest
// ball seen for their node, with the radii charged against r.
Status judge(const Subjects& s, const Term& t, const Atom& a, std::uint64_t stage);

// ---------------------------------------------------------------- verdicts

struct MonitorVerdict {
  bool violation = false;
  std::uint64_t stage = 0;  // stages run (the violating stage on a violation)
  std::string clause;       // which condition failed
  std::vector<std::pair<std::string, std::string>> witness;
  // Progress on the conditions that cannot fail at a finite stage.
  std::map<std::string, std::uint64_t> progress;
  std::map<std::string, std::string> notes;

  bool ok() const { return !violation; }
};

// Clauses: "eta" (lower bound >= upper bound), "nonnegativity",
// "subadditivity", "homogeneity".
MonitorVerdict banach_name_monitor(const NamePtr& f, std::uint64_t stage);

// Clauses: "tree" (a node without its parent once g has ended), "balls" (two
// balls of one node are formally disjoint), "injective" (g has ended and two
// nodes have no formally disjoint balls).
MonitorVerdict vector_tree_monitor(const NamePtr& f, const NamePtr& g, std::uint64_t stage);

// The vector-tree clauses plus "separation" (a p-additivity pattern over
// incomparable nodes) and "component" (a pattern over a node, its children
// and their difference).  h names p.  Witnesses carry r_0 .. r_{n+1}.
MonitorVerdict disint_monitor(const NamePtr& f, const NamePtr& g, const NamePtr& h, std::uint64_t stage);

// Parallelogram-law search; clause "parallelogram".
MonitorVerdict hilbert_monitor(const NamePtr& f, std::uint64_t stage);

// Banach(f) and ((Hilbert(f) and g names 2) or Disint(f, tree, g)).  The
// tree comes from the presentation behind a generated name when it is
// known, else from `tree`; with neither the Disint branch is inapplicable.
MonitorVerdict lspace_monitor(const NamePtr& f, const NamePtr& g, std::uint64_t stage,
                              const NamePtr& tree = nullptr);

// Tree used by the Disint branch for a generated name, or nullptr.
NamePtr desk_tree_name(const NamePtr& f, std::uint64_t depth);

}  // namespace lpw
