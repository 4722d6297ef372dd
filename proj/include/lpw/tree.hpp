// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Finite snapshots of vector trees: nodes of N^<N mapped to rational
// vectors over a presentation's distinguished points.

#pragma once

#include <map>
#include <vector>

#include "lpw/core.hpp"

namespace lpw {

struct TreeEntry {
  RationalVector vec;
  bool terminal = false;  // no children in any extension
  bool halving = false;   // children split ||.||^p in half, all the way down
  Rational error = 0;     // ||true vector - vec|| <= error
};

// Finite snapshot of a vector tree.  Nodes not marked terminal may gain
// children in deeper snapshots.
class VectorTree {
 public:
  std::map<Node, TreeEntry> nodes;

  bool empty() const { return nodes.empty(); }
  std::size_t size() const { return nodes.size(); }
  bool contains(const Node& nu) const { return nodes.count(nu) > 0; }
  const TreeEntry& at(const Node& nu) const;
  std::vector<Node> children(const Node& nu) const;
  std::vector<Node> leaves() const;
  // Breadth-first order: by length, then lexicographically.
  std::vector<Node> bfs() const;
  bool prefix_closed() const;
  // Leaves that are not terminal, i.e. where deeper snapshots add nodes.
  bool has_frontier() const;
};

}  // namespace lpw
