// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Vector trees over a presentation: disjoint-support tests, disintegrations
// of measure-backed spaces, chain decompositions, and reconstruction of the
// measure space from a normalized tree.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/names.hpp"
#include "lpw/presentations.hpp"
#include "lpw/tree.hpp"

namespace lpw {

enum class Support { Disjoint, NotDisjoint, Unknown };
const char* to_string(Support s);

// ||u+v||^p + ||u-v||^p against 2(||u||^p + ||v||^p).  Throws ExponentTwo at p = 2.
Support lamperti_test(const Presentation& pres, const RationalVector& u, const RationalVector& v, const Exponent& p,
                      long k);

struct AdditivityResult {
  Support verdict = Support::Unknown;  // Disjoint reads as "additive"
  std::vector<Rational> witness;       // scalars that broke additivity
};

// ||sum a_j v_j||^p = sum |a_j|^p ||v_j||^p over every sign pattern (up to 10
// vectors) and `random_trials` seeded rational tuples.
AdditivityResult formal_p_additivity(const Presentation& pres, const std::vector<RationalVector>& vectors,
                                     const Exponent& p, long k, int random_trials = 16, std::uint64_t seed = 1);

// Disintegration of measure_backed(desc, p): the root is the whole space,
// atoms are terminal children, the nonatomic part splits dyadically to
// `depth` levels.  The zero space gives the empty tree.
VectorTree build_disintegration(const MeasureDescription& desc, std::uint64_t depth);

struct ChainDecomposition {
  std::vector<std::vector<Node>> chains;
  bool kappa_infinite = false;  // more chains appear in deeper snapshots
};

// Greedy almost norm-maximizing chains: each chain continues into the least
// child whose ||.||^p is within 2^-|nu| of the largest.  Throws
// NotADisintegration when a parent is not the sum of its children.
ChainDecomposition chain_decompose(const VectorTree& tree, const Presentation& pres);

struct ChainInfimum {
  std::size_t chain = 0;
  Enclosure norm_limit;
  bool is_zero_certified = false;
  bool positive = false;  // limit certified > 0 (chain ends in an atom)
};

ChainInfimum chain_infimum(const ChainDecomposition& dec, std::size_t n, const VectorTree& tree,
                           const Presentation& pres, long k = 30);

struct AntichainResult {
  bool bounded = false;  // Dimension(size) when set, else UnboundedAtBudget
  std::uint64_t size = 0;
};

AntichainResult antichain_dimension(const VectorTree& tree, std::uint64_t budget);

struct Reconstruction {
  std::map<Node, Enclosure> left;   // left endpoint of I_nu
  std::map<Node, Enclosure> right;  // right endpoint of I_nu
  MeasureDescription measure;       // terminal leaves as atoms, halving tops as mass
  bool exact = true;                // every endpoint is an exact rational
};

// Requires ||root||^p = 1 (NotNormalized otherwise).  Siblings tile their
// parent left to right with |I_nu| = ||phi(nu)||^p.
Reconstruction reconstruct_measure_space(const VectorTree& tree, const Presentation& pres, long k = 40);

struct LiftWitness {
  RationalVector image;  // T(v)
  Enclosure norm_a;
  Enclosure norm_b;
};

// Writes v over the leaf vectors of tree_a, maps them through `match`, and
// certifies ||v||_A = ||T v||_B.  Throws NotAnIsomorphism when `match` breaks
// prefix order or norms, NotInSpan when v is not a leaf combination.
LiftWitness lift_isomorphism(const VectorTree& tree_a, const VectorTree& tree_b, const std::map<Node, Node>& match,
                             const Presentation& pres_a, const Presentation& pres_b, const RationalVector& v, long k);

// Exact solve of v = sum c_i basis_i; nullopt when v is not in the span.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<RationalVector>& basis, const RationalVector& v);

// Name of a tree: pairs (node code, ball code) with the ball containing
// the node's vector.  Layout mirrors diagram_enumerate: position <t, 2k> is
// the ball of radius error + 2^-k around node t (breadth-first numbering).
NamePtr tree_name(const VectorTree& tree, PresentationPtr pres);

}  // namespace lpw
