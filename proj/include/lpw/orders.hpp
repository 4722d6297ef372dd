// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Linear orders on N given by comparison queries, their faithful embedding
// into the rationals, the L^p space generated by the embedded intervals, and
// the three stage-driven constructions used for lower bounds.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/names.hpp"
#include "lpw/presentations.hpp"

namespace lpw {

// Elements are 0, 1, 2, ...; size() is nullopt for infinite orders.
class OrderDiagram {
 public:
  virtual ~OrderDiagram() = default;
  virtual bool leq(std::uint64_t s, std::uint64_t t) const = 0;
  virtual std::optional<std::uint64_t> size() const { return std::nullopt; }
  virtual std::string describe() const = 0;
};

using OrderPtr = std::shared_ptr<const OrderDiagram>;

// m[s][t] is s <= t.  Validity is checked lazily by the embedding.
OrderPtr matrix_order(std::vector<std::vector<bool>> m);
OrderPtr omega_order();       // 0 < 1 < 2 < ...
OrderPtr omega_star_order();  // ... < 2 < 1 < 0
// Q cap (0,1) in Stern-Brocot breadth-first order: 1/2, 1/3, 2/3, 1/4, ...
OrderPtr eta_order();
// eta followed by n points.  Elements 0..n-1 are the trailing points, the
// rest enumerate the eta part.
OrderPtr eta_plus_order(std::uint64_t n);
// Element s is values[s]; duplicates are rejected.
OrderPtr value_order(std::vector<Rational> values, std::string label = "values");

// i-th rational of (0,1) in Stern-Brocot breadth-first order.
Rational stern_brocot(std::uint64_t i);
// i-th positive rational in Calkin-Wilf order: 1, 1/2, 2, 1/3, 3/2, ...
Rational calkin_wilf(std::uint64_t i);

// Largest prefix the embedding will explore.
constexpr std::uint64_t kMaxOrderElements = std::uint64_t{1} << 20;

// G(0) = 0; a new maximum goes to M + 1, a new minimum to m - 1, anything
// else to the midpoint of its nearest neighbours below and above.  Each new
// element is checked against every earlier one; InvalidOrder on a failure
// of reflexivity, antisymmetry, totality or transitivity.
class FaithfulEmbedding {
 public:
  explicit FaithfulEmbedding(OrderPtr ord);

  const Rational& value(std::uint64_t s);
  // Embeds elements up to (excluding) n, or to the end of a finite order.
  void explore(std::uint64_t n);
  std::uint64_t explored() const { return values_.size(); }
  const std::vector<Rational>& values() const { return values_; }
  const OrderDiagram& order() const { return *ord_; }

 private:
  void extend();

  OrderPtr ord_;
  std::vector<Rational> values_;
  std::set<Rational> sorted_;
};

Rational faithful_embed(const OrderPtr& ord, std::uint64_t s);
// G(0), ..., G(stage - 1), shorter for smaller finite orders.
std::vector<Rational> embedding_trace(const OrderPtr& ord, std::uint64_t stage);

// Adjacent pairs (a, b) of a finite set of values, in increasing order.
std::vector<std::pair<Rational, Rational>> adjacencies(std::vector<Rational> values);

// v_0 = 0 and v_{1 + <s,t>} = indicator of (G(s), G(t)) when G(s) < G(t),
// else 0.  Norms are exact in the interval lengths.  Finite orders report
// an exact measure summary (adjacencies are the atoms); infinite ones an
// estimate from the first min(budget, 1024) elements.  TooFewElements when
// the order has fewer than two elements.
PresentationPtr order_to_space(const OrderPtr& ord, const Exponent& p);

// ---------------------------------------------------------------- gadgets

using Predicate2 = std::function<bool(std::uint64_t, std::uint64_t)>;
using Predicate3 = std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)>;
using DecidableSet = std::function<bool(std::uint64_t)>;

struct Sigma03Trace {
  std::vector<std::optional<std::uint64_t>> delta;  // nullopt is an infinite stage
  std::vector<std::uint64_t> z;                     // 0 on infinite stages
  std::vector<std::uint64_t> size;                  // |X(s)| for s = 0..stage
};

struct GadgetOrder {
  OrderPtr order;  // (X, <) with elements in insertion order
  std::vector<Rational> points;
  Sigma03Trace trace;
};

// Runs `stage` steps of the construction with limit eta + n or omega.  The
// search for delta(s) looks at x <= s.  InvalidInput when the set grows past
// kMaxOrderElements.
GadgetOrder gadget_sigma03(const Predicate3& Q, const DecidableSet& A, std::uint64_t stage);

// Positive rationals (0, z* + 1) among the first `stage` Calkin-Wilf terms
// together with 1, ..., z* + n, where z* is the largest z <= stage with
// Q(x, y) for some y <= stage whenever x < z.  Limit eta or eta + n.
GadgetOrder gadget_pi02(const Predicate2& Q, std::uint64_t n, std::uint64_t stage);

// R(<x,0>) = e_{3x} + e_{3x+1}, R(<x,1>) = e_{3x+1} + e_{3x+2},
// R(<x,y+2>) = e_{3x+1} if Q(x, y') for some y' < y, else R(<x,1>).
// The distinguished points of the presentation are R(0), R(1), ...
class GadgetSpace final : public StepPresentation, public std::enable_shared_from_this<GadgetSpace> {
 public:
  GadgetSpace(Predicate2 Q, const Exponent& p);

  StepFunction point(std::uint64_t j) const override;
  Rational atom_weight(std::uint64_t) const override { return 1; }
  std::string describe() const override;
  std::optional<VectorTree> disintegration(std::uint64_t depth) const override;

  // Least y <= limit with Q(x, y') for some y' < y; block x
  // splits into e_{3x}, e_{3x+1}, e_{3x+2} once R(<x, y+2>) = e_{3x+1}.
  std::optional<std::uint64_t> separation(std::uint64_t x, std::uint64_t limit) const;
  // Name of the growing disintegration: node (x) is 2^-x (R<x,0> + R<x,1>),
  // the root their sum, and (x, i) the three pieces of block x once it has
  // separated.  Position <t, 2k> is the ball of radius 2^-k around node t,
  // where t = 0 is the root and t = 1 + 4x + i lists (x), (x,0), (x,1), (x,2).
  // Nodes that are not yet present read as the root.
  NamePtr tree_name() const;
  // The tree as seen at level `depth`: blocks x < depth, separations with
  // y < depth.
  VectorTree snapshot(std::uint64_t depth) const;
  const Predicate2& predicate() const { return Q_; }

 private:
  Predicate2 Q_;
};

// ExponentTwo at p = 2.
std::shared_ptr<const GadgetSpace> gadget_lp_space(Predicate2 Q, const Exponent& p);

}  // namespace lpw
