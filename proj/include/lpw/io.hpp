// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// JSON forms of the library's values.  Rationals are [num, den] (an integer
// or a "a/b" string is also read), enclosures {"lo": .., "hi": ..}, codes
// unsigned integers (decimal strings once they outgrow 64 bits).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpw/classifier.hpp"
#include "lpw/convexity.hpp"
#include "lpw/monitors.hpp"
#include "lpw/orders.hpp"
#include "lpw/presentations.hpp"

namespace lpw {

using Json = nlohmann::json;

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json nat_json(const Nat& n);
Json enclosure_json(const Enclosure& e);
Json vector_json(const RationalVector& v);  // dense list of rationals
RationalVector vector_from_json(const Json& j);

// {"space": "lpn", "n": 3} | {"space": "lp"} | {"space": "lp01"}
// | {"space": "sum", "a": {..}, "b": {..}}
// | {"space": "measure", "atoms": [rat, ..], "nonatomic": rat}
// | {"space": "order", "order": {..}}
// | {"space": "gadget", "q": "true" | "false_on_row" | "cofinite", "row": x, "from": y}
// An optional "p" must agree with `p`.
PresentationPtr presentation_from_json(const Json& j, const Exponent& p);

// {"kind": "matrix", "matrix": [[bool, ..], ..]}
// | {"kind": "rule", "rule": "omega" | "omega_star" | "eta" | "eta_plus", "n": k}
// | {"kind": "values", "values": [rat, ..]}
OrderPtr order_from_json(const Json& j);

Json verdict_json(const MonitorVerdict& v);
Json class_json(const ClassVerdict& v);
Json estimate_json(const ExponentEstimate& e);

// One object per node in breadth-first order:
// {"node": [ints], "vec": code, "norm": enclosure}.
std::vector<Json> tree_dump(const VectorTree& tree, const Presentation& pres, long k);
// {"chain": n, "node": [ints]} for every node of every chain.
std::vector<Json> chain_dump(const VectorTree& tree, const Presentation& pres);

Json parse_json(const std::string& text);

}  // namespace lpw
