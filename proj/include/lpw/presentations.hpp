// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Norm oracles over rational vectors.  A presentation fixes a sequence of
// distinguished points v_0, v_1, ... and answers ||sum a_j v_j|| to any
// requested precision.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/tree.hpp"

namespace lpw {

// Finite list of atom weights plus the mass of a nonatomic part.
struct MeasureDescription {
  std::vector<Rational> atoms;
  Rational nonatomic = 0;

  bool is_zero() const { return atoms.empty() && nonatomic == 0; }
  Rational total() const;
};

// What a presentation knows about its underlying measure space.  When
// atoms_infinite is set, `atoms` lists only an initial segment.
struct MeasureSummary {
  std::vector<Rational> atoms;
  bool atoms_infinite = false;
  Rational nonatomic = 0;
  bool exact = true;  // false when derived from a budget-limited exploration

  MeasureDescription truncated() const { return {atoms, nonatomic}; }
};

// A simple function on (atoms) + (real line with Lebesgue measure).  The
// line part is stored as jumps: its value at x is the sum of jumps at t <= x.
struct StepFunction {
  std::map<std::uint64_t, Rational> atoms;
  std::map<Rational, Rational> jumps;

  static StepFunction atom(std::uint64_t id, const Rational& value = 1);
  // value * indicator of [a, b); empty when b <= a.
  static StepFunction interval(const Rational& a, const Rational& b, const Rational& value = 1);

  void add(const StepFunction& o, const Rational& scale = 1);
  bool is_zero() const { return atoms.empty() && jumps.empty(); }
  // Total mass of each distinct nonzero |value|, atoms weighted by `weight`.
  template <class Weight>
  std::map<Rational, Rational> level_masses(const Weight& weight) const;
};

class Presentation {
 public:
  explicit Presentation(Exponent p) : p_(std::move(p)) {}
  virtual ~Presentation() = default;

  const Exponent& exponent() const { return p_; }

  // Outward enclosure of ||v||^p at working precision prec.
  virtual Enclosure ppow_at(const RationalVector& v, long prec) const = 0;
  virtual std::string describe() const = 0;
  virtual std::optional<MeasureSummary> summary(std::uint64_t budget) const;
  // Snapshot of a disintegration in this presentation's coordinates, split
  // `depth` levels deep; nullopt when the structure is not known.
  virtual std::optional<VectorTree> disintegration(std::uint64_t depth) const;
  // Number of distinguished points when all later ones are zero.
  virtual std::optional<std::uint64_t> point_count() const { return std::nullopt; }

  Enclosure norm_at(const RationalVector& v, long prec) const;
  Enclosure norm(const RationalVector& v, long k) const;  // width <= 2^-k
  Enclosure norm(const Nat& code, long k) const;
  Enclosure ppow(const RationalVector& v, long k) const;

 private:
  Exponent p_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

// Presentations whose distinguished points are step functions.
class StepPresentation : public Presentation {
 public:
  using Presentation::Presentation;
  virtual StepFunction point(std::uint64_t j) const = 0;
  virtual Rational atom_weight(std::uint64_t id) const = 0;

  StepFunction realize(const RationalVector& v) const;
  Enclosure ppow_at(const RationalVector& v, long prec) const override;
};

enum class SpaceKind { LpN, Lp, Lp01 };

PresentationPtr standard_presentation(SpaceKind kind, std::optional<std::uint64_t> n, const Exponent& p);
PresentationPtr lp_sum(PresentationPtr a, PresentationPtr b, const Exponent& p);
// v_j is the indicator of atom j for j below the atom count, then the
// indicators of the dyadic subintervals of [0, nonatomic).
PresentationPtr measure_backed(const MeasureDescription& desc, const Exponent& p);
// Heap-indexed dyadic subintervals of [0,1): t = 0 is [0,1), the children
// of t are 2t+1 and 2t+2.
std::pair<Rational, Rational> dyadic_interval(std::uint64_t t);

bool same_exponent(const Exponent& a, const Exponent& b);

// Implementation of the level-mass template.
template <class Weight>
std::map<Rational, Rational> StepFunction::level_masses(const Weight& weight) const {
  std::map<Rational, Rational> out;
  for (const auto& [id, c] : atoms) {
    if (c == 0) continue;
    out[c < 0 ? Rational(-c) : c] += weight(id);
  }
  Rational value = 0;
  const Rational* prev = nullptr;
  for (const auto& [x, j] : jumps) {
    if (prev && value != 0) out[value < 0 ? Rational(-value) : value] += x - *prev;
    value += j;
    prev = &x;
  }
  return out;
}

}  // namespace lpw
