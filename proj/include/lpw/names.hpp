// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Names: replayable streams of (vector code, interval code) pairs that
// enumerate the diagram of a presentation, and a budgeted reader that turns
// what has been read into norm bounds.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/presentations.hpp"

namespace lpw {

using Pair = std::pair<Nat, Nat>;

class NameStream {
 public:
  virtual ~NameStream() = default;
  // Element at position i; nullopt past the end of a finite stream.
  virtual std::optional<Pair> at(const Nat& i) const = 0;
  virtual std::optional<std::uint64_t> length() const { return std::nullopt; }
  // The presentation a generated name was built from, if any.
  virtual PresentationPtr source() const { return nullptr; }
};

using NamePtr = std::shared_ptr<const NameStream>;

// Position i = <m, j>.  For even j = 2k the pair is (m, c) with c a dyadic
// interval of width about 2^-k around ||v_m||.  For odd j = 2<n,k>+1 it is
// (m, n) when ||v_m|| is certified inside I_n at precision k, else the even
// pair for k.  Every diagram pair therefore appears, and the keyed position
// <m, 2k> gives a 2^-k bound on ||v_m|| in one read.
NamePtr diagram_enumerate(PresentationPtr pres);
Nat keyed_position(const Nat& m, long k);

NamePtr finite_name(std::vector<Pair> pairs);
NamePtr empty_name();

// Name of a real p >= 1: position k holds (k, code of an interval of width
// about 2^-k containing p).
NamePtr exponent_name(const Exponent& p);
// Intersection of the intervals in the first `count` elements of h.
std::optional<OpenInterval> read_exponent(const NameStream& h, std::uint64_t count);

// Catalog of machine indices: 0..2 are l^1, l^2, l^3; 3..5 are L^1, L^2,
// L^3 on [0,1]; 6 and 7 are l^2_2 and l^3_2.  Other keys name the zero space.
NamePtr name_of_index(std::uint64_t e);

std::vector<Pair> parse_pairs(std::istream& in);
void write_pairs(std::ostream& out, const NameStream& f, std::uint64_t count);

// eta^+ is the least right endpoint seen for a code, eta^- the greatest left
// endpoint.  Missing values mean no interval has been seen.
struct Bounds {
  std::optional<Rational> upper;
  std::optional<Rational> lower;
};

class NameReader {
 public:
  explicit NameReader(NamePtr f, std::uint64_t budget = UINT64_MAX);

  const NameStream& stream() const { return *f_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t remaining() const { return budget_ - used_; }
  std::uint64_t prefix() const { return prefix_; }
  // A finite stream has been read to its end.
  bool ended() const { return ended_; }

  // Reads prefix positions up to `target`, within the budget.
  void read_prefix(std::uint64_t target);
  // Reads position <m, 2k>; false when the budget is spent.
  bool probe(const Nat& m, long k);

  Bounds bounds(const Nat& m) const;
  bool lt(const Nat& m, const Rational& r) const;  // f |= ||v_m|| < r
  bool gt(const Nat& m, const Rational& r) const;  // f |= ||v_m|| > r
  // As above, probing keyed positions k = 0..max_k until decided.
  bool seek_lt(const Nat& m, const Rational& r, long max_k);
  bool seek_gt(const Nat& m, const Rational& r, long max_k);
  // Probes until eta^+ - eta^- <= 2^-k; nullopt if that is not reached.
  std::optional<Enclosure> seek(const Nat& m, long k);

  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::map<Nat, Bounds>& index() const { return index_; }

 private:
  void record(const Pair& pr);

  NamePtr f_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  std::uint64_t prefix_ = 0;
  bool ended_ = false;
  std::vector<Pair> pairs_;
  std::map<Nat, Bounds> index_;
  std::map<std::pair<Nat, long>, bool> probed_;
};

struct SeminormResult {
  std::optional<Rational> lower;  // eta^-, nullopt when nothing is known
  std::optional<Rational> upper;  // eta^+, nullopt stands for +infinity
  bool complete = false;          // width <= 2^-k

  Enclosure enclosure() const { return {*lower, *upper}; }
};

// Bounds for ||v_g|| from the first `stage` elements of f.  Throws
// Inconsistent when they force eta^- >= eta^+.
SeminormResult seminorm_from_name(const NamePtr& f, const Nat& g, long k, std::uint64_t stage);

}  // namespace lpw
