// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Modulus of uniform convexity of L^p spaces, its extremal witnesses in
// l^p_2, recovery of the exponent from a name, and Hilbert-space checks.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/names.hpp"
#include "lpw/presentations.hpp"

namespace lpw {

// delta(p, eps) with width <= 2^-k.  Closed form for p >= 2, bisection on
// the implicit equation for 1 < p < 2.  DomainError for p <= 1 or eps
// outside (0, 2].
Enclosure delta(const Exponent& p, const Rational& eps, long k);
// The two branches on their own, so they can be compared at p = 2.
Enclosure delta_closed_form(const Exponent& p, const Rational& eps, long k);
Enclosure delta_implicit(const Exponent& p, const Rational& eps, long k);
// (1 - d + eps/2)^p + |1 - d - eps/2|^p with width <= 2^-k.
Enclosure hanner_sum(const Exponent& p, const Rational& eps, const Rational& d, long k);

struct HannerCertificate {
  bool unit_norms = false;  // ||u||, ||v|| in (1 - 2^-k, 1 + 2^-k)
  bool difference = false;  // | ||u - v|| - eps | < 2^-k
  bool defect = false;      // | 1 - ||u + v||/2 - delta(p, eps) | < 2^(1-k)
  bool all() const { return unit_norms && difference && defect; }
};

struct HannerWitnesses {
  RationalVector u;
  RationalVector v;
  Enclosure delta;
  HannerCertificate certificate;
};

// Rational approximants of the extremal pair u(eps), v(eps) in l^p_2.
HannerWitnesses hanner_witnesses(const Exponent& p, const Rational& eps, long k);
// Checks the three conditions above for arbitrary u, v in l^p_2.
HannerCertificate certify_hanner(const Exponent& p, const Rational& eps, const RationalVector& u,
                                 const RationalVector& v, long k);

// ---------------------------------------------------------------- exponent

// Largest exponent the estimator looks at.
constexpr long kMaxExponent = 32;

struct SearchOptions {
  std::uint64_t points = 3;     // witnesses are built from v_0 .. v_{points-1}
  long r0_log2 = 16;            // r0 = 2^-r0_log2
  long read_precision = 22;     // keyed reads at width about 2^-read_precision
  long margin_log2 = 11;        // assumed optimality gap of the witness search
  int bisection_steps = 24;
};

// Unit-ish terms tau0, tau1 read off a name: f |= 1 < ||tau_j|| < 1 + r0,
// f |= ||tau0 - tau1|| > eps + 2 r0 and f |= ||tau0 + tau1|| > sum_lower.
// Then delta_B(eps) < defect_bound = 1 - sum_lower/2 + r0.
struct DefectWitness {
  Rational eps;
  RationalVector tau0;
  RationalVector tau1;
  Rational r0;
  Rational sum_lower;
  Rational defect_bound;
};

// Smallest defect bound found for eps within the reader's budget.
std::optional<DefectWitness> find_defect_witness(NameReader& reader, const Rational& eps,
                                                 const SearchOptions& opts = {});

enum class CutVerdict { AcceptedIntoY, NotYet };
const char* to_string(CutVerdict v);

// r is accepted when a witness at eps = 1 satisfies the three judgments with
// some r' > 2(1 - delta(r, 1)).  Accepted r satisfy delta(p, 1) < delta(r, 1).
CutVerdict exponent_cut_step(const NamePtr& f, const Rational& r, std::uint64_t stage,
                             const SearchOptions& opts = {});

enum class CutSide { Right, Left };

struct CutState {
  CutSide side = CutSide::Right;
  std::vector<Rational> accepted;  // grid points of (1,2) (Right) or (2, max) (Left) in Y
};

struct ExponentRange {
  Rational lo;
  Rational hi;
};

struct ExponentEstimate {
  bool determined = false;  // one range of width <= tol survives
  Rational lo = 1;
  Rational hi = kMaxExponent;
  std::vector<ExponentRange> candidates;  // ranges not refuted at other eps
  std::vector<DefectWitness> witnesses;   // best witness per eps that was searched
  CutState right{CutSide::Right, {}};
  CutState left{CutSide::Left, {}};
  std::optional<bool> parallelogram_violation;  // set when the Hilbert check ran
  std::uint64_t used = 0;
};

// Runs the cut search at eps = 1 and refutes branch candidates with
// witnesses at eps in {1/2, 3/2, 15/8}.  Assumes f names an L^p space of
// dimension >= 2 with p <= kMaxExponent; neither is checked.
ExponentEstimate estimate_exponent(const NamePtr& f, const Rational& tol, std::uint64_t budget,
                                   const SearchOptions& opts = {});

// ---------------------------------------------------------------- Hilbert

struct ParallelogramViolation {
  RationalVector tau0;
  RationalVector tau1;
  Rational r0, r1, r2, r3;  // bounds on ||tau0+tau1||, ||tau0-tau1||, ||tau0||, ||tau1||
  int clause = 0;           // 1: sides above the law, 2: below
};

struct HilbertCheck {
  bool violation = false;
  std::optional<ParallelogramViolation> witness;
  std::uint64_t stage = 0;  // reads spent
  std::uint64_t pairs_checked = 0;
};

// Budgeted search for a parallelogram-law violation among small-height
// combinations of the first `points` distinguished points.
HilbertCheck hilbert_check(const NamePtr& f, std::uint64_t stage, std::uint64_t points = 3);

enum class DimensionKind { AtLeast, Exactly, Indeterminate };

struct HilbertDimension {
  DimensionKind kind = DimensionKind::Indeterminate;
  std::uint64_t n = 0;
};

// Gram-Schmidt over v_0, v_1, ... with inner products from the polarization
// identity.  Throws NotHilbert on a certified parallelogram violation.
HilbertDimension hilbert_dimension(const Presentation& pres, std::uint64_t n, std::uint64_t budget);

}  // namespace lpw
