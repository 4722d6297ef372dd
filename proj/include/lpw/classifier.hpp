// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Sorting presentations into the five separable L^p types, atom counting,
// detection of a copy of L^p[0,1], and the isomorphism check built on both.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpw/core.hpp"
#include "lpw/presentations.hpp"

namespace lpw {

enum class ClassKind { LpN, Lp, Lp01, LpN_plus_Lp01, Lp_plus_Lp01, UndeterminedAtBudget };
const char* to_string(ClassKind k);

struct ClassVerdict {
  ClassKind kind = ClassKind::UndeterminedAtBudget;
  std::uint64_t n = 0;  // for LpN and LpN_plus_Lp01
  // Which conditions fired and the numbers behind them.
  std::map<std::string, std::string> evidence;

  bool definite() const { return kind != ClassKind::UndeterminedAtBudget; }
  std::string label() const;  // "l^p_3", "L^p[0,1]", ...
};

struct AtomWitness {
  std::size_t chain = 0;  // chain index, or atom index for summary witnesses
  Rational lower = 0;     // certified lower bound on the chain's norm limit
};

struct AtomCount {
  bool yes = false;  // false means not found at this budget
  std::vector<AtomWitness> witnesses;
  std::string source;  // "chains" or "summary"
};

// Chains of a disintegration snapshot whose norm limits are certified
// positive; for presentations without a finite snapshot the exact measure
// summary supplies the atoms.  ExponentTwo at p = 2.
AtomCount count_atoms_at_least(const Presentation& pres, const Exponent& p, std::uint64_t k, std::uint64_t budget);

enum class Embedding { Yes, No, NotAtBudget };
const char* to_string(Embedding e);

struct EmbedResult {
  Embedding verdict = Embedding::NotAtBudget;
  long k = 0;         // sum of atom p-powers < ||root||^p - 2^-k
  Rational gap = 0;   // nonatomic mass when known
  std::string source;
};

// ExponentTwo at p = 2.
EmbedResult embeds_Lp01(const Presentation& pres, const Exponent& p, std::uint64_t budget);

// At p = 2 the answer is l^2_n or l^2 by dimension.
ClassVerdict classify(const Presentation& pres, const Exponent& p, std::uint64_t budget);

enum class Iso { Isomorphic, NotIsomorphic, UndeterminedAtBudget };
const char* to_string(Iso i);

struct IsoResult {
  Iso verdict = Iso::UndeterminedAtBudget;
  std::string reason;
};

// Same embedding answer and same number of atoms.  ExponentTwo at p = 2.
IsoResult iso_check(const Presentation& a, const Presentation& b, const Exponent& p, std::uint64_t budget);

}  // namespace lpw
