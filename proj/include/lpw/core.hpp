// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Exact rationals, rational enclosures, certified powers, and the integer
// codings of rational vectors, dyadic intervals, and rational balls.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lpw {

using Nat = mpz_class;
using Rational = mpq_class;

enum class ErrorCode {
  InvalidInput,
  DomainError,
  ExponentTwo,
  ExponentMismatch,
  Inconsistent,
  ZeroSpace,
  NotADisintegration,
  NotNormalized,
  NotAnIsomorphism,
  NotInSpan,
  InvalidOrder,
  TooFewElements,
  NotHilbert,
  PrecisionExhausted,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------- rationals

Rational rat(long num, long den = 1);
// Accepts "3", "-3/2", "0.125", "1e-3".
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
std::string to_string(const Nat& n);
Nat parse_nat(std::string_view s);

Rational pow2(long e);
Rational ipow(const Rational& q, unsigned long e);
bool is_dyadic(const Rational& q);
Rational floor_dyadic(const Rational& q, long k);  // largest j/2^k <= q
Rational ceil_dyadic(const Rational& q, long k);   // smallest j/2^k >= q
double to_double(const Rational& q);

// ---------------------------------------------------------------- enclosures

struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure point(const Rational& q) { return {q, q}; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool is_point() const { return lo == hi; }
  bool operator==(const Enclosure& o) const { return lo == o.lo && hi == o.hi; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Rational& s, const Enclosure& a);
Enclosure abs(const Enclosure& a);
Enclosure hull(const Enclosure& a, const Enclosure& b);
bool overlaps(const Enclosure& a, const Enclosure& b);
// a < b for every pair of points drawn from the two enclosures.
inline bool certainly_less(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo; }
bool width_at_most(const Enclosure& e, long k);  // width <= 2^-k
std::string to_string(const Enclosure& e);

struct OpenInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  bool operator==(const OpenInterval& o) const { return lo == o.lo && hi == o.hi; }
};

enum class Membership { Inside, Outside, Unknown };
const char* to_string(Membership m);

// Inside: [lo,hi] sits in the open interval.  Outside: disjoint from its
// closure, or an exact point equal to an endpoint.
Membership certify_membership(const Enclosure& x, const OpenInterval& I);

// ---------------------------------------------------------------- pairing

// Cantor pairing, total and bijective on N x N.
Nat pair(const Nat& i, const Nat& j);
std::pair<Nat, Nat> unpair(const Nat& n);
// Alternate codec <i,j> = 2^i 3^j; partial on N.
Nat pair23(unsigned long i, unsigned long j);
std::optional<std::pair<unsigned long, unsigned long>> unpair23(const Nat& n);

Nat zigzag(const Nat& z);    // Z -> N: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
Nat unzigzag(const Nat& n);  // N -> Z

// ---------------------------------------------------------------- vectors

// Finitely supported sequence of rational scalars; zero entries are never
// stored, so equality is structural.
class RationalVector {
 public:
  RationalVector() = default;
  RationalVector(std::initializer_list<Rational> dense);
  static RationalVector from_dense(const std::vector<Rational>& dense);
  static RationalVector unit(std::uint64_t j, const Rational& c = 1);

  Rational get(std::uint64_t j) const;
  void set(std::uint64_t j, const Rational& v);
  const std::map<std::uint64_t, Rational>& entries() const { return e_; }
  std::vector<Rational> dense() const;
  bool is_zero() const { return e_.empty(); }
  std::uint64_t support_end() const;  // one past the last nonzero index
  Rational height() const;            // max over entries of |num| + den

  RationalVector& operator+=(const RationalVector& o);
  RationalVector& operator-=(const RationalVector& o);
  RationalVector& operator*=(const Rational& s);
  bool operator==(const RationalVector& o) const { return e_ == o.e_; }
  bool operator<(const RationalVector& o) const { return e_ < o.e_; }

 private:
  std::map<std::uint64_t, Rational> e_;
};

RationalVector operator+(RationalVector a, const RationalVector& b);
RationalVector operator-(RationalVector a, const RationalVector& b);
RationalVector operator*(const Rational& s, RationalVector a);
std::string to_string(const RationalVector& v);

// ---------------------------------------------------------------- codings

// Scalars: a/b in lowest terms -> <zigzag(a), b-1>.
Nat encode_rational(const Rational& q);
Rational decode_rational(const Nat& code);
// Positive scalars: a/b -> <a-1, b-1>.
Nat encode_positive(const Rational& q);
Rational decode_positive(const Nat& code);

// Vectors: self-delimiting (Elias gamma) run of (gap, numerator, denominator)
// triples over the nonzero entries; the zero vector has code 0.  Decoding is
// total and lenient about malformed tails.
Nat encode_vector(const RationalVector& v);
Nat encode_vector(const std::vector<Rational>& coeffs);
RationalVector decode_vector(const Nat& code);
// Code of alpha * v_m + v_n, computed from the codes alone.
Nat combine(const Rational& alpha, const Nat& m, const Nat& n);

// Open intervals with dyadic endpoints; the coding is a bijection onto them.
Nat encode_interval(const OpenInterval& I);
OpenInterval decode_interval(const Nat& code);
// Smallest-scale dyadic interval (a/2^k, b/2^k) strictly containing e.
OpenInterval dyadic_cover(const Enclosure& e, long k);

struct Ball {
  RationalVector center;
  Rational radius;  // positive
};
Nat encode_ball(const Ball& b);
Ball decode_ball(const Nat& code);

// Finite strings over N (tree nodes): unary runs separated by zeros.
using Node = std::vector<std::uint64_t>;
Nat encode_node(const Node& nu);
Node decode_node(const Nat& code);
std::string to_string(const Node& nu);
bool is_prefix(const Node& a, const Node& b);  // a is a (non-strict) prefix of b

// ---------------------------------------------------------------- exponents

// A real p >= 1 given either exactly or by a nested refiner k -> enclosure of
// width <= 2^-k.
class Exponent {
 public:
  Exponent(const Rational& p);  // NOLINT(google-explicit-constructor)
  Exponent(long p) : Exponent(Rational(p)) {}  // NOLINT
  static Exponent from_refiner(std::function<Enclosure(long)> refine, std::string label);

  Enclosure at(long k) const;
  const std::optional<Rational>& exact() const { return exact_; }
  bool is_exactly(const Rational& q) const { return exact_ && *exact_ == q; }
  bool is_two() const { return is_exactly(2); }
  // -1, 0, +1 for p < q, p == q, p > q; nullopt if undecided within 2^-200.
  std::optional<int> compare(const Rational& q) const;
  std::string label() const;

 private:
  Exponent() = default;
  std::optional<Rational> exact_;
  std::function<Enclosure(long)> refine_;
  std::string label_;
};

// Outward enclosure of base^ex for base >= 0 and ex > 0, computed with
// directed rounding at `prec` bits.  No width guarantee.
Enclosure pow_at(const Enclosure& base, const Enclosure& ex, long prec);
// |q|^p and s^(1/p) at working precision `prec`.
Enclosure abs_pow_at(const Rational& q, const Exponent& p, long prec);
Enclosure root_at(const Enclosure& s, const Exponent& p, long prec);

// Runs f at increasing working precision until the enclosure has width
// <= 2^-k.  Throws PrecisionExhausted past a fixed ceiling.
Enclosure refine_to(long k, const std::function<Enclosure(long)>& f);

Enclosure abs_pow(const Rational& q, const Exponent& p, long k);

}  // namespace lpw
