// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/core.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lpw {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ExponentTwo: return "ExponentTwo";
    case ErrorCode::ExponentMismatch: return "ExponentMismatch";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::ZeroSpace: return "ZeroSpace";
    case ErrorCode::NotADisintegration: return "NotADisintegration";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::TooFewElements: return "TooFewElements";
    case ErrorCode::NotHilbert: return "NotHilbert";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- rationals

Rational rat(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view s) {
  auto bad = [&] { return Error(ErrorCode::InvalidInput, "not a rational: '" + std::string(s) + "'"); };
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw bad();
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(t.substr(0, slash));
    Rational den = parse_rational(t.substr(slash + 1));
    if (den == 0) throw bad();
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
  Nat mant = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      if (dot) --scale;
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw bad();
  if (i < t.size()) {
    if (t[i] != 'e' && t[i] != 'E') throw bad();
    ++i;
    try {
      std::size_t used = 0;
      long e = std::stol(t.substr(i), &used);
      if (used != t.size() - i) throw bad();
      scale += e;
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  Rational q(mant);
  Nat p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale < 0) q /= Rational(p10);
  else q *= Rational(p10);
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Nat& n) { return n.get_str(); }

Nat parse_nat(std::string_view s) {
  Nat n;
  std::string t(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      n.set_str(t, 10) != 0)
    throw Error(ErrorCode::InvalidInput, "not a natural number: '" + t + "'");
  return n;
}

Rational pow2(long e) {
  Nat p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Nat(1), p) : Rational(p);
}

Rational ipow(const Rational& q, unsigned long e) {
  Nat n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

bool is_dyadic(const Rational& q) {
  const mpz_srcptr d = q.get_den_mpz_t();
  return mpz_popcount(d) == 1;
}

Rational floor_dyadic(const Rational& q, long k) {
  Rational s = q * pow2(k);
  Nat f;
  mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return Rational(f) * pow2(-k);
}

Rational ceil_dyadic(const Rational& q, long k) {
  Rational s = q * pow2(k);
  Nat c;
  mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return Rational(c) * pow2(-k);
}

double to_double(const Rational& q) { return q.get_d(); }

// ---------------------------------------------------------------- enclosures

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Enclosure operator*(const Rational& s, const Enclosure& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

Enclosure abs(const Enclosure& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {Rational(0), std::max(Rational(-a.lo), a.hi)};
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

bool overlaps(const Enclosure& a, const Enclosure& b) { return a.lo <= b.hi && b.lo <= a.hi; }

bool width_at_most(const Enclosure& e, long k) { return e.width() <= pow2(-k); }

std::string to_string(const Enclosure& e) { return "[" + e.lo.get_str() + ", " + e.hi.get_str() + "]"; }

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::Outside: return "Outside";
    case Membership::Unknown: return "Unknown";
  }
  return "Unknown";
}

Membership certify_membership(const Enclosure& x, const OpenInterval& I) {
  if (I.lo < x.lo && x.hi < I.hi) return Membership::Inside;
  if (x.hi < I.lo || x.lo > I.hi) return Membership::Outside;
  if (x.is_point() && (x.lo == I.lo || x.lo == I.hi)) return Membership::Outside;
  return Membership::Unknown;
}

// ---------------------------------------------------------------- pairing

Nat pair(const Nat& i, const Nat& j) {
  Nat s = i + j;
  return s * (s + 1) / 2 + j;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  // w = floor((sqrt(8n+1)-1)/2)
  Nat t = 8 * n + 1, r;
  mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
  Nat w = (r - 1) / 2;
  Nat tri = w * (w + 1) / 2;
  Nat j = n - tri;
  return {w - j, j};
}

Nat pair23(unsigned long i, unsigned long j) {
  Nat a, b;
  mpz_ui_pow_ui(a.get_mpz_t(), 2, i);
  mpz_ui_pow_ui(b.get_mpz_t(), 3, j);
  return a * b;
}

std::optional<std::pair<unsigned long, unsigned long>> unpair23(const Nat& n) {
  if (n <= 0) return std::nullopt;
  Nat m = n;
  unsigned long i = 0, j = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), 2)) { m /= 2; ++i; }
  while (mpz_divisible_ui_p(m.get_mpz_t(), 3)) { m /= 3; ++j; }
  if (m != 1) return std::nullopt;
  return std::make_pair(i, j);
}

Nat zigzag(const Nat& z) { return z >= 0 ? Nat(2 * z) : Nat(-2 * z - 1); }

Nat unzigzag(const Nat& n) {
  if (mpz_even_p(n.get_mpz_t())) return n / 2;
  return -(n + 1) / 2;
}

// ---------------------------------------------------------------- vectors

RationalVector::RationalVector(std::initializer_list<Rational> dense) {
  std::uint64_t j = 0;
  for (const auto& q : dense) set(j++, q);
}

RationalVector RationalVector::from_dense(const std::vector<Rational>& dense) {
  RationalVector v;
  for (std::uint64_t j = 0; j < dense.size(); ++j) v.set(j, dense[j]);
  return v;
}

RationalVector RationalVector::unit(std::uint64_t j, const Rational& c) {
  RationalVector v;
  v.set(j, c);
  return v;
}

Rational RationalVector::get(std::uint64_t j) const {
  auto it = e_.find(j);
  return it == e_.end() ? Rational(0) : it->second;
}

void RationalVector::set(std::uint64_t j, const Rational& v) {
  if (v == 0) {
    e_.erase(j);
  } else {
    Rational c = v;
    c.canonicalize();
    e_[j] = c;
  }
}

std::vector<Rational> RationalVector::dense() const {
  std::vector<Rational> out(support_end());
  for (const auto& [j, q] : e_) out[j] = q;
  return out;
}

std::uint64_t RationalVector::support_end() const { return e_.empty() ? 0 : e_.rbegin()->first + 1; }

Rational RationalVector::height() const {
  Rational h = 0;
  for (const auto& [j, q] : e_) {
    Rational c = Rational(abs(q.get_num()) + q.get_den());
    if (c > h) h = c;
  }
  return h;
}

RationalVector& RationalVector::operator+=(const RationalVector& o) {
  for (const auto& [j, q] : o.e_) set(j, get(j) + q);
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& o) {
  for (const auto& [j, q] : o.e_) set(j, get(j) - q);
  return *this;
}

RationalVector& RationalVector::operator*=(const Rational& s) {
  if (s == 0) {
    e_.clear();
    return *this;
  }
  for (auto& [j, q] : e_) q *= s;
  return *this;
}

RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
RationalVector operator*(const Rational& s, RationalVector a) { return a *= s; }

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [j, q] : v.entries()) {
    if (!first) os << ", ";
    first = false;
    os << j << ":" << q.get_str();
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- codings

Nat encode_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return pair(zigzag(c.get_num()), c.get_den() - 1);
}

Rational decode_rational(const Nat& code) {
  auto [a, b] = unpair(code);
  Rational q(unzigzag(a), b + 1);
  q.canonicalize();
  return q;
}

Nat encode_positive(const Rational& q) {
  if (q <= 0) throw Error(ErrorCode::InvalidInput, "radius must be positive");
  Rational c = q;
  c.canonicalize();
  return pair(c.get_num() - 1, c.get_den() - 1);
}

Rational decode_positive(const Nat& code) {
  auto [a, b] = unpair(code);
  Rational q(a + 1, b + 1);
  q.canonicalize();
  return q;
}

namespace {

void put_gamma(std::string& bits, const Nat& n) {  // n >= 1
  std::string b = n.get_str(2);
  bits.append(b.size() - 1, '0');
  bits += b;
}

// Reads one gamma-coded number starting at pos; nullopt on a truncated tail.
std::optional<Nat> get_gamma(const std::string& bits, std::size_t& pos) {
  std::size_t zeros = 0;
  while (pos + zeros < bits.size() && bits[pos + zeros] == '0') ++zeros;
  if (pos + zeros + zeros + 1 > bits.size()) return std::nullopt;
  Nat n(bits.substr(pos + zeros, zeros + 1), 2);
  pos += 2 * zeros + 1;
  return n;
}

Nat bits_to_code(const std::string& bits) { return Nat("1" + bits, 2) - 1; }

std::string code_to_bits(const Nat& code) {
  if (code < 0) throw Error(ErrorCode::InvalidInput, "negative code");
  std::string s = Nat(code + 1).get_str(2);
  return s.substr(1);
}

}  // namespace

Nat encode_vector(const RationalVector& v) {
  std::string bits;
  std::uint64_t next = 0;
  for (const auto& [j, q] : v.entries()) {
    put_gamma(bits, Nat(static_cast<unsigned long>(j - next)) + 1);
    put_gamma(bits, zigzag(q.get_num()));
    put_gamma(bits, q.get_den());
    next = j + 1;
  }
  return bits_to_code(bits);
}

Nat encode_vector(const std::vector<Rational>& coeffs) { return encode_vector(RationalVector::from_dense(coeffs)); }

RationalVector decode_vector(const Nat& code) {
  std::string bits = code_to_bits(code);
  RationalVector v;
  std::size_t pos = 0;
  Nat next = 0;
  while (pos < bits.size()) {
    auto gap = get_gamma(bits, pos);
    auto num = gap ? get_gamma(bits, pos) : std::nullopt;
    auto den = num ? get_gamma(bits, pos) : std::nullopt;
    if (!den) break;
    Nat idx = next + *gap - 1;
    if (!idx.fits_ulong_p()) break;
    Rational q(unzigzag(*num), *den);
    q.canonicalize();
    v.set(idx.get_ui(), v.get(idx.get_ui()) + q);
    next = idx + 1;
  }
  return v;
}

Nat combine(const Rational& alpha, const Nat& m, const Nat& n) {
  return encode_vector(alpha * decode_vector(m) + decode_vector(n));
}

Nat encode_interval(const OpenInterval& I) {
  if (!(I.lo < I.hi)) throw Error(ErrorCode::InvalidInput, "empty interval");
  if (!is_dyadic(I.lo) || !is_dyadic(I.hi))
    throw Error(ErrorCode::InvalidInput, "interval codes cover dyadic endpoints only");
  // e = max of the two 2-adic denominators' exponents
  unsigned long e = std::max(mpz_sizeinbase(I.lo.get_den_mpz_t(), 2), mpz_sizeinbase(I.hi.get_den_mpz_t(), 2)) - 1;
  Rational scale = pow2(static_cast<long>(e));
  Nat a = Rational(I.lo * scale).get_num();
  Nat b = Rational(I.hi * scale).get_num();
  Nat d = b - a;
  Nat inner;
  if (e == 0) {
    inner = pair(zigzag(a), d - 1);
  } else if (mpz_odd_p(a.get_mpz_t())) {
    Nat s = (a - 1) / 2;
    inner = 2 * pair(zigzag(s), d - 1);
  } else {
    Nat s = a / 2;
    Nat t = (d - 1) / 2;
    inner = 2 * pair(zigzag(s), t) + 1;
  }
  return pair(Nat(e), inner);
}

OpenInterval decode_interval(const Nat& code) {
  auto [en, inner] = unpair(code);
  if (!en.fits_ulong_p() || en > 1u << 20) throw Error(ErrorCode::InvalidInput, "interval code scale too large");
  unsigned long e = en.get_ui();
  Nat a, d;
  if (e == 0) {
    auto [za, dm1] = unpair(inner);
    a = unzigzag(za);
    d = dm1 + 1;
  } else if (mpz_even_p(inner.get_mpz_t())) {
    auto [zs, dm1] = unpair(inner / 2);
    a = 2 * unzigzag(zs) + 1;
    d = dm1 + 1;
  } else {
    auto [zs, t] = unpair((inner - 1) / 2);
    a = 2 * unzigzag(zs);
    d = 2 * t + 1;
  }
  Rational s = pow2(-static_cast<long>(e));
  Rational lo = Rational(a) * s, hi = Rational(a + d) * s;
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

OpenInterval dyadic_cover(const Enclosure& e, long k) {
  Rational step = pow2(-k);
  return {floor_dyadic(e.lo, k) - step, ceil_dyadic(e.hi, k) + step};
}

Nat encode_ball(const Ball& b) { return pair(encode_vector(b.center), encode_positive(b.radius)); }

Ball decode_ball(const Nat& code) {
  auto [c, r] = unpair(code);
  return {decode_vector(c), decode_positive(r)};
}

Nat encode_node(const Node& nu) {
  std::string bits;
  for (auto a : nu) {
    bits.append(a, '1');
    bits.push_back('0');
  }
  return bits_to_code(bits);
}

Node decode_node(const Nat& code) {
  std::string bits = code_to_bits(code);
  Node nu;
  std::uint64_t run = 0;
  for (char c : bits) {
    if (c == '1') {
      ++run;
    } else {
      nu.push_back(run);
      run = 0;
    }
  }
  if (run > 0) nu.push_back(run);
  return nu;
}

std::string to_string(const Node& nu) {
  std::string s = "(";
  for (std::size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + std::to_string(nu[i]);
  return s + ")";
}

bool is_prefix(const Node& a, const Node& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// ---------------------------------------------------------------- exponents

Exponent::Exponent(const Rational& p) : exact_(p) {
  exact_->canonicalize();
  if (p < 1) throw Error(ErrorCode::DomainError, "exponent must be >= 1, got " + p.get_str());
}

Exponent Exponent::from_refiner(std::function<Enclosure(long)> refine, std::string label) {
  Exponent e;
  e.refine_ = std::move(refine);
  e.label_ = std::move(label);
  if (e.at(8).hi < 1) throw Error(ErrorCode::DomainError, "exponent must be >= 1");
  return e;
}

Enclosure Exponent::at(long k) const {
  if (exact_) return Enclosure::point(*exact_);
  return refine_(k);
}

std::optional<int> Exponent::compare(const Rational& q) const {
  if (exact_) return *exact_ < q ? -1 : (*exact_ == q ? 0 : 1);
  for (long k = 8; k <= 200; k += 16) {
    Enclosure e = refine_(k);
    if (e.hi < q) return -1;
    if (e.lo > q) return 1;
  }
  return std::nullopt;
}

std::string Exponent::label() const { return exact_ ? exact_->get_str() : label_; }

namespace {

struct Mpfr {
  mpfr_t x;
  explicit Mpfr(long prec) { mpfr_init2(x, prec); }
  ~Mpfr() { mpfr_clear(x); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

Rational from_mpfr(const mpfr_t x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

}  // namespace

Enclosure pow_at(const Enclosure& base_in, const Enclosure& ex, long prec) {
  Enclosure base{base_in.lo < 0 ? Rational(0) : base_in.lo, base_in.hi < 0 ? Rational(0) : base_in.hi};
  if (ex.lo <= 0) throw Error(ErrorCode::DomainError, "pow_at needs a positive exponent");
  if (base.hi == 0) return Enclosure::point(0);
  if (ex.is_point() && ex.lo.get_den() == 1 && ex.lo.get_num().fits_ulong_p() && ex.lo <= 4096) {
    unsigned long e = ex.lo.get_num().get_ui();
    return {ipow(base.lo, e), ipow(base.hi, e)};
  }
  if (base.is_point() && (base.lo == 1)) return Enclosure::point(1);
  Mpfr xl(prec), xh(prec), yl(prec), yh(prec), t(prec);
  mpfr_set_q(xl.x, base.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(xh.x, base.hi.get_mpq_t(), MPFR_RNDU);
  mpfr_set_q(yl.x, ex.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(yh.x, ex.hi.get_mpq_t(), MPFR_RNDU);
  if (mpfr_sgn(xl.x) < 0) mpfr_set_ui(xl.x, 0, MPFR_RNDN);
  if (mpfr_sgn(yl.x) <= 0) mpfr_set_q(yl.x, ex.lo.get_mpq_t(), MPFR_RNDU);
  Rational lo, hi;
  bool first = true;
  for (auto* xb : {&xl, &xh}) {
    for (auto* yb : {&yl, &yh}) {
      mpfr_pow(t.x, xb->x, yb->x, MPFR_RNDD);
      Rational d = from_mpfr(t.x);
      mpfr_pow(t.x, xb->x, yb->x, MPFR_RNDU);
      Rational u = from_mpfr(t.x);
      if (first || d < lo) lo = d;
      if (first || u > hi) hi = u;
      first = false;
    }
  }
  if (lo < 0) lo = 0;
  return {lo, hi};
}

Enclosure abs_pow_at(const Rational& q, const Exponent& p, long prec) {
  Rational a = q < 0 ? Rational(-q) : q;
  if (a == 0) return Enclosure::point(0);
  if (a == 1) return Enclosure::point(1);
  return pow_at(Enclosure::point(a), p.at(prec), prec);
}

Enclosure root_at(const Enclosure& s, const Exponent& p, long prec) {
  if (s.hi <= 0) return Enclosure::point(0);
  if (s.is_point() && s.lo == 1) return Enclosure::point(1);
  Enclosure inv;
  if (p.exact()) {
    inv = Enclosure::point(1 / *p.exact());
  } else {
    Enclosure P = p.at(prec);
    inv = {1 / P.hi, 1 / P.lo};
  }
  return pow_at(s, inv, prec);
}

Enclosure refine_to(long k, const std::function<Enclosure(long)>& f) {
  Rational tol = pow2(-k);
  for (long prec = std::max<long>(k, 0) + 40; prec <= (1L << 17); prec *= 2) {
    Enclosure e = f(prec);
    if (e.width() <= tol) return e;
  }
  throw Error(ErrorCode::PrecisionExhausted, "could not reach width 2^-" + std::to_string(k));
}

Enclosure abs_pow(const Rational& q, const Exponent& p, long k) {
  return refine_to(k, [&](long prec) { return abs_pow_at(q, p, prec); });
}

}  // namespace lpw
