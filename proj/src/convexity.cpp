// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/convexity.hpp"

#include <algorithm>
#include <functional>

namespace lpw {

namespace {

void check_domain(const Exponent& p, const Rational& eps) {
  if (eps <= 0 || eps > 2) throw Error(ErrorCode::DomainError, "eps must lie in (0, 2], got " + to_string(eps));
  auto c = p.compare(1);
  if (!c || *c <= 0) throw Error(ErrorCode::DomainError, "delta needs p > 1, got " + p.label());
}

Enclosure inverse_exponent(const Exponent& p, long prec) {
  if (p.exact()) return Enclosure::point(1 / *p.exact());
  Enclosure e = p.at(prec);
  return {1 / e.hi, 1 / e.lo};
}

Enclosure hanner_sum_at(const Exponent& p, const Rational& eps, const Rational& d, long prec) {
  Rational a = 1 - d + eps / 2;
  Rational b = 1 - d - eps / 2;
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  Enclosure pe = p.at(prec);
  return pow_at(Enclosure::point(a), pe, prec) + pow_at(Enclosure::point(b), pe, prec);
}

bool is_two_or_more(const Exponent& p) {
  auto c = p.compare(2);
  if (!c) throw Error(ErrorCode::PrecisionExhausted, "cannot tell " + p.label() + " from 2");
  return *c >= 0;
}

}  // namespace

Enclosure hanner_sum(const Exponent& p, const Rational& eps, const Rational& d, long k) {
  return refine_to(k, [&](long prec) { return hanner_sum_at(p, eps, d, prec); });
}

Enclosure delta_closed_form(const Exponent& p, const Rational& eps, long k) {
  check_domain(p, eps);
  return refine_to(k, [&](long prec) {
    Enclosure a = pow_at(Enclosure::point(eps / 2), p.at(prec), prec);
    Enclosure b{1 - a.hi, 1 - a.lo};
    if (b.lo < 0) b.lo = 0;
    Enclosure c = pow_at(b, inverse_exponent(p, prec), prec);
    return Enclosure{1 - c.hi, 1 - c.lo};
  });
}

Enclosure delta_implicit(const Exponent& p, const Rational& eps, long k) {
  check_domain(p, eps);
  // The sum is strictly decreasing in d, is >= 2 at d = 0 and <= 2 at d = 1.
  Rational lo = 0, hi = 1;
  const Rational tol = pow2(-k);
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    int side = 0;
    for (long prec = k + 40; prec <= 8192; prec *= 2) {
      Enclosure g = hanner_sum_at(p, eps, mid, prec);
      if (g.lo > 2) side = 1;
      else if (g.hi < 2) side = -1;
      else if (g.is_point()) return Enclosure::point(mid);
      if (side != 0) break;
    }
    if (side == 0) throw Error(ErrorCode::PrecisionExhausted, "delta bisection could not decide a midpoint");
    if (side > 0) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

Enclosure delta(const Exponent& p, const Rational& eps, long k) {
  check_domain(p, eps);
  return is_two_or_more(p) ? delta_closed_form(p, eps, k) : delta_implicit(p, eps, k);
}

HannerCertificate certify_hanner(const Exponent& p, const Rational& eps, const RationalVector& u,
                                 const RationalVector& v, long k) {
  check_domain(p, eps);
  auto pres = standard_presentation(SpaceKind::LpN, 2, p);
  const Rational tol = pow2(-k);
  HannerCertificate c;
  Enclosure nu = pres->norm(u, k + 4), nv = pres->norm(v, k + 4);
  c.unit_norms = nu.lo > 1 - tol && nu.hi < 1 + tol && nv.lo > 1 - tol && nv.hi < 1 + tol;
  Enclosure nd = pres->norm(u - v, k + 4);
  c.difference = nd.lo > eps - tol && nd.hi < eps + tol;
  Enclosure ns = pres->norm(u + v, k + 4);
  Enclosure defect{1 - ns.hi / 2, 1 - ns.lo / 2};
  Enclosure d = delta(p, eps, k + 4);
  c.defect = defect.hi - d.lo < 2 * tol && d.hi - defect.lo < 2 * tol;
  return c;
}

HannerWitnesses hanner_witnesses(const Exponent& p, const Rational& eps, long k) {
  check_domain(p, eps);
  HannerWitnesses w;
  w.delta = delta(p, eps, k + 8);
  const long grid = k + 12;
  Rational d = floor_dyadic(w.delta.mid(), grid);
  Rational half = eps / 2;
  if (is_two_or_more(p)) {
    w.u = RationalVector{1 - d, half};
    w.v = RationalVector{1 - d, -half};
  } else {
    // 2^(-1/p), rounded to the working grid.
    Enclosure root = refine_to(grid, [&](long prec) {
      return pow_at(Enclosure::point(2), inverse_exponent(p, prec), prec);
    });
    Rational c = floor_dyadic(1 / root.mid(), grid);
    w.u = RationalVector{floor_dyadic(c * (1 - d + half), grid), floor_dyadic(c * (1 - d - half), grid)};
    w.v = RationalVector{w.u.get(1), w.u.get(0)};
  }
  w.certificate = certify_hanner(p, eps, w.u, w.v, k);
  return w;
}

// ---------------------------------------------------------------- exponent

const char* to_string(CutVerdict v) { return v == CutVerdict::AcceptedIntoY ? "AcceptedIntoY" : "NotYet"; }

namespace {

// Norm reads through keyed positions of a name.
class Reads {
 public:
  Reads(NameReader& r, long k) : r_(r), k_(k) {}

  std::optional<Enclosure> norm(const RationalVector& v) {
    Nat c = encode_vector(v);
    if (!r_.probe(c, k_)) return std::nullopt;
    auto b = r_.bounds(c);
    if (!b.lower || !b.upper) return std::nullopt;
    return Enclosure{*b.lower, *b.upper};
  }
  bool lt(const RationalVector& v, const Rational& r) { return norm(v) && r_.lt(encode_vector(v), r); }
  bool gt(const RationalVector& v, const Rational& r) { return norm(v) && r_.gt(encode_vector(v), r); }
  bool exhausted() const { return r_.remaining() == 0; }

 private:
  NameReader& r_;
  long k_;
};

std::vector<RationalVector> witness_basis(std::uint64_t points) {
  std::vector<RationalVector> out;
  for (std::uint64_t i = 0; i < points; ++i) out.push_back(RationalVector::unit(i));
  for (std::uint64_t i = 0; i < points; ++i)
    for (std::uint64_t j = i + 1; j < points; ++j) {
      out.push_back(RationalVector::unit(i) + RationalVector::unit(j));
      out.push_back(RationalVector::unit(i) - RationalVector::unit(j));
    }
  return out;
}

// One candidate family: tau0 = s(x + t y), tau1 = s(x - t y).
std::optional<DefectWitness> witness_for_pair(Reads& reads, const RationalVector& x, const RationalVector& y,
                                              const Rational& eps, const SearchOptions& opts) {
  const Rational r0 = pow2(-opts.r0_log2);
  const Rational rho = (eps + 3 * r0) / (1 + r0 / 2);
  auto ny = reads.norm(y);
  if (!ny || ny->hi < pow2(-10)) return std::nullopt;
  auto nx = reads.norm(x);
  if (!nx || nx->hi < pow2(-10)) return std::nullopt;
  const Rational Ny = ny->mid();

  auto spread = [&](const Rational& t) -> std::optional<Rational> {
    auto a = reads.norm(x + t * y);
    auto b = reads.norm(x - t * y);
    if (!a || !b) return std::nullopt;
    return std::max(a->mid(), b->mid());
  };
  auto phi = [&](const Rational& t) -> std::optional<Rational> {
    auto m = spread(t);
    if (!m) return std::nullopt;
    return 2 * t * Ny - rho * *m;
  };

  Rational hi = 1;
  for (;;) {
    auto v = phi(hi);
    if (!v) return std::nullopt;
    if (*v > 0) break;
    hi *= 2;
    if (hi > pow2(20)) return std::nullopt;
  }
  Rational lo = 0;
  for (int i = 0; i < opts.bisection_steps; ++i) {
    Rational mid = (lo + hi) / 2;
    auto v = phi(mid);
    if (!v) return std::nullopt;
    if (*v > 0) hi = mid;
    else lo = mid;
  }
  auto m = spread(hi);
  if (!m || *m <= 0) return std::nullopt;
  Rational s = floor_dyadic((1 + r0 / 2) / *m, opts.read_precision + 8);

  DefectWitness w;
  w.eps = eps;
  w.r0 = r0;
  w.tau0 = s * (x + hi * y);
  w.tau1 = s * (x - hi * y);
  for (const auto* tau : {&w.tau0, &w.tau1})
    if (!reads.gt(*tau, 1) || !reads.lt(*tau, 1 + r0)) return std::nullopt;
  if (!reads.gt(w.tau0 - w.tau1, eps + 2 * r0)) return std::nullopt;
  auto sum = reads.norm(w.tau0 + w.tau1);
  if (!sum) return std::nullopt;
  w.sum_lower = sum->lo;
  w.defect_bound = 1 - w.sum_lower / 2 + r0;
  return w;
}

}  // namespace

std::optional<DefectWitness> find_defect_witness(NameReader& reader, const Rational& eps, const SearchOptions& opts) {
  if (eps <= 0 || eps >= 2) throw Error(ErrorCode::DomainError, "witness search needs eps in (0, 2)");
  Reads reads(reader, opts.read_precision);
  auto basis = witness_basis(std::max<std::uint64_t>(opts.points, 2));
  std::optional<DefectWitness> best;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (reads.exhausted()) return best;
      auto w = witness_for_pair(reads, basis[i], basis[j], eps, opts);
      if (w && (!best || w->defect_bound < best->defect_bound)) best = std::move(w);
    }
  }
  return best;
}

CutVerdict exponent_cut_step(const NamePtr& f, const Rational& r, std::uint64_t stage, const SearchOptions& opts) {
  if (r <= 1) return CutVerdict::NotYet;
  NameReader reader(f, stage);
  auto w = find_defect_witness(reader, 1, opts);
  if (!w) return CutVerdict::NotYet;
  // r' = sum_lower - 2 r0 works exactly when delta(r,1) > defect_bound.
  return delta(r, 1, 40).lo > w->defect_bound ? CutVerdict::AcceptedIntoY : CutVerdict::NotYet;
}

namespace {

// Least point of (lo, hi] where pred flips from false (at lo) to true (at hi).
Rational bisect(Rational lo, Rational hi, const std::function<bool(const Rational&)>& pred, int steps) {
  for (int i = 0; i < steps; ++i) {
    Rational mid = (lo + hi) / 2;
    if (pred(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

// Last point of [lo, hi) where pred holds, given pred(lo) and !pred(hi).
Rational bisect_last(Rational lo, Rational hi, const std::function<bool(const Rational&)>& pred, int steps) {
  for (int i = 0; i < steps; ++i) {
    Rational mid = (lo + hi) / 2;
    if (pred(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

Enclosure delta_or_zero(const Rational& q, const Rational& eps, long k) {
  if (q <= 1) return Enclosure::point(0);
  return delta(q, eps, k);
}

}  // namespace

ExponentEstimate estimate_exponent(const NamePtr& f, const Rational& tol, std::uint64_t budget,
                                   const SearchOptions& opts) {
  ExponentEstimate est;
  NameReader reader(f, budget);
  auto w1 = find_defect_witness(reader, 1, opts);
  if (!w1) {
    est.used = reader.used();
    return est;
  }
  est.witnesses.push_back(*w1);
  const Rational D = w1->defect_bound;
  const Rational D_lo = D - pow2(-opts.margin_log2);
  const Rational R = kMaxExponent;
  const int steps = 14;
  const long k = 40;

  auto accepted = [&](const Rational& r) { return r > 1 && delta(r, 1, k).lo > D; };
  auto below_band = [&](const Rational& r) { return delta_or_zero(r, 1, k).hi < D_lo; };

  for (long j = 1; j < 32; ++j) {
    Rational r = 1 + Rational(j, 32);
    if (accepted(r)) est.right.accepted.push_back(r);
  }
  for (long j = 1; j <= (kMaxExponent - 2) * 4; ++j) {
    Rational r = 2 + Rational(j, 4);
    if (accepted(r)) est.left.accepted.push_back(r);
  }

  // Exponents at most 2: p < b for the least accepted b.
  std::optional<ExponentRange> low, high;
  Rational b = accepted(2) ? bisect(1, 2, accepted, steps) : Rational(2);
  if (!below_band(b)) {
    Rational a = below_band(1) ? bisect_last(1, b, below_band, steps) : Rational(1);
    low = ExponentRange{a, b};
  }
  // Exponents at least 2: p > a' for the greatest accepted a'.
  Rational a2 = 2;
  if (accepted(2)) a2 = accepted(R) ? R : bisect_last(2, R, accepted, steps + 4);
  if (!below_band(a2)) {
    Rational b2 = below_band(R) ? bisect(a2, R, below_band, steps + 4) : R;
    high = ExponentRange{a2, b2};
  }

  if (low && high && low->hi == 2 && high->lo == 2) {
    est.candidates.push_back({low->lo, high->hi});
  } else {
    for (const Rational& eps : {Rational(1, 2), Rational(3, 2), Rational(15, 8)}) {
      if (!(low && high)) break;
      auto w = find_defect_witness(reader, eps, opts);
      if (!w) continue;
      est.witnesses.push_back(*w);
      // delta(., eps) increases on (1,2] and decreases on [2,inf).
      if (low && delta_or_zero(low->lo, eps, k).lo > w->defect_bound) low.reset();
      if (high && delta(high->hi, eps, k).lo > w->defect_bound) high.reset();
    }
    if (low) est.candidates.push_back(*low);
    if (high) est.candidates.push_back(*high);
  }

  if (est.candidates.size() == 1) {
    est.lo = est.candidates[0].lo;
    est.hi = est.candidates[0].hi;
    est.determined = est.hi - est.lo <= tol;
    if (est.lo <= 2 && 2 <= est.hi && reader.remaining() > 0) {
      auto hc = hilbert_check(f, std::min<std::uint64_t>(reader.remaining(), 4000));
      est.parallelogram_violation = hc.violation;
      est.used += hc.stage;
    }
  }
  est.used += reader.used();
  return est;
}

// ---------------------------------------------------------------- Hilbert

namespace {

std::vector<RationalVector> small_vectors(std::uint64_t points) {
  std::vector<RationalVector> out;
  for (std::uint64_t i = 0; i < points; ++i) out.push_back(RationalVector::unit(i));
  std::vector<RationalVector> rest;
  std::vector<long> coeff(points, -2);
  for (;;) {
    RationalVector v;
    int nonzero = 0;
    for (std::uint64_t i = 0; i < points; ++i)
      if (coeff[i] != 0) {
        v.set(i, coeff[i]);
        ++nonzero;
      }
    if (nonzero >= 2 || (nonzero == 1 && v.height() > 2)) rest.push_back(v);
    std::uint64_t i = 0;
    while (i < points && coeff[i] == 2) coeff[i++] = -2;
    if (i == points) break;
    ++coeff[i];
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [](const RationalVector& a, const RationalVector& b) { return a.height() < b.height(); });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Rational sq(const Rational& x) { return x * x; }
Rational nonneg(const Rational& x) { return x < 0 ? Rational(0) : x; }

}  // namespace

HilbertCheck hilbert_check(const NamePtr& f, std::uint64_t stage, std::uint64_t points) {
  HilbertCheck out;
  NameReader reader(f, stage);
  auto vecs = small_vectors(std::max<std::uint64_t>(points, 1));
  for (std::size_t j = 1; j < vecs.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const RationalVector& t0 = vecs[i];
      const RationalVector& t1 = vecs[j];
      const Nat cs = encode_vector(t0 + t1), cd = encode_vector(t0 - t1);
      const Nat c0 = encode_vector(t0), c1 = encode_vector(t1);
      ++out.pairs_checked;
      for (long k : {6L, 16L, 30L}) {
        for (const Nat* c : {&cs, &cd, &c0, &c1})
          if (!reader.probe(*c, k)) {
            out.stage = reader.used();
            return out;
          }
        Bounds s = reader.bounds(cs), d = reader.bounds(cd), a = reader.bounds(c0), b = reader.bounds(c1);
        if (!s.upper || !d.upper || !a.upper || !b.upper) break;
        Rational r0 = *s.upper, r1 = *d.upper, r2 = nonneg(*a.lower), r3 = nonneg(*b.lower);
        if (2 * (sq(r2) + sq(r3)) > sq(r0) + sq(r1)) {
          out.violation = true;
          out.witness = ParallelogramViolation{t0, t1, r0, r1, r2, r3, 1};
        } else {
          r0 = nonneg(*s.lower), r1 = nonneg(*d.lower), r2 = *a.upper, r3 = *b.upper;
          if (2 * (sq(r2) + sq(r3)) < sq(r0) + sq(r1)) {
            out.violation = true;
            out.witness = ParallelogramViolation{t0, t1, r0, r1, r2, r3, 2};
          }
        }
        if (out.violation) {
          out.stage = reader.used();
          return out;
        }
      }
    }
  }
  out.stage = reader.used();
  return out;
}

HilbertDimension hilbert_dimension(const Presentation& pres, std::uint64_t n, std::uint64_t budget) {
  auto count = pres.point_count();
  std::uint64_t limit = count ? std::min(*count, budget) : budget;
  // Enclosure of ||v||^2; exact for step presentations at p = 2.
  auto square = [&](const RationalVector& v) {
    if (v.is_zero()) return Enclosure::point(0);
    if (pres.exponent().is_two()) return pres.ppow(v, 60);
    Enclosure e = pres.norm(v, 60);
    return e * e;
  };
  // Gram entries <v_a, v_b> by polarization.
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> gram;
  auto inner = [&](std::uint64_t a, std::uint64_t b) -> std::optional<Rational> {
    if (a > b) std::swap(a, b);
    auto it = gram.find({a, b});
    if (it != gram.end()) return it->second;
    RationalVector va = RationalVector::unit(a), vb = RationalVector::unit(b);
    Enclosure s = square(va + vb), d = square(va - vb);
    if (!s.is_point() || !d.is_point()) return std::nullopt;
    Rational g = (s.lo - d.lo) / 4;
    gram[{a, b}] = g;
    return g;
  };

  // Orthogonal combinations w_i = sum c_il v_l with their squared norms.
  std::vector<std::map<std::uint64_t, Rational>> basis;
  std::vector<Rational> basis_sq;
  for (std::uint64_t j = 0; j < std::min<std::uint64_t>(limit, 8); ++j) {
    for (std::uint64_t l = 0; l < j; ++l) {
      RationalVector va = RationalVector::unit(l), vb = RationalVector::unit(j);
      Enclosure lhs = square(va + vb) + square(va - vb), rhs = Rational(2) * (square(va) + square(vb));
      if (!overlaps(lhs, rhs))
        throw Error(ErrorCode::NotHilbert, "parallelogram law fails on v_" + std::to_string(l) + ", v_" +
                                               std::to_string(j));
    }
  }
  for (std::uint64_t j = 0; j < limit; ++j) {
    if (basis.size() >= n) return {DimensionKind::AtLeast, n};
    std::map<std::uint64_t, Rational> w{{j, Rational(1)}};
    auto vv = inner(j, j);
    if (!vv) return {DimensionKind::Indeterminate, basis.size()};
    Rational residual = *vv;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Rational dot = 0;
      for (const auto& [l, c] : basis[i]) {
        auto g = inner(j, l);
        if (!g) return {DimensionKind::Indeterminate, basis.size()};
        dot += c * *g;
      }
      Rational coef = dot / basis_sq[i];
      for (const auto& [l, c] : basis[i]) w[l] -= coef * c;
      residual -= dot * coef;
    }
    if (residual > 0) {
      basis.push_back(std::move(w));
      basis_sq.push_back(residual);
    }
  }
  if (basis.size() >= n) return {DimensionKind::AtLeast, n};
  if (count && limit == *count) return {DimensionKind::Exactly, basis.size()};
  return {DimensionKind::Indeterminate, basis.size()};
}

}  // namespace lpw
