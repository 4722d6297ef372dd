// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/presentations.hpp"

#include <algorithm>

#include "lpw/disintegration.hpp"

namespace lpw {

Rational MeasureDescription::total() const {
  Rational t = nonatomic;
  for (const auto& w : atoms) t += w;
  return t;
}

StepFunction StepFunction::atom(std::uint64_t id, const Rational& value) {
  StepFunction f;
  if (value != 0) f.atoms[id] = value;
  return f;
}

StepFunction StepFunction::interval(const Rational& a, const Rational& b, const Rational& value) {
  StepFunction f;
  if (b <= a || value == 0) return f;
  f.jumps[a] = value;
  f.jumps[b] = -value;
  return f;
}

void StepFunction::add(const StepFunction& o, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [id, c] : o.atoms) {
    Rational v = atoms[id] + scale * c;
    if (v == 0) atoms.erase(id);
    else atoms[id] = v;
  }
  for (const auto& [x, j] : o.jumps) {
    Rational v = jumps[x] + scale * j;
    if (v == 0) jumps.erase(x);
    else jumps[x] = v;
  }
}

std::optional<MeasureSummary> Presentation::summary(std::uint64_t) const { return std::nullopt; }
std::optional<VectorTree> Presentation::disintegration(std::uint64_t) const { return std::nullopt; }

Enclosure Presentation::norm_at(const RationalVector& v, long prec) const {
  if (v.is_zero()) return Enclosure::point(0);
  return root_at(ppow_at(v, prec), p_, prec);
}

Enclosure Presentation::norm(const RationalVector& v, long k) const {
  return refine_to(k, [&](long prec) { return norm_at(v, prec); });
}

Enclosure Presentation::norm(const Nat& code, long k) const { return norm(decode_vector(code), k); }

Enclosure Presentation::ppow(const RationalVector& v, long k) const {
  return refine_to(k, [&](long prec) { return ppow_at(v, prec); });
}

StepFunction StepPresentation::realize(const RationalVector& v) const {
  StepFunction f;
  for (const auto& [j, a] : v.entries()) f.add(point(j), a);
  return f;
}

Enclosure StepPresentation::ppow_at(const RationalVector& v, long prec) const {
  StepFunction f = realize(v);
  auto levels = f.level_masses([this](std::uint64_t id) { return atom_weight(id); });
  Enclosure total = Enclosure::point(0);
  for (const auto& [c, mass] : levels) total = total + mass * abs_pow_at(c, exponent(), prec);
  return total;
}

std::pair<Rational, Rational> dyadic_interval(std::uint64_t t) {
  std::uint64_t d = 0;
  while ((std::uint64_t{2} << d) <= t + 1) ++d;
  Rational width = pow2(-static_cast<long>(d));
  Rational off(static_cast<unsigned long>(t + 1 - (std::uint64_t{1} << d)));
  return {off * width, (off + 1) * width};
}

bool same_exponent(const Exponent& a, const Exponent& b) {
  if (a.exact() && b.exact()) return *a.exact() == *b.exact();
  if (a.exact() || b.exact()) return false;
  return a.label() == b.label();
}

namespace {

class StandardLpN final : public StepPresentation {
 public:
  StandardLpN(std::uint64_t n, const Exponent& p) : StepPresentation(p), n_(n) {}
  StepFunction point(std::uint64_t j) const override { return j < n_ ? StepFunction::atom(j) : StepFunction{}; }
  Rational atom_weight(std::uint64_t) const override { return 1; }
  std::string describe() const override { return "l^" + exponent().label() + "_" + std::to_string(n_); }
  std::optional<MeasureSummary> summary(std::uint64_t) const override {
    return MeasureSummary{std::vector<Rational>(n_, Rational(1)), false, 0, true};
  }
  std::optional<VectorTree> disintegration(std::uint64_t depth) const override {
    return build_disintegration({std::vector<Rational>(n_, Rational(1)), 0}, depth);
  }
  std::optional<std::uint64_t> point_count() const override { return n_; }

 private:
  std::uint64_t n_;
};

class StandardLp final : public StepPresentation {
 public:
  using StepPresentation::StepPresentation;
  StepFunction point(std::uint64_t j) const override { return StepFunction::atom(j); }
  Rational atom_weight(std::uint64_t) const override { return 1; }
  std::string describe() const override { return "l^" + exponent().label(); }
  std::optional<MeasureSummary> summary(std::uint64_t budget) const override {
    std::uint64_t shown = std::clamp<std::uint64_t>(budget, 1, 64);
    return MeasureSummary{std::vector<Rational>(shown, Rational(1)), true, 0, true};
  }
  // Root sum_j 2^-j e_j, children 2^-j e_j for j < depth.
  std::optional<VectorTree> disintegration(std::uint64_t depth) const override {
    VectorTree t;
    RationalVector root;
    std::uint64_t n = std::max<std::uint64_t>(depth, 1);
    for (std::uint64_t j = 0; j < n; ++j) {
      root.set(j, pow2(-static_cast<long>(j)));
      t.nodes[{j}] = TreeEntry{RationalVector::unit(j, pow2(-static_cast<long>(j))), true, false, 0};
    }
    t.nodes[{}] = TreeEntry{root, false, false, pow2(1 - static_cast<long>(n))};
    return t;
  }
};

class StandardLp01 final : public StepPresentation {
 public:
  using StepPresentation::StepPresentation;
  StepFunction point(std::uint64_t t) const override {
    auto [a, b] = dyadic_interval(t);
    return StepFunction::interval(a, b);
  }
  Rational atom_weight(std::uint64_t) const override { return 0; }
  std::string describe() const override { return "L^" + exponent().label() + "[0,1]"; }
  std::optional<MeasureSummary> summary(std::uint64_t) const override { return MeasureSummary{{}, false, 1, true}; }
  std::optional<VectorTree> disintegration(std::uint64_t depth) const override {
    return build_disintegration({{}, 1}, depth);
  }
};

class MeasureBacked final : public StepPresentation {
 public:
  MeasureBacked(MeasureDescription d, const Exponent& p) : StepPresentation(p), d_(std::move(d)) {}
  StepFunction point(std::uint64_t j) const override {
    if (j < d_.atoms.size()) return StepFunction::atom(j);
    if (d_.nonatomic == 0) return {};
    auto [a, b] = dyadic_interval(j - d_.atoms.size());
    return StepFunction::interval(a * d_.nonatomic, b * d_.nonatomic);
  }
  Rational atom_weight(std::uint64_t id) const override { return id < d_.atoms.size() ? d_.atoms[id] : Rational(0); }
  std::string describe() const override {
    return "measure(" + std::to_string(d_.atoms.size()) + " atoms, nonatomic " + to_string(d_.nonatomic) + ")";
  }
  std::optional<MeasureSummary> summary(std::uint64_t) const override {
    return MeasureSummary{d_.atoms, false, d_.nonatomic, true};
  }
  std::optional<VectorTree> disintegration(std::uint64_t depth) const override {
    return build_disintegration(d_, depth);
  }
  std::optional<std::uint64_t> point_count() const override {
    if (d_.nonatomic == 0) return d_.atoms.size();
    return std::nullopt;
  }

 private:
  MeasureDescription d_;
};

// Distinguished points alternate: v_{2j} = left v_j, v_{2j+1} = right v_j.
class LpSum final : public Presentation {
 public:
  LpSum(PresentationPtr a, PresentationPtr b, const Exponent& p)
      : Presentation(p), a_(std::move(a)), b_(std::move(b)) {}

  Enclosure ppow_at(const RationalVector& v, long prec) const override {
    RationalVector l, r;
    for (const auto& [j, c] : v.entries()) (j % 2 == 0 ? l : r).set(j / 2, c);
    return a_->ppow_at(l, prec) + b_->ppow_at(r, prec);
  }
  std::string describe() const override { return "(" + a_->describe() + " (+)_p " + b_->describe() + ")"; }
  std::optional<MeasureSummary> summary(std::uint64_t budget) const override {
    auto x = a_->summary(budget), y = b_->summary(budget);
    if (!x || !y) return std::nullopt;
    MeasureSummary s = *x;
    s.atoms.insert(s.atoms.end(), y->atoms.begin(), y->atoms.end());
    s.atoms_infinite = x->atoms_infinite || y->atoms_infinite;
    s.nonatomic += y->nonatomic;
    s.exact = x->exact && y->exact;
    return s;
  }
  // Root with the two summands' trees below it, coordinates interleaved.
  std::optional<VectorTree> disintegration(std::uint64_t depth) const override {
    auto x = a_->disintegration(depth), y = b_->disintegration(depth);
    if (!x || !y) return std::nullopt;
    auto remap = [](const RationalVector& v, std::uint64_t side) {
      RationalVector out;
      for (const auto& [j, c] : v.entries()) out.set(2 * j + side, c);
      return out;
    };
    VectorTree t;
    if (x->empty() || y->empty()) {
      const VectorTree& only = x->empty() ? *y : *x;
      std::uint64_t side = x->empty() ? 1 : 0;
      for (const auto& [nu, e] : only.nodes) t.nodes[nu] = TreeEntry{remap(e.vec, side), e.terminal, e.halving, e.error};
      return t;
    }
    const VectorTree* parts[2] = {&*x, &*y};
    RationalVector root;
    Rational err = 0;
    for (std::uint64_t side = 0; side < 2; ++side) {
      for (const auto& [nu, e] : parts[side]->nodes) {
        Node mu{side};
        mu.insert(mu.end(), nu.begin(), nu.end());
        t.nodes[mu] = TreeEntry{remap(e.vec, side), e.terminal, e.halving, e.error};
      }
      root += remap(parts[side]->at({}).vec, side);
      err += parts[side]->at({}).error;
    }
    t.nodes[{}] = TreeEntry{root, false, false, err};
    return t;
  }
  std::optional<std::uint64_t> point_count() const override {
    auto x = a_->point_count(), y = b_->point_count();
    if (!x || !y) return std::nullopt;
    return std::max<std::uint64_t>(*x == 0 ? 0 : 2 * *x - 1, 2 * *y);
  }

 private:
  PresentationPtr a_, b_;
};

}  // namespace

PresentationPtr standard_presentation(SpaceKind kind, std::optional<std::uint64_t> n, const Exponent& p) {
  switch (kind) {
    case SpaceKind::LpN:
      if (!n || *n < 1) throw Error(ErrorCode::InvalidInput, "l^p_n needs n >= 1");
      return std::make_shared<StandardLpN>(*n, p);
    case SpaceKind::Lp:
      return std::make_shared<StandardLp>(p);
    case SpaceKind::Lp01:
      return std::make_shared<StandardLp01>(p);
  }
  throw Error(ErrorCode::InvalidInput, "unknown space kind");
}

PresentationPtr lp_sum(PresentationPtr a, PresentationPtr b, const Exponent& p) {
  if (!a || !b) throw Error(ErrorCode::InvalidInput, "null summand");
  if (!same_exponent(a->exponent(), p) || !same_exponent(b->exponent(), p))
    throw Error(ErrorCode::ExponentMismatch,
                "summands have exponents " + a->exponent().label() + " and " + b->exponent().label() +
                    ", sum asks for " + p.label());
  return std::make_shared<LpSum>(std::move(a), std::move(b), p);
}

PresentationPtr measure_backed(const MeasureDescription& desc, const Exponent& p) {
  for (const auto& w : desc.atoms)
    if (w <= 0) throw Error(ErrorCode::InvalidInput, "atom weights must be positive");
  if (desc.nonatomic < 0) throw Error(ErrorCode::InvalidInput, "nonatomic mass must be nonnegative");
  return std::make_shared<MeasureBacked>(desc, p);
}

}  // namespace lpw
