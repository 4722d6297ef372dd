// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/orders.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "lpw/disintegration.hpp"

namespace lpw {

namespace {

class MatrixOrder final : public OrderDiagram {
 public:
  explicit MatrixOrder(std::vector<std::vector<bool>> m) : m_(std::move(m)) {
    for (const auto& row : m_)
      if (row.size() != m_.size()) throw Error(ErrorCode::InvalidInput, "order matrix must be square");
  }
  bool leq(std::uint64_t s, std::uint64_t t) const override {
    if (s >= m_.size() || t >= m_.size()) throw Error(ErrorCode::InvalidInput, "element outside the order");
    return m_[s][t];
  }
  std::optional<std::uint64_t> size() const override { return m_.size(); }
  std::string describe() const override { return "matrix(" + std::to_string(m_.size()) + ")"; }

 private:
  std::vector<std::vector<bool>> m_;
};

// Orders read off a value map; leq compares values.
class RuleOrder final : public OrderDiagram {
 public:
  RuleOrder(std::function<Rational(std::uint64_t)> value, std::optional<std::uint64_t> n, std::string label)
      : value_(std::move(value)), n_(n), label_(std::move(label)) {}
  bool leq(std::uint64_t s, std::uint64_t t) const override {
    if (n_ && (s >= *n_ || t >= *n_)) throw Error(ErrorCode::InvalidInput, "element outside the order");
    std::lock_guard<std::mutex> lock(mu_);
    return value(s) <= value(t);
  }
  std::optional<std::uint64_t> size() const override { return n_; }
  std::string describe() const override { return label_; }

 private:
  const Rational& value(std::uint64_t s) const {
    if (s >= kMaxOrderElements) throw Error(ErrorCode::InvalidInput, "element outside the explored range");
    while (cache_.size() <= s) cache_.push_back(value_(cache_.size()));
    return cache_[s];
  }

  std::function<Rational(std::uint64_t)> value_;
  mutable std::mutex mu_;
  mutable std::vector<Rational> cache_;
  std::optional<std::uint64_t> n_;
  std::string label_;
};

// Bits of i + 1 after the leading one, most significant first.
std::vector<bool> heap_path(std::uint64_t i) {
  std::uint64_t h = i + 1;
  std::vector<bool> bits;
  while (h > 1) {
    bits.push_back(h & 1);
    h >>= 1;
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

}  // namespace

OrderPtr matrix_order(std::vector<std::vector<bool>> m) { return std::make_shared<MatrixOrder>(std::move(m)); }

OrderPtr omega_order() {
  return std::make_shared<RuleOrder>([](std::uint64_t s) -> Rational { return Rational(static_cast<unsigned long>(s)); },
                                     std::nullopt, "omega");
}

OrderPtr omega_star_order() {
  return std::make_shared<RuleOrder>([](std::uint64_t s) -> Rational { return -Rational(static_cast<unsigned long>(s)); },
                                     std::nullopt, "omega*");
}

OrderPtr eta_order() { return std::make_shared<RuleOrder>(stern_brocot, std::nullopt, "eta"); }

OrderPtr eta_plus_order(std::uint64_t n) {
  return std::make_shared<RuleOrder>(
      [n](std::uint64_t s) -> Rational { return s < n ? Rational(static_cast<unsigned long>(1 + s)) : stern_brocot(s - n); },
      std::nullopt, "eta+" + std::to_string(n));
}

OrderPtr value_order(std::vector<Rational> values, std::string label) {
  std::set<Rational> seen(values.begin(), values.end());
  if (seen.size() != values.size()) throw Error(ErrorCode::InvalidOrder, "repeated value in " + label);
  auto shared = std::make_shared<const std::vector<Rational>>(std::move(values));
  std::uint64_t n = shared->size();
  return std::make_shared<RuleOrder>([shared](std::uint64_t s) -> Rational { return (*shared)[s]; }, n, std::move(label));
}

Rational stern_brocot(std::uint64_t i) {
  Nat a = 0, b = 1, c = 1, d = 1;  // lo = a/b, hi = c/d
  for (bool right : heap_path(i)) {
    Nat num = a + c, den = b + d;
    if (right) a = num, b = den;
    else c = num, d = den;
  }
  Rational q(Nat(a + c), Nat(b + d));
  q.canonicalize();
  return q;
}

Rational calkin_wilf(std::uint64_t i) {
  Nat a = 1, b = 1;
  for (bool right : heap_path(i)) {
    if (right) a = a + b;
    else b = a + b;
  }
  Rational q(a, b);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- embedding

FaithfulEmbedding::FaithfulEmbedding(OrderPtr ord) : ord_(std::move(ord)) {
  if (!ord_) throw Error(ErrorCode::InvalidInput, "null order");
}

void FaithfulEmbedding::extend() {
  const std::uint64_t s = values_.size();
  if (s >= kMaxOrderElements) throw Error(ErrorCode::InvalidInput, "order exploration limit reached");
  if (!ord_->leq(s, s)) throw Error(ErrorCode::InvalidOrder, "element " + std::to_string(s) + " is not <= itself");
  if (s == 0) {
    values_.push_back(0);
    sorted_.insert(0);
    return;
  }
  std::optional<Rational> below, above;  // M0 and m0
  for (std::uint64_t t = 0; t < s; ++t) {
    bool ts = ord_->leq(t, s), st = ord_->leq(s, t);
    if (ts && st)
      throw Error(ErrorCode::InvalidOrder,
                  "elements " + std::to_string(t) + " and " + std::to_string(s) + " are <= each other");
    if (!ts && !st)
      throw Error(ErrorCode::InvalidOrder,
                  "elements " + std::to_string(t) + " and " + std::to_string(s) + " are incomparable");
    const Rational& g = values_[t];
    if (ts) {
      if (!below || g > *below) below = g;
    } else if (!above || g < *above) {
      above = g;
    }
  }
  // Transitivity: everything below s must sit below everything above it.
  if (below && above && !(*below < *above))
    throw Error(ErrorCode::InvalidOrder, "element " + std::to_string(s) + " breaks transitivity");
  Rational g;
  if (!above) g = *sorted_.rbegin() + 1;
  else if (!below) g = *sorted_.begin() - 1;
  else g = (*below + *above) / 2;
  values_.push_back(g);
  sorted_.insert(g);
}

void FaithfulEmbedding::explore(std::uint64_t n) {
  if (auto m = ord_->size()) n = std::min(n, *m);
  while (values_.size() < n) extend();
}

const Rational& FaithfulEmbedding::value(std::uint64_t s) {
  if (auto m = ord_->size(); m && s >= *m) throw Error(ErrorCode::InvalidInput, "element outside the order");
  explore(s + 1);
  return values_[s];
}

Rational faithful_embed(const OrderPtr& ord, std::uint64_t s) {
  FaithfulEmbedding g(ord);
  return g.value(s);
}

std::vector<Rational> embedding_trace(const OrderPtr& ord, std::uint64_t stage) {
  FaithfulEmbedding g(ord);
  g.explore(stage);
  return g.values();
}

std::vector<std::pair<Rational, Rational>> adjacencies(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 1; i < values.size(); ++i) out.emplace_back(values[i - 1], values[i]);
  return out;
}

// ---------------------------------------------------------------- transfer

namespace {

constexpr std::uint64_t kExploreCap = 1024;

class OrderSpace final : public StepPresentation {
 public:
  OrderSpace(OrderPtr ord, const Exponent& p) : StepPresentation(p), ord_(ord), g_(ord) {}

  StepFunction point(std::uint64_t j) const override {
    if (j == 0) return {};
    auto [s, t] = unpair(Nat(static_cast<unsigned long>(j - 1)));
    if (!s.fits_ulong_p() || !t.fits_ulong_p()) return {};
    std::uint64_t a = s.get_ui(), b = t.get_ui();
    if (auto m = ord_->size(); m && (a >= *m || b >= *m)) return {};
    Rational ga, gb;
    {
      std::lock_guard<std::mutex> lock(mu_);
      ga = g_.value(a);
      gb = g_.value(b);
    }
    return StepFunction::interval(ga, gb);
  }
  Rational atom_weight(std::uint64_t) const override { return 0; }
  std::string describe() const override { return "L^" + exponent().label() + "(Omega_" + ord_->describe() + ")"; }

  std::optional<MeasureSummary> summary(std::uint64_t budget) const override {
    if (auto m = ord_->size()) {
      MeasureSummary out;
      for (const auto& [a, b] : adjacencies(values(*m))) out.atoms.push_back(b - a);
      return out;
    }
    // Adjacencies present among the first N/8 elements and still present
    // among the first N are taken as atoms.
    const std::uint64_t n = std::clamp<std::uint64_t>(budget, 16, kExploreCap);
    auto stable = [&](std::uint64_t big) {
      auto early = adjacencies(values(big / 8));
      auto late = adjacencies(values(big));
      std::set<std::pair<Rational, Rational>> keep(late.begin(), late.end());
      std::vector<Rational> lens;
      for (const auto& pr : early)
        if (keep.count(pr)) lens.push_back(pr.second - pr.first);
      return lens;
    };
    MeasureSummary out;
    out.exact = false;
    out.atoms = stable(n);
    out.atoms_infinite = out.atoms.size() > stable(n / 2).size();
    auto early = values(n / 8);
    auto [lo, hi] = std::minmax_element(early.begin(), early.end());
    Rational mass = *hi - *lo;
    for (const auto& w : out.atoms) mass -= w;
    out.nonatomic = mass;
    return out;
  }

  // Finite orders: the root is the whole span and the atoms sit below it.
  std::optional<VectorTree> disintegration(std::uint64_t) const override {
    auto m = ord_->size();
    if (!m) return std::nullopt;
    auto vals = values(*m);
    std::vector<std::uint64_t> by_value(*m);
    for (std::uint64_t s = 0; s < *m; ++s) by_value[s] = s;
    std::sort(by_value.begin(), by_value.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    auto index = [](std::uint64_t s, std::uint64_t t) {
      return 1 + pair(Nat(static_cast<unsigned long>(s)), Nat(static_cast<unsigned long>(t))).get_ui();
    };
    VectorTree t;
    RationalVector root = RationalVector::unit(index(by_value.front(), by_value.back()));
    if (*m == 2) {
      t.nodes[{}] = TreeEntry{root, true, false, 0};
      return t;
    }
    t.nodes[{}] = TreeEntry{root, false, false, 0};
    for (std::uint64_t i = 0; i + 1 < *m; ++i)
      t.nodes[{i}] = TreeEntry{RationalVector::unit(index(by_value[i], by_value[i + 1])), true, false, 0};
    return t;
  }

  std::optional<std::uint64_t> point_count() const override {
    auto m = ord_->size();
    if (!m) return std::nullopt;
    return 1 + pair(Nat(static_cast<unsigned long>(*m - 1)), Nat(static_cast<unsigned long>(*m - 1))).get_ui() + 1;
  }

 private:
  std::vector<Rational> values(std::uint64_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    g_.explore(n);
    return std::vector<Rational>(g_.values().begin(), g_.values().begin() + std::min<std::uint64_t>(n, g_.explored()));
  }

  OrderPtr ord_;
  mutable std::mutex mu_;
  mutable FaithfulEmbedding g_;
};

}  // namespace

PresentationPtr order_to_space(const OrderPtr& ord, const Exponent& p) {
  if (!ord) throw Error(ErrorCode::InvalidInput, "null order");
  if (auto m = ord->size(); m && *m < 2)
    throw Error(ErrorCode::TooFewElements, "the order has " + std::to_string(*m) + " element(s), need 2");
  auto out = std::make_shared<OrderSpace>(ord, p);
  // Validates the first elements up front so bad diagrams fail here.
  out->summary(16);
  return out;
}

// ---------------------------------------------------------------- gadgets

namespace {

class ListBuilder {
 public:
  void add(const Rational& q) {
    if (seen_.insert(q).second) {
      if (list_.size() >= kMaxOrderElements) throw Error(ErrorCode::InvalidInput, "gadget order grew too large");
      list_.push_back(q);
    }
  }
  std::size_t size() const { return list_.size(); }
  std::vector<Rational> take() { return std::move(list_); }

 private:
  std::vector<Rational> list_;
  std::set<Rational> seen_;
};

}  // namespace

GadgetOrder gadget_sigma03(const Predicate3& Q, const DecidableSet& A, std::uint64_t stage) {
  // l(x, s): largest y <= s with every y' < y witnessed by some z <= s.
  auto ell = [&](std::uint64_t x, std::uint64_t s) {
    std::uint64_t y = 0;
    while (y < s) {
      bool found = false;
      for (std::uint64_t z = 0; z <= s && !found; ++z) found = Q(x, y, z);
      if (!found) break;
      ++y;
    }
    return y;
  };

  GadgetOrder out;
  ListBuilder xs;
  xs.add(0);
  out.trace.size.push_back(1);
  std::vector<std::uint64_t> best;  // best[x] = max l(x, s') over s' < s
  std::optional<std::uint64_t> last_a;
  for (std::uint64_t s = 0; s < stage; ++s) {
    std::optional<std::uint64_t> delta;
    for (std::uint64_t x = 0; x <= s; ++x) {
      if (x == best.size()) {
        std::uint64_t b = 0;
        for (std::uint64_t t = 0; t < s; ++t) b = std::max(b, ell(x, t));
        best.push_back(b);
      }
      std::uint64_t l = ell(x, s);
      bool grows = s == 0 || l > best[x];
      if (grows && !delta) delta = x;
    }
    for (std::uint64_t x = 0; x <= s; ++x) best[x] = std::max(best[x], ell(x, s));

    out.trace.delta.push_back(delta);
    if (!delta) {
      out.trace.z.push_back(0);
      out.trace.size.push_back(xs.size());
      continue;
    }
    std::uint64_t a = last_a ? *last_a + 1 : 0;
    for (std::uint64_t tries = 0;; ++a, ++tries) {
      if (tries > 4096) throw Error(ErrorCode::InvalidInput, "the set A looks finite");
      if (A(a) && *delta + a > 0) break;
    }
    last_a = a;
    std::uint64_t z = *delta + a;
    if (z >= 20) throw Error(ErrorCode::InvalidInput, "gadget order grew too large");
    out.trace.z.push_back(z);
    long e = static_cast<long>(*delta + z);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << z); ++j)
      xs.add(Rational(static_cast<unsigned long>(j)) * pow2(-e));
    out.trace.size.push_back(xs.size());
  }
  out.points = xs.take();
  out.order = value_order(out.points, "sigma03@" + std::to_string(stage));
  return out;
}

GadgetOrder gadget_pi02(const Predicate2& Q, std::uint64_t n, std::uint64_t stage) {
  GadgetOrder out;
  ListBuilder xs;
  std::uint64_t cw = 0;  // Calkin-Wilf terms considered so far
  std::vector<Rational> waiting;
  for (std::uint64_t s = 1; s <= stage; ++s) {
    std::uint64_t z = 0;
    while (z < s) {
      bool found = false;
      for (std::uint64_t y = 0; y <= s && !found; ++y) found = Q(z, y);
      if (!found) break;
      ++z;
    }
    Rational cap(static_cast<unsigned long>(z + 1));
    for (; cw < s; ++cw) waiting.push_back(calkin_wilf(cw));
    std::vector<Rational> still;
    for (const auto& q : waiting) {
      if (q < cap) xs.add(q);
      else still.push_back(q);
    }
    waiting = std::move(still);
    for (std::uint64_t i = 1; i <= z + n; ++i) xs.add(Rational(static_cast<unsigned long>(i)));
    out.trace.size.push_back(xs.size());
  }
  out.points = xs.take();
  out.order = value_order(out.points, "pi02@" + std::to_string(stage));
  return out;
}

// ---------------------------------------------------------------- l^p gadget

namespace {

std::uint64_t idx(std::uint64_t x, std::uint64_t y) {
  return pair(Nat(static_cast<unsigned long>(x)), Nat(static_cast<unsigned long>(y))).get_ui();
}

// Norm of sum_{x >= K} 2^-x (e_{3x} + 2 e_{3x+1} + e_{3x+2}) is below 2^(3-K).
Rational root_tail(std::uint64_t K) { return pow2(3 - static_cast<long>(K)); }

RationalVector root_center(std::uint64_t K) {
  RationalVector v;
  for (std::uint64_t x = 0; x < K; ++x) {
    v.set(idx(x, 0), pow2(-static_cast<long>(x)));
    v.set(idx(x, 1), pow2(-static_cast<long>(x)));
  }
  return v;
}

RationalVector block_vector(std::uint64_t x) {
  return RationalVector::unit(idx(x, 0), pow2(-static_cast<long>(x))) +
         RationalVector::unit(idx(x, 1), pow2(-static_cast<long>(x)));
}

RationalVector piece(std::uint64_t x, std::uint64_t i, std::uint64_t y) {
  Rational w = pow2(-static_cast<long>(x));
  std::uint64_t m = idx(x, y + 2);
  switch (i) {
    case 0: return RationalVector::unit(idx(x, 0), w) - RationalVector::unit(m, w);
    case 1: return RationalVector::unit(m, 2 * w);
    default: return RationalVector::unit(idx(x, 1), w) - RationalVector::unit(m, w);
  }
}

class GadgetTreeName final : public NameStream {
 public:
  explicit GadgetTreeName(std::shared_ptr<const GadgetSpace> space) : space_(std::move(space)) {}

  std::optional<Pair> at(const Nat& i) const override {
    auto [tt, j] = unpair(i);
    bool even = mpz_even_p(j.get_mpz_t());
    Nat kk = even ? Nat(j / 2) : unpair((j - 1) / 2).second;
    long k = kk > 1024 ? 1024L : static_cast<long>(kk.get_si());
    auto entry = node_at(tt, k);
    auto canonical = [&]() {
      return Pair{encode_node(entry.first), encode_ball({entry.second.vec, entry.second.error + pow2(-k)})};
    };
    if (even) return canonical();
    Ball ball = decode_ball(unpair((j - 1) / 2).first);
    if (space_->norm(ball.center - entry.second.vec, k).hi + entry.second.error < ball.radius)
      return Pair{encode_node(entry.first), encode_ball(ball)};
    return canonical();
  }
  PresentationPtr source() const override { return space_; }

 private:
  // Node t at level k, falling back to the root when it is not present yet.
  std::pair<Node, TreeEntry> node_at(const Nat& t, long k) const {
    auto root = [&]() {
      std::uint64_t K = static_cast<std::uint64_t>(k) + 3;
      return std::pair<Node, TreeEntry>{Node{}, TreeEntry{root_center(K), false, false, root_tail(K)}};
    };
    if (t == 0 || !Nat(t - 1).fits_ulong_p()) return root();
    std::uint64_t u = Nat(t - 1).get_ui();
    std::uint64_t x = u / 4, i = u % 4;
    if (x > (std::uint64_t{1} << 20)) return root();
    if (i == 0) return {Node{x}, TreeEntry{block_vector(x), false, false, 0}};
    auto y = space_->separation(x, static_cast<std::uint64_t>(k));
    if (!y) return root();
    return {Node{x, i - 1}, TreeEntry{piece(x, i - 1, *y), true, false, 0}};
  }

  std::shared_ptr<const GadgetSpace> space_;
};

}  // namespace

GadgetSpace::GadgetSpace(Predicate2 Q, const Exponent& p) : StepPresentation(p), Q_(std::move(Q)) {}

StepFunction GadgetSpace::point(std::uint64_t j) const {
  auto [xx, yy] = unpair(Nat(static_cast<unsigned long>(j)));
  std::uint64_t x = xx.get_ui(), y = yy.get_ui();
  StepFunction f = StepFunction::atom(3 * x + 1);
  if (y == 0) {
    f.add(StepFunction::atom(3 * x));
    return f;
  }
  if (y >= 2 && separation(x, y - 2)) return f;
  f.add(StepFunction::atom(3 * x + 2));
  return f;
}

std::string GadgetSpace::describe() const { return "gadget(l^" + exponent().label() + ")"; }

std::optional<std::uint64_t> GadgetSpace::separation(std::uint64_t x, std::uint64_t limit) const {
  // R(<x, y+2>) = e_{3x+1} iff Q(x, y') for some y' < y.
  for (std::uint64_t y = 0; y + 1 <= limit; ++y)
    if (Q_(x, y)) return y + 1;
  return std::nullopt;
}

VectorTree GadgetSpace::snapshot(std::uint64_t depth) const {
  VectorTree t;
  t.nodes[{}] = TreeEntry{root_center(depth), false, false, root_tail(depth)};
  for (std::uint64_t x = 0; x < depth; ++x) {
    t.nodes[{x}] = TreeEntry{block_vector(x), false, false, 0};
    if (auto y = separation(x, depth > 0 ? depth - 1 : 0))
      for (std::uint64_t i = 0; i < 3; ++i) t.nodes[{x, i}] = TreeEntry{piece(x, i, *y), true, false, 0};
  }
  return t;
}

std::optional<VectorTree> GadgetSpace::disintegration(std::uint64_t depth) const { return snapshot(depth); }

NamePtr GadgetSpace::tree_name() const {
  return std::make_shared<GadgetTreeName>(shared_from_this());
}

std::shared_ptr<const GadgetSpace> gadget_lp_space(Predicate2 Q, const Exponent& p) {
  if (p.is_two()) throw Error(ErrorCode::ExponentTwo, "the construction needs p != 2");
  if (!Q) throw Error(ErrorCode::InvalidInput, "null predicate");
  return std::make_shared<GadgetSpace>(std::move(Q), p);
}

}  // namespace lpw
