// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/monitors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>

#include "lpw/convexity.hpp"
#include "lpw/disintegration.hpp"
#include "lpw/orders.hpp"

namespace lpw {

// ---------------------------------------------------------------- terms

Term Term::point(std::uint64_t j, const Rational& c) {
  Term t;
  t.pres_part = RationalVector::unit(j, c);
  return t;
}

Term Term::node(const Node& nu, const Rational& c) {
  Term t;
  if (c != 0) t.tree_part[nu] = c;
  return t;
}

Term& Term::operator+=(const Term& o) {
  pres_part += o.pres_part;
  for (const auto& [nu, c] : o.tree_part) {
    Rational v = tree_part[nu] + c;
    if (v == 0) tree_part.erase(nu);
    else tree_part[nu] = v;
  }
  return *this;
}

Term& Term::operator*=(const Rational& s) {
  pres_part *= s;
  if (s == 0) tree_part.clear();
  for (auto& [nu, c] : tree_part) c *= s;
  return *this;
}

Term operator+(Term a, const Term& b) { return a += b; }
Term operator-(Term a, const Term& b) { return a += Rational(-1) * b; }
Term operator*(const Rational& s, Term a) { return a *= s; }

const char* to_string(Status s) { return s == Status::Holds ? "Holds" : "NotYet"; }

namespace {

std::string node_str(const Node& nu) { return to_string(nu); }

// Balls per node read off a tree name.
class TreeView {
 public:
  explicit TreeView(NamePtr g) : g_(std::move(g)) {}

  // Reads one more element; false when the stream has ended.
  bool tick() {
    if (ended_ || !g_) {
      ended_ = true;
      return false;
    }
    auto pr = g_->at(Nat(static_cast<unsigned long>(read_)));
    if (!pr) {
      ended_ = true;
      return false;
    }
    ++read_;
    Node nu = decode_node(pr->first);
    Ball b = decode_ball(pr->second);
    auto& e = nodes_[nu];
    bool fresh = e.balls.empty();
    if (e.codes.insert(pr->second).second) {
      e.balls.push_back(b);
      if (fresh || b.radius < e.balls[e.finest].radius) e.finest = e.balls.size() - 1;
    }
    last_node_ = nu;
    last_fresh_ = fresh;
    return true;
  }
  void read_to(std::uint64_t n) {
    while (read_ < n && tick()) {
    }
  }

  struct Entry {
    std::vector<Ball> balls;
    std::set<Nat> codes;
    std::size_t finest = 0;
  };

  bool ended() const { return ended_; }
  std::uint64_t read() const { return read_; }
  const std::map<Node, Entry>& nodes() const { return nodes_; }
  bool has(const Node& nu) const { return nodes_.count(nu) > 0; }
  const Ball& finest(const Node& nu) const {
    const Entry& e = nodes_.at(nu);
    return e.balls[e.finest];
  }
  const Node& last_node() const { return last_node_; }
  bool last_fresh() const { return last_fresh_; }
  std::vector<Node> children(const Node& nu) const {
    std::vector<Node> out;
    Node lo = nu;
    lo.push_back(0);
    for (auto it = nodes_.lower_bound(lo); it != nodes_.end() && is_prefix(nu, it->first); ++it)
      if (it->first.size() == nu.size() + 1) out.push_back(it->first);
    return out;
  }

 private:
  NamePtr g_;
  bool ended_ = false;
  std::uint64_t read_ = 0;
  std::map<Node, Entry> nodes_;
  Node last_node_;
  bool last_fresh_ = false;
};

struct Grounded {
  RationalVector c;
  Rational rho = 0;
};

// Tree constants replaced by the finest ball of their node.
std::optional<Grounded> ground(const Term& t, const TreeView& g) {
  Grounded out{t.pres_part, 0};
  for (const auto& [nu, beta] : t.tree_part) {
    if (!g.has(nu)) return std::nullopt;
    const Ball& b = g.finest(nu);
    out.c += beta * b.center;
    out.rho += abs(beta) * b.radius;
  }
  return out;
}

// Bounds on norms from f: finite streams are read one element per stage,
// infinite ones answer keyed probes.
class NormView {
 public:
  explicit NormView(NamePtr f) : rd_(f), finite_(f && f->length().has_value()) {}
  void tick() {
    if (finite_) rd_.read_prefix(rd_.prefix() + 1);
  }
  Bounds bounds(const RationalVector& v, long k) {
    Nat m = encode_vector(v);
    if (!finite_) rd_.probe(m, k);
    return rd_.bounds(m);
  }
  NameReader& reader() { return rd_; }

 private:
  NameReader rd_;
  bool finite_;
};

// Intersection of the intervals read from a name of p.
class ExponentView {
 public:
  explicit ExponentView(NamePtr h) : h_(std::move(h)) {}
  void tick() {
    if (!h_ || ended_) return;
    auto pr = h_->at(Nat(static_cast<unsigned long>(read_)));
    if (!pr) {
      ended_ = true;
      return;
    }
    ++read_;
    OpenInterval I = decode_interval(pr->second);
    if (!lo_ || I.lo > *lo_) lo_ = I.lo;
    if (!hi_ || I.hi < *hi_) hi_ = I.hi;
  }
  // Usable enclosure of p: known, positive, and consistent.
  std::optional<Enclosure> p() const {
    if (!lo_ || !hi_ || *lo_ >= *hi_ || *hi_ <= 0) return std::nullopt;
    return Enclosure{*lo_ > 0 ? *lo_ : Rational(*hi_ / 2), *hi_};
  }
  bool excludes(const Rational& q) const { return (lo_ && *lo_ >= q) || (hi_ && *hi_ <= q); }

 private:
  NamePtr h_;
  bool ended_ = false;
  std::uint64_t read_ = 0;
  std::optional<Rational> lo_, hi_;
};

Enclosure rpow(const Rational& r, const Enclosure& p) {
  if (r <= 0) return Enclosure::point(0);
  return pow_at(Enclosure::point(r), p, 64);
}

// Largest k <= 60 with x < 2^-k, or -1 when x >= 1.
long floor_log2_inv(const Rational& x) {
  if (x >= 1) return -1;
  long k = 0;
  while (k < 60 && x < pow2(-(k + 1))) ++k;
  return k;
}

std::string str(const Rational& q) { return to_string(q); }

enum class TaskResult { Done, Retry, Violation };

struct Task {
  std::function<TaskResult(long k)> run;
  int attempts = 0;
};

// Categories are served round-robin; one task per stage.
enum Category { kBalls, kInjective, kSeparation, kComponent, kSummativity, kDensity, kCategories };
constexpr std::array<const char*, kCategories> kCategoryName{"balls",     "injective",   "separation",
                                                              "component", "summativity", "density"};
// Precision of the n-th attempt at a task.
long precision(int attempts) { return std::min(8L + 4L * attempts, 60L); }
// Checks count as complete once balls and p are resolved this finely.
constexpr long kCheckedAt = 20;

class TreeMonitor {
 public:
  TreeMonitor(const NamePtr& f, NamePtr g, NamePtr h, bool disint)
      : f_(f), g_(std::move(g)), h_(std::move(h)), disint_(disint) {
    if (f) {
      if (auto src = f->source()) points_ = src->point_count();
    }
  }

  MonitorVerdict run(std::uint64_t stage) {
    for (std::uint64_t s = 0; s < stage && !v_.violation; ++s) {
      v_.stage = s + 1;
      f_.tick();
      h_.tick();
      if (g_.tick()) on_element();
      if (g_.ended() && !tree_checked_) check_tree();
      if (v_.violation) break;
      serve();
    }
    if (!v_.violation) v_.stage = stage;
    fill_progress();
    return v_;
  }

 private:
  void violate(const std::string& clause, std::vector<std::pair<std::string, std::string>> w) {
    if (v_.violation) return;
    v_.violation = true;
    v_.clause = clause;
    v_.witness = std::move(w);
  }

  void push(Category c, std::function<TaskResult(long)> fn) { queues_[c].push_back(Task{std::move(fn), 0}); }

  void serve() {
    for (int tries = 0; tries < kCategories; ++tries) {
      Category c = static_cast<Category>(next_ % kCategories);
      ++next_;
      auto& q = queues_[c];
      if (q.empty()) continue;
      Task t = std::move(q.front());
      q.pop_front();
      TaskResult r = t.run(precision(t.attempts));
      ++served_[c];
      if (r == TaskResult::Retry) {
        ++t.attempts;
        q.push_back(std::move(t));
      }
      return;
    }
  }

  void on_element() {
    const Node nu = g_.last_node();
    const auto& entry = g_.nodes().at(nu);
    if (g_.last_fresh()) {
      for (const auto& [mu, e] : g_.nodes())
        if (mu != nu) add_pair_tasks(mu, nu);
      if (!nu.empty()) {
        Node parent(nu.begin(), nu.end() - 1);
        if (disint_ && g_.has(parent)) add_parent_tasks(parent);
      }
      if (disint_) {
        if (!g_.children(nu).empty()) add_parent_tasks(nu);
        if (!density_started_) {
          density_started_ = true;
          push(kDensity, [this](long k) { return density(k); });
        }
      }
    }
    // A new ball is compared with the first one of its node, for the first
    // few balls and then at powers of two.
    std::size_t n = entry.balls.size();
    if (n >= 2 && (n <= 4 || (n & (n - 1)) == 0)) {
      Ball a = entry.balls.front(), b = entry.balls.back();
      push(kBalls, [this, nu, a, b](long k) {
        Bounds d = f_.bounds(a.center - b.center, k);
        if (d.lower && *d.lower >= a.radius + b.radius) {
          violate("balls", {{"node", node_str(nu)},
                            {"center_a", to_string(a.center)},
                            {"radius_a", str(a.radius)},
                            {"center_b", to_string(b.center)},
                            {"radius_b", str(b.radius)},
                            {"distance_lower", str(*d.lower)}});
          return TaskResult::Violation;
        }
        if (d.upper && *d.upper <= a.radius + b.radius) return TaskResult::Done;
        return TaskResult::Retry;
      });
    }
  }

  void add_pair_tasks(const Node& a, const Node& b) {
    ++pairs_total_;
    push(kInjective, [this, a, b](long k) { return injective(a, b, k); });
    if (!disint_ || is_prefix(a, b) || is_prefix(b, a)) return;
    for (const auto& [x, y] : {std::pair<int, int>{1, 1}, {1, -1}, {1, 2}}) {
      std::vector<Term> terms{Term::node(a, x), Term::node(b, y)};
      push(kSeparation, [this, terms](long k) { return additivity(terms, k, "separation", separation_checked_); });
    }
  }

  void add_parent_tasks(const Node& parent) {
    auto kids = g_.children(parent);
    if (kids.empty()) return;
    Term sum;
    for (const auto& c : kids) sum += Term::node(c);
    for (const auto& [a, b] : {std::pair<int, int>{1, 1}, {1, -1}}) {
      std::vector<Term> terms{Rational(a) * (Term::node(parent) - sum), Rational(b) * sum};
      push(kComponent, [this, terms](long k) { return additivity(terms, k, "component", component_checked_); });
    }
    Term diff = Term::node(parent) - sum;
    push(kSummativity, [this, parent, diff](long k) {
      auto gr = ground(diff, g_);
      if (!gr) return TaskResult::Retry;
      Bounds b = f_.bounds(gr->c, k);
      if (!b.upper) return TaskResult::Retry;
      long got = floor_log2_inv(*b.upper + gr->rho);
      auto& best = summativity_[parent];
      if (got > best) best = got;
      return TaskResult::Retry;
    });
  }

  TaskResult injective(const Node& a, const Node& b, long k) {
    if (!g_.has(a) || !g_.has(b)) return TaskResult::Retry;
    const auto& ea = g_.nodes().at(a);
    const auto& eb = g_.nodes().at(b);
    auto pick = [](const TreeView::Entry& e) {
      std::vector<Ball> out;
      for (std::size_t i = 0; i < e.balls.size() && i < 4; ++i) out.push_back(e.balls[i]);
      if (e.finest >= 4) out.push_back(e.balls[e.finest]);
      return out;
    };
    bool all_close = true;
    for (const auto& x : pick(ea))
      for (const auto& y : pick(eb)) {
        Bounds d = f_.bounds(x.center - y.center, k);
        if (d.lower && *d.lower > x.radius + y.radius) {
          ++separated_pairs_;
          return TaskResult::Done;
        }
        if (!(d.upper && *d.upper < x.radius + y.radius)) all_close = false;
      }
    // Only a finished finite tree can be caught without a separating pair.
    if (g_.ended() && all_close && ea.balls.size() <= 4 && eb.balls.size() <= 4) {
      violate("injective", {{"node_a", node_str(a)},
                            {"node_b", node_str(b)},
                            {"center_a", to_string(g_.finest(a).center)},
                            {"center_b", to_string(g_.finest(b).center)}});
      return TaskResult::Violation;
    }
    return TaskResult::Retry;
  }

  // The two forbidden patterns for ||sum tau_j||^p = sum ||tau_j||^p.
  TaskResult additivity(const std::vector<Term>& terms, long k, const char* clause, std::uint64_t& checked) {
    auto p = h_.p();
    if (!p) return TaskResult::Retry;
    Term total;
    std::vector<Grounded> parts;
    for (const auto& t : terms) {
      auto gr = ground(t, g_);
      if (!gr) return TaskResult::Retry;
      parts.push_back(*gr);
      total += t;
    }
    auto whole = ground(total, g_);
    Bounds bw = f_.bounds(whole->c, k);
    std::vector<Bounds> bj;
    for (const auto& gr : parts) bj.push_back(f_.bounds(gr.c, k));

    auto report = [&](int pattern, const Rational& rn, const std::vector<Rational>& rs) {
      std::vector<std::pair<std::string, std::string>> w{{"pattern", std::to_string(pattern)},
                                                         {"p_lo", str(p->lo)},
                                                         {"p_hi", str(p->hi)}};
      for (std::size_t j = 0; j < rs.size(); ++j) w.emplace_back("r" + std::to_string(j), str(rs[j]));
      w.emplace_back("r" + std::to_string(rs.size()), str(rn));
      for (std::size_t j = 0; j < terms.size(); ++j) {
        std::string desc = to_string(terms[j].pres_part);
        for (const auto& [nu, c] : terms[j].tree_part) desc += " + " + str(c) + "*phi" + node_str(nu);
        w.emplace_back("tau" + std::to_string(j), desc);
      }
      violate(clause, std::move(w));
    };

    bool complete = bw.upper && bw.lower;
    // Pattern 1: the sum is certified too small.
    if (bw.upper) {
      Rational rn = *bw.upper + whole->rho;
      std::vector<Rational> rs;
      Enclosure sum = Enclosure::point(0);
      bool ok = true;
      for (std::size_t j = 0; j < parts.size() && ok; ++j) {
        if (!bj[j].lower) {
          ok = false;
          break;
        }
        Rational r = *bj[j].lower - parts[j].rho;
        if (r < 0) r = 0;
        rs.push_back(r);
        sum = sum + rpow(r, *p);
      }
      if (ok && rpow(rn, *p).hi < sum.lo) {
        report(1, rn, rs);
        return TaskResult::Violation;
      }
    }
    // Pattern 2: the sum is certified too large.
    if (bw.lower && *bw.lower > whole->rho) {
      Rational rn = *bw.lower - whole->rho;
      std::vector<Rational> rs;
      Enclosure sum = Enclosure::point(0);
      bool ok = true;
      for (std::size_t j = 0; j < parts.size() && ok; ++j) {
        if (!bj[j].upper) {
          ok = false;
          break;
        }
        Rational r = *bj[j].upper + parts[j].rho;
        rs.push_back(r);
        sum = sum + rpow(r, *p);
      }
      if (ok && rpow(rn, *p).lo > sum.hi) {
        report(2, rn, rs);
        return TaskResult::Violation;
      }
    }
    for (const auto& b : bj) complete = complete && b.upper && b.lower;
    Rational rho = whole->rho;
    for (const auto& gr : parts) rho += gr.rho;
    if (complete && k >= kCheckedAt && rho <= pow2(-kCheckedAt) && p->width() <= pow2(-kCheckedAt)) {
      ++checked;
      return TaskResult::Done;
    }
    return TaskResult::Retry;
  }

  // Writes v_j over explored nodes whose centers share coordinates with it.
  TaskResult density(long k) {
    if (points_ && density_next_ >= *points_) return TaskResult::Done;
    RationalVector target = RationalVector::unit(density_next_);
    std::set<std::uint64_t> coords{density_next_};
    std::vector<Node> picked;
    std::set<Node> in;
    for (int round = 0; round < 3; ++round) {
      bool grew = false;
      for (const auto& [nu, e] : g_.nodes()) {
        if (in.count(nu)) continue;
        const Ball& b = e.balls[e.finest];
        if (b.center.entries().size() > 16) continue;
        bool touch = false;
        for (const auto& [j, c] : b.center.entries()) touch = touch || coords.count(j);
        if (!touch) continue;
        in.insert(nu);
        picked.push_back(nu);
        for (const auto& [j, c] : b.center.entries()) coords.insert(j);
        grew = true;
      }
      if (!grew) break;
    }
    std::vector<RationalVector> basis;
    for (const auto& nu : picked) basis.push_back(g_.finest(nu).center);
    auto coeffs = solve_in_span(basis, target);
    // Waits for more of the tree; the density queue has a single task.
    auto again = [&]() {
      push(kDensity, [this](long kk) { return density(kk); });
      return TaskResult::Done;
    };
    auto certified = [&](const RationalVector& combo, const Rational& rho) {
      Bounds b = f_.bounds(target - combo, k);
      return b.upper && floor_log2_inv(*b.upper + rho) >= 4;
    };
    if (coeffs) {
      RationalVector combo;
      Rational rho = 0;
      for (std::size_t i = 0; i < picked.size(); ++i) {
        combo += (*coeffs)[i] * basis[i];
        rho += abs((*coeffs)[i]) * g_.finest(picked[i]).radius;
      }
      if (certified(combo, rho)) {
        approx_.push_back({combo, rho});
        ++density_next_;
      }
      return again();
    }
    // A point can repeat an earlier one under another index; the earlier
    // approximation then serves, measured against this point.
    std::size_t from = approx_.size() > kReuseWindow ? approx_.size() - kReuseWindow : 0;
    for (std::size_t i = approx_.size(); i-- > from;) {
      if (certified(approx_[i].first, approx_[i].second)) {
        approx_.push_back(approx_[i]);
        ++density_next_;
        break;
      }
    }
    return again();
  }

  void check_tree() {
    tree_checked_ = true;
    for (const auto& [nu, e] : g_.nodes()) {
      if (nu.empty()) continue;
      Node parent(nu.begin(), nu.end() - 1);
      if (!g_.has(parent)) {
        violate("tree", {{"node", node_str(nu)}, {"missing_parent", node_str(parent)}});
        return;
      }
    }
  }

  void fill_progress() {
    auto& pr = v_.progress;
    pr["g_read"] = g_.read();
    pr["g_nodes"] = g_.nodes().size();
    pr["g_ended"] = g_.ended() ? 1 : 0;
    std::uint64_t orphans = 0, split = 0;
    long finest = 60;
    for (const auto& [nu, e] : g_.nodes()) {
      if (!nu.empty() && !g_.has(Node(nu.begin(), nu.end() - 1))) ++orphans;
      if (!g_.children(nu).empty()) ++split;
      long r = floor_log2_inv(e.balls[e.finest].radius);
      finest = std::min(finest, r < 0 ? 0L : r);
    }
    pr["orphans"] = orphans;
    pr["split_nodes"] = split;
    pr["min_radius_log2"] = g_.nodes().empty() ? 0 : static_cast<std::uint64_t>(finest);
    pr["separated_pairs"] = separated_pairs_;
    pr["pending_pairs"] = pairs_total_ - separated_pairs_;
    pr["f_reads"] = f_.reader().used();
    if (disint_) {
      pr["separation_checked"] = separation_checked_;
      pr["component_checked"] = component_checked_;
      long worst = 60;
      for (const auto& [nu, k] : summativity_) worst = std::min(worst, k);
      pr["summativity_k"] = summativity_.empty() ? 0 : static_cast<std::uint64_t>(std::max(worst, 0L));
      pr["density_prefix"] = density_next_;
    }
    for (int c = 0; c < kCategories; ++c)
      if (served_[c]) v_.notes[std::string("served_") + kCategoryName[c]] = std::to_string(served_[c]);
  }

  NormView f_;
  TreeView g_;
  ExponentView h_;
  bool disint_;
  std::optional<std::uint64_t> points_;
  MonitorVerdict v_;
  std::array<std::deque<Task>, kCategories> queues_;
  std::array<std::uint64_t, kCategories> served_{};
  std::uint64_t next_ = 0;
  bool tree_checked_ = false;
  bool density_started_ = false;
  std::uint64_t density_next_ = 0;
  static constexpr std::size_t kReuseWindow = 64;
  std::vector<std::pair<RationalVector, Rational>> approx_;  // per certified point
  std::uint64_t pairs_total_ = 0, separated_pairs_ = 0;
  std::uint64_t separation_checked_ = 0, component_checked_ = 0;
  std::map<Node, long> summativity_;
};

}  // namespace

// ---------------------------------------------------------------- judge

Status judge(const Subjects& s, const Term& t, const Atom& a, std::uint64_t stage) {
  auto scan = [&](const NamePtr& n, const std::function<bool(const Pair&)>& hit) {
    if (!n) return false;
    for (std::uint64_t i = 0; i < stage; ++i) {
      auto pr = n->at(Nat(static_cast<unsigned long>(i)));
      if (!pr) return false;
      if (hit(*pr)) return true;
    }
    return false;
  };
  switch (a.kind) {
    case AtomKind::InTree: {
      Nat code = encode_node(a.node);
      return scan(s.g, [&](const Pair& p) { return p.first == code; }) ? Status::Holds : Status::NotYet;
    }
    case AtomKind::InChain: {
      Nat code = encode_node(a.node);
      Nat n(static_cast<unsigned long>(a.chain));
      return scan(s.h, [&](const Pair& p) { return p.first == n && p.second == code; }) ? Status::Holds
                                                                                        : Status::NotYet;
    }
    case AtomKind::NormLess:
    case AtomKind::NormGreater:
      break;
  }
  if (!s.f) return Status::NotYet;
  TreeView g(s.g);
  if (!t.is_pres()) g.read_to(stage);
  auto gr = ground(t, g);
  if (!gr) return Status::NotYet;
  Nat m = encode_vector(gr->c);
  NameReader rd(s.f, stage);
  bool less = a.kind == AtomKind::NormLess;
  Rational r = less ? Rational(a.r - gr->rho) : Rational(a.r + gr->rho);
  if (s.f->length()) {
    rd.read_prefix(stage);
    return (less ? rd.lt(m, r) : rd.gt(m, r)) ? Status::Holds : Status::NotYet;
  }
  bool ok = less ? rd.seek_lt(m, r, 64) : rd.seek_gt(m, r, 64);
  return ok ? Status::Holds : Status::NotYet;
}

// ---------------------------------------------------------------- Banach names

MonitorVerdict banach_name_monitor(const NamePtr& f, std::uint64_t stage) {
  MonitorVerdict v;
  if (!f) return v;
  NameReader rd(f);
  std::map<Nat, RationalVector> vecs;
  std::map<RationalVector, Nat> by_vec;
  std::map<RationalVector, std::vector<std::pair<Rational, Nat>>> rays;  // direction -> (scale, code)
  std::map<Nat, Bounds> last;

  auto upper = [&](const Nat& m) { return rd.bounds(m).upper; };
  auto lower = [&](const Nat& m) { return rd.bounds(m).lower; };
  auto fail = [&](const std::string& clause, std::vector<std::pair<std::string, std::string>> w) {
    v.violation = true;
    v.clause = clause;
    v.witness = std::move(w);
  };
  auto desc = [&](const Nat& m) { return to_string(vecs.at(m)); };
  // ||w|| <= ||a|| + ||b|| for w = a + b.
  auto subadd = [&](const Nat& w, const Nat& a, const Nat& b) {
    auto lw = lower(w), ua = upper(a), ub = upper(b);
    if (lw && ua && ub && *lw >= *ua + *ub) {
      fail("subadditivity", {{"sum", desc(w)},
                             {"sum_lower", str(*lw)},
                             {"a", desc(a)},
                             {"a_upper", str(*ua)},
                             {"b", desc(b)},
                             {"b_upper", str(*ub)}});
      return true;
    }
    return false;
  };

  for (std::uint64_t s = 0; s < stage; ++s) {
    v.stage = s + 1;
    std::size_t before = rd.pairs().size();
    rd.read_prefix(s + 1);
    if (rd.pairs().size() == before) continue;
    const Nat m = rd.pairs().back().first;
    Bounds b = rd.bounds(m);
    if (b.lower && b.upper && *b.lower >= *b.upper) {
      fail("eta", {{"code", to_string(m)},
                   {"vector", to_string(decode_vector(m))},
                   {"lower", str(*b.lower)},
                   {"upper", str(*b.upper)}});
      break;
    }
    if (b.upper && *b.upper <= 0) {
      fail("nonnegativity", {{"vector", to_string(decode_vector(m))}, {"upper", str(*b.upper)}});
      break;
    }
    if (!vecs.count(m)) {
      RationalVector vec = decode_vector(m);
      vecs[m] = vec;
      by_vec[vec] = m;
      if (!vec.is_zero()) {
        Rational lead = vec.entries().begin()->second;
        rays[Rational(1 / lead) * vec].emplace_back(lead, m);
      }
    }
    const RationalVector& vec = vecs[m];
    auto& prev = last[m];
    bool changed = prev.lower != b.lower || prev.upper != b.upper;
    prev = b;
    if (!changed) continue;
    if (vec.is_zero()) {
      if (b.lower && *b.lower >= 0) {
        fail("homogeneity", {{"vector", "0"}, {"lower", str(*b.lower)}});
        break;
      }
      continue;
    }
    bool bad = false;
    for (const auto& [u, uv] : vecs) {
      if (u == m) continue;
      if (auto it = by_vec.find(vec - uv); it != by_vec.end() && (bad = subadd(m, u, it->second))) break;
      if (auto it = by_vec.find(vec + uv); it != by_vec.end() && (bad = subadd(it->second, m, u))) break;
    }
    if (bad) break;
    Rational lead = vec.entries().begin()->second;
    for (const auto& [beta, c] : rays[Rational(1 / lead) * vec]) {
      if (c == m) continue;
      Rational lam = abs(Rational(beta / lead));  // ||c|| = lam ||m||
      auto lc = lower(c), uc = upper(c);
      if ((lc && b.upper && *lc >= lam * *b.upper) || (uc && b.lower && *uc <= lam * *b.lower)) {
        fail("homogeneity", {{"vector", to_string(vec)},
                             {"lower", b.lower ? str(*b.lower) : "-"},
                             {"upper", b.upper ? str(*b.upper) : "-"},
                             {"multiple", to_string(vecs.at(c))},
                             {"multiple_lower", lc ? str(*lc) : "-"},
                             {"multiple_upper", uc ? str(*uc) : "-"}});
        bad = true;
        break;
      }
    }
    if (bad) break;
  }
  if (!v.violation) v.stage = stage;
  v.progress["pairs_read"] = rd.pairs().size();
  v.progress["codes_seen"] = vecs.size();
  v.progress["ended"] = rd.ended() ? 1 : 0;
  return v;
}

// ---------------------------------------------------------------- trees

MonitorVerdict vector_tree_monitor(const NamePtr& f, const NamePtr& g, std::uint64_t stage) {
  return TreeMonitor(f, g, nullptr, false).run(stage);
}

MonitorVerdict disint_monitor(const NamePtr& f, const NamePtr& g, const NamePtr& h, std::uint64_t stage) {
  return TreeMonitor(f, g, h, true).run(stage);
}

MonitorVerdict hilbert_monitor(const NamePtr& f, std::uint64_t stage) {
  MonitorVerdict v;
  HilbertCheck c = hilbert_check(f, stage);
  v.stage = c.violation ? c.stage : stage;
  v.progress["pairs_checked"] = c.pairs_checked;
  v.progress["reads"] = c.stage;
  if (c.violation && c.witness) {
    const auto& w = *c.witness;
    v.violation = true;
    v.clause = "parallelogram";
    v.witness = {{"tau0", to_string(w.tau0)}, {"tau1", to_string(w.tau1)}, {"sum_bound", str(w.r0)},
                 {"diff_bound", str(w.r1)},   {"tau0_bound", str(w.r2)},   {"tau1_bound", str(w.r3)},
                 {"side", w.clause == 1 ? "above" : "below"}};
  }
  return v;
}

NamePtr desk_tree_name(const NamePtr& f, std::uint64_t depth) {
  if (!f) return nullptr;
  auto src = f->source();
  if (!src) return nullptr;
  if (auto gadget = std::dynamic_pointer_cast<const GadgetSpace>(src)) return gadget->tree_name();
  auto tree = src->disintegration(depth);
  if (!tree || tree->empty()) return nullptr;
  return tree_name(*tree, src);
}

MonitorVerdict lspace_monitor(const NamePtr& f, const NamePtr& g, std::uint64_t stage, const NamePtr& tree) {
  MonitorVerdict banach = banach_name_monitor(f, stage);
  if (banach.violation) {
    banach.notes["branch"] = "banach";
    return banach;
  }
  MonitorVerdict out;
  out.stage = stage;
  for (const auto& [k, x] : banach.progress) out.progress["banach_" + k] = x;

  // Hilbert branch.
  MonitorVerdict hil = hilbert_monitor(f, stage);
  ExponentView pv(g);
  for (std::uint64_t i = 0; i < stage && i < 64; ++i) pv.tick();
  bool not_two = pv.excludes(2);
  bool hilbert_fails = hil.violation || not_two;
  out.notes["hilbert_branch"] = hil.violation ? "violation(parallelogram)" : not_two ? "violation(exponent)" : "ok";
  for (const auto& [k, x] : hil.progress) out.progress["hilbert_" + k] = x;

  // Disint branch.
  NamePtr t = desk_tree_name(f, 6);
  if (!t) t = tree;
  std::optional<MonitorVerdict> dis;
  if (t) {
    dis = disint_monitor(f, t, g, stage);
    out.notes["disint_branch"] = dis->violation ? "violation(" + dis->clause + ")" : "ok";
    for (const auto& [k, x] : dis->progress) out.progress["disint_" + k] = x;
  } else {
    out.notes["disint_branch"] = "inapplicable";
  }

  if (hilbert_fails && dis && dis->violation) {
    out.violation = true;
    out.clause = "lspace";
    out.witness = dis->witness;
    if (hil.violation)
      for (const auto& [k, x] : hil.witness) out.witness.emplace_back("hilbert_" + k, x);
    out.witness.emplace_back("disint_clause", dis->clause);
  }
  return out;
}

}  // namespace lpw
