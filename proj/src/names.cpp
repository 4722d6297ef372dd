// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/names.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace lpw {

namespace {

// Precision indices read from arbitrary positions are clamped; the pair at
// a clamped position is still a true diagram fact.
constexpr long kMaxPrecision = 1024;

long clamp_precision(const Nat& k) {
  if (k > kMaxPrecision) return kMaxPrecision;
  return static_cast<long>(k.get_si());
}

class GeneratedName final : public NameStream {
 public:
  explicit GeneratedName(PresentationPtr pres) : pres_(std::move(pres)) {}

  std::optional<Pair> at(const Nat& i) const override {
    auto [m, j] = unpair(i);
    if (mpz_even_p(j.get_mpz_t())) return Pair{m, canonical(m, clamp_precision(j / 2))};
    auto [n, kk] = unpair((j - 1) / 2);
    long k = clamp_precision(kk);
    std::optional<OpenInterval> I;
    try {
      I = decode_interval(n);
    } catch (const Error&) {
    }
    if (I && certify_membership(norm(m, k), *I) == Membership::Inside) return Pair{m, n};
    return Pair{m, canonical(m, k)};
  }

  PresentationPtr source() const override { return pres_; }

 private:
  Enclosure norm(const Nat& m, long k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(m, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (cache_.size() > 200000) cache_.clear();
    Enclosure e = pres_->norm(decode_vector(m), k);
    cache_.emplace(key, e);
    return e;
  }

  Nat canonical(const Nat& m, long k) const { return encode_interval(dyadic_cover(norm(m, k + 2), k)); }

  PresentationPtr pres_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Nat, long>, Enclosure> cache_;
};

class FiniteName final : public NameStream {
 public:
  explicit FiniteName(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {}
  std::optional<Pair> at(const Nat& i) const override {
    if (i >= pairs_.size()) return std::nullopt;
    return pairs_[i.get_ui()];
  }
  std::optional<std::uint64_t> length() const override { return pairs_.size(); }

 private:
  std::vector<Pair> pairs_;
};

class ExponentName final : public NameStream {
 public:
  explicit ExponentName(Exponent p) : p_(std::move(p)) {}
  std::optional<Pair> at(const Nat& i) const override {
    long k = clamp_precision(i);
    return Pair{i, encode_interval(dyadic_cover(p_.at(k + 2), k))};
  }

 private:
  Exponent p_;
};

}  // namespace

NamePtr diagram_enumerate(PresentationPtr pres) {
  if (!pres) throw Error(ErrorCode::InvalidInput, "null presentation");
  return std::make_shared<GeneratedName>(std::move(pres));
}

Nat keyed_position(const Nat& m, long k) { return pair(m, Nat(2 * k)); }

NamePtr finite_name(std::vector<Pair> pairs) { return std::make_shared<FiniteName>(std::move(pairs)); }

NamePtr empty_name() { return finite_name({}); }

NamePtr exponent_name(const Exponent& p) { return std::make_shared<ExponentName>(p); }

std::optional<OpenInterval> read_exponent(const NameStream& h, std::uint64_t count) {
  std::optional<OpenInterval> acc;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto pr = h.at(i);
    if (!pr) break;
    OpenInterval I;
    try {
      I = decode_interval(pr->second);
    } catch (const Error&) {
      continue;
    }
    if (!acc) {
      acc = I;
    } else {
      acc->lo = std::max(acc->lo, I.lo);
      acc->hi = std::min(acc->hi, I.hi);
    }
    if (acc->lo >= acc->hi) throw Error(ErrorCode::Inconsistent, "exponent name has disjoint intervals");
  }
  return acc;
}

NamePtr name_of_index(std::uint64_t e) {
  switch (e) {
    case 0: return diagram_enumerate(standard_presentation(SpaceKind::Lp, std::nullopt, 1));
    case 1: return diagram_enumerate(standard_presentation(SpaceKind::Lp, std::nullopt, 2));
    case 2: return diagram_enumerate(standard_presentation(SpaceKind::Lp, std::nullopt, 3));
    case 3: return diagram_enumerate(standard_presentation(SpaceKind::Lp01, std::nullopt, 1));
    case 4: return diagram_enumerate(standard_presentation(SpaceKind::Lp01, std::nullopt, 2));
    case 5: return diagram_enumerate(standard_presentation(SpaceKind::Lp01, std::nullopt, 3));
    case 6: return diagram_enumerate(standard_presentation(SpaceKind::LpN, 2, 2));
    case 7: return diagram_enumerate(standard_presentation(SpaceKind::LpN, 2, 3));
    default: return empty_name();
  }
}

std::vector<Pair> parse_pairs(std::istream& in) {
  std::vector<Pair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra))
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(lineno) + ": expected two integers");
    out.emplace_back(parse_nat(a), parse_nat(b));
  }
  return out;
}

void write_pairs(std::ostream& out, const NameStream& f, std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) {
    auto pr = f.at(i);
    if (!pr) break;
    out << pr->first.get_str() << ' ' << pr->second.get_str() << '\n';
  }
}

// ---------------------------------------------------------------- reader

NameReader::NameReader(NamePtr f, std::uint64_t budget) : f_(std::move(f)), budget_(budget) {
  if (!f_) throw Error(ErrorCode::InvalidInput, "null name");
}

void NameReader::record(const Pair& pr) {
  pairs_.push_back(pr);
  OpenInterval I;
  try {
    I = decode_interval(pr.second);
  } catch (const Error&) {
    return;
  }
  Bounds& b = index_[pr.first];
  if (!b.upper || I.hi < *b.upper) b.upper = I.hi;
  if (!b.lower || I.lo > *b.lower) b.lower = I.lo;
}

void NameReader::read_prefix(std::uint64_t target) {
  while (prefix_ < target && used_ < budget_ && !ended_) {
    auto pr = f_->at(prefix_);
    ++used_;
    if (!pr) {
      ended_ = true;
      break;
    }
    record(*pr);
    ++prefix_;
  }
}

bool NameReader::probe(const Nat& m, long k) {
  auto key = std::make_pair(m, k);
  if (probed_.count(key)) return true;
  if (used_ >= budget_) return false;
  ++used_;
  probed_[key] = true;
  Nat pos = keyed_position(m, k);
  if (pos < prefix_) return true;  // already read
  if (auto pr = f_->at(pos)) record(*pr);
  return true;
}

Bounds NameReader::bounds(const Nat& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? Bounds{} : it->second;
}

bool NameReader::lt(const Nat& m, const Rational& r) const {
  auto b = bounds(m);
  return b.upper && *b.upper <= r;
}

bool NameReader::gt(const Nat& m, const Rational& r) const {
  auto b = bounds(m);
  return b.lower && *b.lower >= r;
}

bool NameReader::seek_lt(const Nat& m, const Rational& r, long max_k) {
  for (long k = 0; k <= max_k; ++k) {
    if (lt(m, r)) return true;
    auto b = bounds(m);
    if (b.lower && *b.lower >= r) return false;
    if (!probe(m, k)) break;
  }
  return lt(m, r);
}

bool NameReader::seek_gt(const Nat& m, const Rational& r, long max_k) {
  for (long k = 0; k <= max_k; ++k) {
    if (gt(m, r)) return true;
    auto b = bounds(m);
    if (b.upper && *b.upper <= r) return false;
    if (!probe(m, k)) break;
  }
  return gt(m, r);
}

std::optional<Enclosure> NameReader::seek(const Nat& m, long k) {
  Rational tol = pow2(-k);
  for (long j = 0; j <= k + 4; ++j) {
    auto b = bounds(m);
    if (b.lower && b.upper && *b.upper - *b.lower <= tol) return Enclosure{*b.lower, *b.upper};
    if (!probe(m, j)) break;
  }
  auto b = bounds(m);
  if (b.lower && b.upper && *b.upper - *b.lower <= tol) return Enclosure{*b.lower, *b.upper};
  return std::nullopt;
}

SeminormResult seminorm_from_name(const NamePtr& f, const Nat& g, long k, std::uint64_t stage) {
  NameReader reader(f, stage);
  reader.read_prefix(stage);
  Bounds b = reader.bounds(g);
  if (b.lower && b.upper && *b.lower >= *b.upper)
    throw Error(ErrorCode::Inconsistent, "name forces eta^- >= eta^+ for vector code " + g.get_str());
  SeminormResult r{b.lower, b.upper, false};
  r.complete = b.lower && b.upper && *b.upper - *b.lower <= pow2(-k);
  return r;
}

}  // namespace lpw
