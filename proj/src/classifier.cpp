// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/classifier.hpp"

#include <algorithm>

#include "lpw/convexity.hpp"
#include "lpw/disintegration.hpp"

namespace lpw {

const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::LpN: return "LpN";
    case ClassKind::Lp: return "Lp";
    case ClassKind::Lp01: return "Lp01";
    case ClassKind::LpN_plus_Lp01: return "LpN_plus_Lp01";
    case ClassKind::Lp_plus_Lp01: return "Lp_plus_Lp01";
    case ClassKind::UndeterminedAtBudget: return "UndeterminedAtBudget";
  }
  return "?";
}

std::string ClassVerdict::label() const {
  const std::string n_str = std::to_string(n);
  switch (kind) {
    case ClassKind::LpN: return "l^p_" + n_str;
    case ClassKind::Lp: return "l^p";
    case ClassKind::Lp01: return "L^p[0,1]";
    case ClassKind::LpN_plus_Lp01: return "l^p_" + n_str + " (+)_p L^p[0,1]";
    case ClassKind::Lp_plus_Lp01: return "l^p (+)_p L^p[0,1]";
    case ClassKind::UndeterminedAtBudget: return "undetermined";
  }
  return "?";
}

const char* to_string(Embedding e) {
  switch (e) {
    case Embedding::Yes: return "Yes";
    case Embedding::No: return "No";
    case Embedding::NotAtBudget: return "NotAtBudget";
  }
  return "?";
}

const char* to_string(Iso i) {
  switch (i) {
    case Iso::Isomorphic: return "Isomorphic";
    case Iso::NotIsomorphic: return "NotIsomorphic";
    case Iso::UndeterminedAtBudget: return "UndeterminedAtBudget";
  }
  return "?";
}

namespace {

constexpr long kChainPrecision = 30;

void require_not_two(const Exponent& p, const char* what) {
  if (p.is_two()) throw Error(ErrorCode::ExponentTwo, std::string(what) + " needs p != 2");
}

std::uint64_t snapshot_depth(std::uint64_t budget) { return std::clamp<std::uint64_t>(budget, 1, 8); }

// Snapshot of a disintegration, when the presentation has one.
std::optional<VectorTree> snapshot(const Presentation& pres, std::uint64_t budget) {
  auto t = pres.disintegration(snapshot_depth(budget));
  if (!t || t->empty()) return std::nullopt;
  return t;
}

struct ChainStats {
  std::size_t chains = 0;
  std::vector<AtomWitness> positive;
  std::size_t zero_certified = 0;
  bool kappa_infinite = false;
  AntichainResult antichain;
};

ChainStats chain_stats(const VectorTree& tree, const Presentation& pres, std::uint64_t budget) {
  ChainStats st;
  ChainDecomposition dec = chain_decompose(tree, pres);
  st.chains = dec.chains.size();
  st.kappa_infinite = dec.kappa_infinite || tree.has_frontier();
  std::size_t limit = std::min<std::size_t>(dec.chains.size(), budget);
  for (std::size_t i = 0; i < limit; ++i) {
    ChainInfimum ci = chain_infimum(dec, i, tree, pres, kChainPrecision);
    if (ci.positive) st.positive.push_back({i, ci.norm_limit.lo});
    if (ci.is_zero_certified) ++st.zero_certified;
  }
  st.antichain = antichain_dimension(tree, budget);
  return st;
}

// Least k <= 60 with 2^-k < x.
long gap_exponent(const Rational& x) {
  long k = 0;
  while (k < 60 && !(pow2(-k) < x)) ++k;
  return k;
}

// Pairwise incomparable tree nodes with ||phi||^p < 2^-k.
std::vector<Node> small_nodes(const VectorTree& tree, const Presentation& pres, long k, std::size_t want) {
  std::vector<Node> out;
  for (const auto& nu : tree.bfs()) {
    if (out.size() >= want) break;
    const TreeEntry& e = tree.at(nu);
    if (e.terminal) continue;
    if (!(pres.ppow(e.vec, kChainPrecision).hi < pow2(-k))) continue;
    bool incomparable = std::none_of(out.begin(), out.end(), [&](const Node& m) {
      return is_prefix(m, nu) || is_prefix(nu, m);
    });
    if (incomparable) out.push_back(nu);
  }
  return out;
}

std::string node_list(const std::vector<Node>& nodes) {
  std::string s;
  for (const auto& nu : nodes) s += (s.empty() ? "" : " ") + to_string(nu);
  return s;
}

// Number of atoms as text: a count or "infinite".
std::string atom_text(const MeasureSummary& s) {
  return s.atoms_infinite ? "infinite" : std::to_string(s.atoms.size());
}

}  // namespace

AtomCount count_atoms_at_least(const Presentation& pres, const Exponent& p, std::uint64_t k, std::uint64_t budget) {
  require_not_two(p, "atom counting");
  AtomCount out;
  if (k == 0) {
    out.yes = true;
    out.source = "vacuous";
    return out;
  }
  if (auto tree = snapshot(pres, budget)) {
    ChainStats st = chain_stats(*tree, pres, budget);
    if (st.positive.size() >= k) {
      out.yes = true;
      out.source = "chains";
      out.witnesses.assign(st.positive.begin(), st.positive.begin() + static_cast<long>(k));
      return out;
    }
  }
  // Atom weights from the measure summary: ||1_a|| = w^(1/p).
  auto s = pres.summary(budget);
  if (s && s->atoms.size() >= k) {
    out.yes = true;
    out.source = s->exact ? "summary" : "estimate";
    for (std::size_t i = 0; i < k; ++i)
      out.witnesses.push_back({i, root_at(Enclosure::point(s->atoms[i]), p, kChainPrecision).lo});
  }
  return out;
}

EmbedResult embeds_Lp01(const Presentation& pres, const Exponent& p, std::uint64_t budget) {
  require_not_two(p, "the L^p[0,1] test");
  EmbedResult out;
  // Root mass against the atoms found by chains.
  if (auto tree = snapshot(pres, budget)) {
    ChainStats st = chain_stats(*tree, pres, budget);
    Enclosure rest = pres.ppow(tree->at({}).vec, kChainPrecision);
    ChainDecomposition dec = chain_decompose(*tree, pres);
    for (const auto& w : st.positive) {
      rest = rest - pres.ppow(tree->at(dec.chains[w.chain].back()).vec, kChainPrecision);
    }
    if (rest.lo > 0 && tree->at({}).error == 0) {
      out.verdict = Embedding::Yes;
      out.k = gap_exponent(rest.lo);
      out.gap = rest.lo;
      out.source = "chains";
    }
  }
  auto s = pres.summary(budget);
  if (!s) return out;
  if (s->nonatomic > 0) {
    if (out.verdict != Embedding::Yes) {
      out.verdict = Embedding::Yes;
      out.k = gap_exponent(s->nonatomic);
      out.source = s->exact ? "summary" : "estimate";
    }
    out.gap = s->nonatomic;
  } else if (out.verdict != Embedding::Yes && (s->exact || !s->atoms.empty())) {
    // All of the mass sits in atoms.
    out.verdict = Embedding::No;
    out.source = s->exact ? "summary" : "estimate";
  }
  return out;
}

ClassVerdict classify(const Presentation& pres, const Exponent& p, std::uint64_t budget) {
  ClassVerdict v;
  auto s = pres.summary(budget);

  if (p.is_two()) {
    v.evidence["route"] = "dimension";
    if (s && (s->atoms_infinite || s->nonatomic > 0)) {
      v.kind = ClassKind::Lp;
      v.evidence["dimension"] = "infinite";
      return v;
    }
    try {
      HilbertDimension hd = hilbert_dimension(pres, budget, budget);
      if (hd.kind == DimensionKind::Exactly && hd.n > 0) {
        v.kind = ClassKind::LpN;
        v.n = hd.n;
        v.evidence["dimension"] = std::to_string(hd.n);
      } else {
        v.evidence["dimension_at_least"] = std::to_string(hd.n);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotHilbert) throw;
      v.evidence["parallelogram"] = e.what();
    }
    return v;
  }

  if (!s) {
    v.evidence["summary"] = "unavailable";
    return v;
  }
  v.evidence["summary"] = s->exact ? "exact" : "estimate";
  v.evidence["atoms"] = atom_text(*s);
  v.evidence["nonatomic_mass"] = to_string(s->nonatomic);

  std::optional<VectorTree> tree = snapshot(pres, budget);
  std::optional<ChainStats> st;
  if (tree) {
    st = chain_stats(*tree, pres, budget);
    v.evidence["chains"] = std::to_string(st->chains);
    v.evidence["positive_chains"] = std::to_string(st->positive.size());
    v.evidence["zero_certified_chains"] = std::to_string(st->zero_certified);
    v.evidence["antichain"] = (st->antichain.bounded ? "" : ">=") + std::to_string(st->antichain.size);
    v.evidence["kappa"] = st->kappa_infinite ? "omega" : std::to_string(st->chains);
    if (!st->positive.empty()) {
      std::string lows;
      for (const auto& w : st->positive) lows += (lows.empty() ? "" : " ") + to_string(w.lower);
      v.evidence["chain_lower_bounds"] = lows;
    }
  }

  const bool continuous = s->nonatomic > 0;
  const std::uint64_t n = s->atoms.size();
  if (!continuous && n == 0 && !s->atoms_infinite) {
    v.evidence["zero_space"] = "true";
    return v;
  }
  if (s->atoms_infinite) {
    v.kind = continuous ? ClassKind::Lp_plus_Lp01 : ClassKind::Lp;
    v.evidence["atoms_unbounded"] = "true";
  } else if (!continuous) {
    v.kind = ClassKind::LpN;
    v.n = n;
    v.evidence["finite_antichains"] = std::to_string(n);
  } else if (n == 0) {
    v.kind = ClassKind::Lp01;
    v.evidence["small_node_below_every_node"] = "true";
  } else {
    v.kind = ClassKind::LpN_plus_Lp01;
    v.n = n;
    if (tree) {
      v.evidence["kappa"] = "omega";
      auto small = small_nodes(*tree, pres, 2, n + 1);
      if (small.size() == n + 1) v.evidence["small_norm_witness"] = node_list(small);
    }
  }
  if (continuous) v.evidence["embeds_Lp01_gap"] = to_string(s->nonatomic);
  // A finite snapshot of an exact summary must show the same atoms.
  if (st && s->exact && !s->atoms_infinite &&
      (st->positive.size() > n || (st->chains <= budget && st->positive.size() != n)))
    v.evidence["chain_mismatch"] = std::to_string(st->positive.size()) + " != " + std::to_string(n);
  return v;
}

IsoResult iso_check(const Presentation& a, const Presentation& b, const Exponent& p, std::uint64_t budget) {
  require_not_two(p, "the isomorphism check");
  IsoResult out;
  EmbedResult ea = embeds_Lp01(a, p, budget), eb = embeds_Lp01(b, p, budget);
  auto sa = a.summary(budget), sb = b.summary(budget);
  if (ea.verdict == Embedding::NotAtBudget || eb.verdict == Embedding::NotAtBudget || !sa || !sb) {
    out.reason = "no measure summary or embedding answer at this budget";
    return out;
  }
  if (ea.verdict != eb.verdict) {
    out.verdict = Iso::NotIsomorphic;
    out.reason = std::string("embedding parity: L^p[0,1] embeds ") + (ea.verdict == Embedding::Yes ? "into A only" : "into B only");
    return out;
  }
  std::string na = atom_text(*sa), nb = atom_text(*sb);
  if (na != nb) {
    out.verdict = Iso::NotIsomorphic;
    out.reason = "atom counts " + na + " != " + nb;
    return out;
  }
  if (na == "0" && ea.verdict == Embedding::No) {
    out.reason = "zero space";
    return out;
  }
  out.verdict = Iso::Isomorphic;
  out.reason = "atoms " + na + ", L^p[0,1] " + (ea.verdict == Embedding::Yes ? "embeds" : "does not embed");
  return out;
}

}  // namespace lpw
