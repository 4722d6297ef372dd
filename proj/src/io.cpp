// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/io.hpp"

#include "lpw/disintegration.hpp"

namespace lpw {

namespace {

Json mpz_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class mpz_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw Error(ErrorCode::InvalidInput, "expected an integer, got " + j.dump());
}

std::string field_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::InvalidInput, std::string("missing string field \"") + key + "\"");
  return j[key].get<std::string>();
}

std::uint64_t field_count(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw Error(ErrorCode::InvalidInput, std::string("missing count field \"") + key + "\"");
  return j[key].get<std::uint64_t>();
}

}  // namespace

Json rational_json(const Rational& q) { return Json::array({mpz_json(q.get_num()), mpz_json(q.get_den())}); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_from_json(j));
  if (j.is_array() && j.size() == 2) {
    mpz_class den = mpz_from_json(j[1]);
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
    Rational q(mpz_from_json(j[0]), den);
    q.canonicalize();
    return q;
  }
  throw Error(ErrorCode::InvalidInput, "expected a rational, got " + j.dump());
}

Json nat_json(const Nat& n) {
  if (n.fits_ulong_p()) return static_cast<std::uint64_t>(n.get_ui());
  return n.get_str();
}

Json enclosure_json(const Enclosure& e) { return {{"lo", rational_json(e.lo)}, {"hi", rational_json(e.hi)}}; }

Json vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& c : v.dense()) out.push_back(rational_json(c));
  return out;
}

RationalVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "a vector is a list of rationals");
  std::vector<Rational> dense;
  for (const auto& x : j) dense.push_back(rational_from_json(x));
  return RationalVector::from_dense(dense);
}

PresentationPtr presentation_from_json(const Json& j, const Exponent& p) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "a presentation is a JSON object");
  if (j.contains("p")) {
    Rational q = rational_from_json(j["p"]);
    if (!p.is_exactly(q)) throw Error(ErrorCode::ExponentMismatch, "file has p = " + to_string(q) + ", run has p = " + p.label());
  }
  const std::string space = field_string(j, "space");
  if (space == "lpn") return standard_presentation(SpaceKind::LpN, field_count(j, "n"), p);
  if (space == "lp") return standard_presentation(SpaceKind::Lp, std::nullopt, p);
  if (space == "lp01") return standard_presentation(SpaceKind::Lp01, std::nullopt, p);
  if (space == "sum") {
    if (!j.contains("a") || !j.contains("b")) throw Error(ErrorCode::InvalidInput, "sum needs \"a\" and \"b\"");
    return lp_sum(presentation_from_json(j["a"], p), presentation_from_json(j["b"], p), p);
  }
  if (space == "measure") {
    MeasureDescription d;
    if (j.contains("atoms"))
      for (const auto& a : j["atoms"]) d.atoms.push_back(rational_from_json(a));
    if (j.contains("nonatomic")) d.nonatomic = rational_from_json(j["nonatomic"]);
    return measure_backed(d, p);
  }
  if (space == "gadget") {
    // Decidable fixtures for Q: "true", "false_on_row" (row x0 never holds)
    // and "cofinite" (Q(x, y) for y >= from).
    const std::string q = field_string(j, "q");
    Predicate2 Q;
    if (q == "true") {
      Q = [](std::uint64_t, std::uint64_t) { return true; };
    } else if (q == "false_on_row") {
      std::uint64_t row = field_count(j, "row");
      Q = [row](std::uint64_t x, std::uint64_t) { return x != row; };
    } else if (q == "cofinite") {
      std::uint64_t from = field_count(j, "from");
      Q = [from](std::uint64_t, std::uint64_t y) { return y >= from; };
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown gadget predicate \"" + q + "\"");
    }
    return gadget_lp_space(std::move(Q), p);
  }
  if (space == "order") {
    if (!j.contains("order")) throw Error(ErrorCode::InvalidInput, "order space needs \"order\"");
    return order_to_space(order_from_json(j["order"]), p);
  }
  throw Error(ErrorCode::InvalidInput, "unknown space \"" + space + "\"");
}

OrderPtr order_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "an order is a JSON object");
  const std::string kind = field_string(j, "kind");
  if (kind == "matrix") {
    if (!j.contains("matrix") || !j["matrix"].is_array()) throw Error(ErrorCode::InvalidInput, "missing \"matrix\"");
    std::vector<std::vector<bool>> m;
    for (const auto& row : j["matrix"]) {
      if (!row.is_array()) throw Error(ErrorCode::InvalidInput, "matrix rows are lists");
      std::vector<bool> r;
      for (const auto& x : row) {
        if (x.is_boolean()) r.push_back(x.get<bool>());
        else if (x.is_number_integer()) r.push_back(x.get<long long>() != 0);
        else throw Error(ErrorCode::InvalidInput, "matrix entries are booleans");
      }
      m.push_back(std::move(r));
    }
    return matrix_order(std::move(m));
  }
  if (kind == "rule") {
    const std::string rule = field_string(j, "rule");
    if (rule == "omega") return omega_order();
    if (rule == "omega_star") return omega_star_order();
    if (rule == "eta") return eta_order();
    if (rule == "eta_plus") return eta_plus_order(field_count(j, "n"));
    throw Error(ErrorCode::InvalidInput, "unknown rule \"" + rule + "\"");
  }
  if (kind == "values") {
    if (!j.contains("values")) throw Error(ErrorCode::InvalidInput, "missing \"values\"");
    std::vector<Rational> vals;
    for (const auto& x : j["values"]) vals.push_back(rational_from_json(x));
    return value_order(std::move(vals));
  }
  throw Error(ErrorCode::InvalidInput, "unknown order kind \"" + kind + "\"");
}

Json verdict_json(const MonitorVerdict& v) {
  Json out;
  out["status"] = v.violation ? "Violation" : "OkAtStage";
  out["stage"] = v.stage;
  if (v.violation) {
    out["clause"] = v.clause;
    Json w = Json::object();
    for (const auto& [k, x] : v.witness) w[k] = x;
    out["witness"] = w;
  }
  out["progress"] = v.progress;
  if (!v.notes.empty()) out["notes"] = v.notes;
  return out;
}

Json class_json(const ClassVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.kind);
  if (v.kind == ClassKind::LpN || v.kind == ClassKind::LpN_plus_Lp01) out["n"] = v.n;
  out["label"] = v.label();
  out["evidence"] = v.evidence;
  return out;
}

Json estimate_json(const ExponentEstimate& e) {
  Json out;
  out["determined"] = e.determined;
  out["interval"] = {{"lo", rational_json(e.lo)}, {"hi", rational_json(e.hi)}};
  Json cands = Json::array();
  for (const auto& c : e.candidates) cands.push_back({{"lo", rational_json(c.lo)}, {"hi", rational_json(c.hi)}});
  out["candidates"] = cands;
  auto cut = [](const CutState& s) {
    Json a = Json::array();
    for (const auto& r : s.accepted) a.push_back(rational_json(r));
    return a;
  };
  out["accepted_right"] = cut(e.right);
  out["accepted_left"] = cut(e.left);
  if (e.parallelogram_violation) out["parallelogram_violation"] = *e.parallelogram_violation;
  out["used"] = e.used;
  return out;
}

std::vector<Json> tree_dump(const VectorTree& tree, const Presentation& pres, long k) {
  std::vector<Json> out;
  for (const auto& nu : tree.bfs()) {
    const TreeEntry& e = tree.at(nu);
    out.push_back({{"node", nu}, {"vec", nat_json(encode_vector(e.vec))}, {"norm", enclosure_json(pres.norm(e.vec, k))}});
  }
  return out;
}

std::vector<Json> chain_dump(const VectorTree& tree, const Presentation& pres) {
  std::vector<Json> out;
  ChainDecomposition dec = chain_decompose(tree, pres);
  for (std::size_t n = 0; n < dec.chains.size(); ++n)
    for (const auto& nu : dec.chains[n]) out.push_back({{"chain", n}, {"node", nu}});
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
  }
}

}  // namespace lpw
