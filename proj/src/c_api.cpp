// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

#include "lpw/lpw.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "lpw/classifier.hpp"
#include "lpw/convexity.hpp"
#include "lpw/disintegration.hpp"
#include "lpw/io.hpp"
#include "lpw/monitors.hpp"
#include "lpw/orders.hpp"

struct lpw_presentation {
  lpw::PresentationPtr ptr;
};
struct lpw_name {
  lpw::NamePtr ptr;
};
struct lpw_order {
  lpw::OrderPtr ptr;
};

namespace {

thread_local std::string g_last_error;

lpw_status from_code(lpw::ErrorCode c) {
  switch (c) {
    case lpw::ErrorCode::InvalidInput: return LPW_ERR_INVALID_INPUT;
    case lpw::ErrorCode::DomainError: return LPW_ERR_DOMAIN;
    case lpw::ErrorCode::ExponentTwo: return LPW_ERR_EXPONENT_TWO;
    case lpw::ErrorCode::ExponentMismatch: return LPW_ERR_EXPONENT_MISMATCH;
    case lpw::ErrorCode::Inconsistent: return LPW_ERR_INCONSISTENT;
    case lpw::ErrorCode::ZeroSpace: return LPW_ERR_ZERO_SPACE;
    case lpw::ErrorCode::NotADisintegration: return LPW_ERR_NOT_A_DISINTEGRATION;
    case lpw::ErrorCode::NotNormalized: return LPW_ERR_NOT_NORMALIZED;
    case lpw::ErrorCode::NotAnIsomorphism: return LPW_ERR_NOT_AN_ISOMORPHISM;
    case lpw::ErrorCode::NotInSpan: return LPW_ERR_NOT_IN_SPAN;
    case lpw::ErrorCode::InvalidOrder: return LPW_ERR_INVALID_ORDER;
    case lpw::ErrorCode::TooFewElements: return LPW_ERR_TOO_FEW_ELEMENTS;
    case lpw::ErrorCode::NotHilbert: return LPW_ERR_NOT_HILBERT;
    case lpw::ErrorCode::PrecisionExhausted: return LPW_ERR_PRECISION_EXHAUSTED;
  }
  return LPW_ERR_INTERNAL;
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NullArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
lpw_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return LPW_OK;
  } catch (const lpw::Error& e) {
    g_last_error = e.what();
    return from_code(e.code());
  } catch (const IoError& e) {
    g_last_error = e.what();
    return LPW_ERR_IO;
  } catch (const NullArgument& e) {
    g_last_error = e.what();
    return LPW_ERR_NULL_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LPW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return LPW_ERR_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* what) {
  if (p == nullptr) throw NullArgument(std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lpw::Exponent exponent(const char* p) {
  need(p, "p");
  return lpw::Exponent(lpw::parse_rational(p));
}

std::string slurp(const char* path) {
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lpw::NamePtr tree_name_of(const lpw::PresentationPtr& pres, std::uint64_t depth) {
  if (auto gadget = std::dynamic_pointer_cast<const lpw::GadgetSpace>(pres)) return gadget->tree_name();
  auto tree = pres->disintegration(depth);
  if (!tree) throw lpw::Error(lpw::ErrorCode::InvalidInput, pres->describe() + " has no known disintegration");
  return lpw::tree_name(*tree, pres);
}

}  // namespace

extern "C" {

const char* lpw_version(void) { return "0.1.0"; }

const char* lpw_status_name(lpw_status s) {
  switch (s) {
    case LPW_OK: return "Ok";
    case LPW_ERR_IO: return "IoError";
    case LPW_ERR_NULL_ARGUMENT: return "NullArgument";
    case LPW_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (s > LPW_OK && s < LPW_ERR_IO) return lpw::error_name(static_cast<lpw::ErrorCode>(s - 1));
  return "Unknown";
}

const char* lpw_last_error(void) { return g_last_error.c_str(); }

void lpw_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- presentations

lpw_status lpw_presentation_standard(lpw_space space, uint64_t n, const char* p, lpw_presentation** out) {
  return guard([&] {
    need(out, "out");
    lpw::SpaceKind kind;
    switch (space) {
      case LPW_SPACE_LPN: kind = lpw::SpaceKind::LpN; break;
      case LPW_SPACE_LP: kind = lpw::SpaceKind::Lp; break;
      case LPW_SPACE_LP01: kind = lpw::SpaceKind::Lp01; break;
      default: throw lpw::Error(lpw::ErrorCode::InvalidInput, "unknown space");
    }
    std::optional<std::uint64_t> count;
    if (space == LPW_SPACE_LPN) count = n;
    *out = new lpw_presentation{lpw::standard_presentation(kind, count, exponent(p))};
  });
}

lpw_status lpw_presentation_from_json(const char* json, const char* p, lpw_presentation** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new lpw_presentation{lpw::presentation_from_json(lpw::parse_json(json), exponent(p))};
  });
}

lpw_status lpw_presentation_sum(const lpw_presentation* a, const lpw_presentation* b, const char* p,
                                lpw_presentation** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new lpw_presentation{lpw::lp_sum(a->ptr, b->ptr, exponent(p))};
  });
}

void lpw_presentation_free(lpw_presentation* pres) { delete pres; }

lpw_status lpw_presentation_describe(const lpw_presentation* pres, char** out) {
  return guard([&] {
    need(pres, "pres");
    need(out, "out");
    *out = dup(pres->ptr->describe());
  });
}

lpw_status lpw_presentation_norm(const lpw_presentation* pres, const char* vector_json, int32_t k, char** out_json) {
  return guard([&] {
    need(pres, "pres");
    need(vector_json, "vector_json");
    need(out_json, "out_json");
    auto v = lpw::vector_from_json(lpw::parse_json(vector_json));
    *out_json = dup(lpw::enclosure_json(pres->ptr->norm(v, k)).dump());
  });
}

lpw_status lpw_presentation_tree(const lpw_presentation* pres, uint64_t depth, int32_t k, char** out_jsonl) {
  return guard([&] {
    need(pres, "pres");
    need(out_jsonl, "out_jsonl");
    auto tree = pres->ptr->disintegration(depth);
    if (!tree) throw lpw::Error(lpw::ErrorCode::InvalidInput, pres->ptr->describe() + " has no known disintegration");
    std::string text;
    for (const auto& line : lpw::tree_dump(*tree, *pres->ptr, k)) text += line.dump() + "\n";
    for (const auto& line : lpw::chain_dump(*tree, *pres->ptr)) text += line.dump() + "\n";
    *out_jsonl = dup(text);
  });
}

// ---------------------------------------------------------------- names

lpw_status lpw_name_of_presentation(const lpw_presentation* pres, lpw_name** out) {
  return guard([&] {
    need(pres, "pres");
    need(out, "out");
    *out = new lpw_name{lpw::diagram_enumerate(pres->ptr)};
  });
}

lpw_status lpw_name_of_exponent(const char* p, lpw_name** out) {
  return guard([&] {
    need(out, "out");
    *out = new lpw_name{lpw::exponent_name(exponent(p))};
  });
}

lpw_status lpw_name_parse(const char* text, lpw_name** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    *out = new lpw_name{lpw::finite_name(lpw::parse_pairs(in))};
  });
}

lpw_status lpw_name_read_file(const char* path, lpw_name** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    std::istringstream in(slurp(path));
    *out = new lpw_name{lpw::finite_name(lpw::parse_pairs(in))};
  });
}

void lpw_name_free(lpw_name* name) { delete name; }

lpw_status lpw_name_write_file(const lpw_name* name, uint64_t count, const char* path) {
  return guard([&] {
    need(name, "name");
    need(path, "path");
    std::ofstream o(path);
    if (!o) throw IoError(std::string("cannot write ") + path);
    lpw::write_pairs(o, *name->ptr, count);
    if (!o) throw IoError(std::string("write failed: ") + path);
  });
}

lpw_status lpw_name_text(const lpw_name* name, uint64_t count, char** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    std::ostringstream o;
    lpw::write_pairs(o, *name->ptr, count);
    *out = dup(o.str());
  });
}

lpw_status lpw_name_length(const lpw_name* name, int* is_finite, uint64_t* length) {
  return guard([&] {
    need(name, "name");
    need(is_finite, "is_finite");
    need(length, "length");
    auto n = name->ptr->length();
    *is_finite = n ? 1 : 0;
    *length = n.value_or(0);
  });
}

lpw_status lpw_name_of_tree(const lpw_presentation* pres, uint64_t depth, lpw_name** out) {
  return guard([&] {
    need(pres, "pres");
    need(out, "out");
    *out = new lpw_name{tree_name_of(pres->ptr, depth)};
  });
}

// ---------------------------------------------------------------- orders

lpw_status lpw_order_from_json(const char* json, lpw_order** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new lpw_order{lpw::order_from_json(lpw::parse_json(json))};
  });
}

void lpw_order_free(lpw_order* order) { delete order; }

lpw_status lpw_order_trace(const lpw_order* order, uint64_t stages, char** out_json) {
  return guard([&] {
    need(order, "order");
    need(out_json, "out_json");
    auto vals = lpw::embedding_trace(order->ptr, stages);
    lpw::Json j;
    j["values"] = lpw::Json::array();
    for (const auto& v : vals) j["values"].push_back(lpw::rational_json(v));
    j["adjacencies"] = lpw::Json::array();
    for (const auto& [a, b] : lpw::adjacencies(vals))
      j["adjacencies"].push_back({lpw::rational_json(a), lpw::rational_json(b)});
    *out_json = dup(j.dump());
  });
}

lpw_status lpw_order_to_space(const lpw_order* order, const char* p, lpw_presentation** out) {
  return guard([&] {
    need(order, "order");
    need(out, "out");
    *out = new lpw_presentation{lpw::order_to_space(order->ptr, exponent(p))};
  });
}

// ---------------------------------------------------------------- convexity

lpw_status lpw_delta(const char* p, const char* eps, int32_t k, char** out_json) {
  return guard([&] {
    need(eps, "eps");
    need(out_json, "out_json");
    *out_json = dup(lpw::enclosure_json(lpw::delta(exponent(p), lpw::parse_rational(eps), k)).dump());
  });
}

lpw_status lpw_estimate_exponent(const lpw_name* f, const char* tol, uint64_t budget, char** out_json) {
  return guard([&] {
    need(f, "f");
    need(tol, "tol");
    need(out_json, "out_json");
    auto est = lpw::estimate_exponent(f->ptr, lpw::parse_rational(tol), budget);
    *out_json = dup(lpw::estimate_json(est).dump());
  });
}

// ---------------------------------------------------------------- monitors

lpw_status lpw_monitor(lpw_monitor_kind kind, const lpw_name* f, const lpw_name* g, const lpw_name* h,
                       uint64_t stages, int* violation, char** out_json) {
  return guard([&] {
    need(f, "f");
    need(violation, "violation");
    need(out_json, "out_json");
    lpw::MonitorVerdict v;
    switch (kind) {
      case LPW_MONITOR_BANACH: v = lpw::banach_name_monitor(f->ptr, stages); break;
      case LPW_MONITOR_HILBERT: v = lpw::hilbert_monitor(f->ptr, stages); break;
      case LPW_MONITOR_VTREE:
        need(g, "g");
        v = lpw::vector_tree_monitor(f->ptr, g->ptr, stages);
        break;
      case LPW_MONITOR_DISINT:
        need(g, "g");
        need(h, "h");
        v = lpw::disint_monitor(f->ptr, g->ptr, h->ptr, stages);
        break;
      case LPW_MONITOR_LSPACE:
        // g names p; h, when given, is the tree for the Disint branch.
        need(g, "g");
        v = lpw::lspace_monitor(f->ptr, g->ptr, stages, h ? h->ptr : nullptr);
        break;
      default: throw lpw::Error(lpw::ErrorCode::InvalidInput, "unknown monitor kind");
    }
    *violation = v.violation ? 1 : 0;
    *out_json = dup(lpw::verdict_json(v).dump());
  });
}

// ---------------------------------------------------------------- classification

lpw_status lpw_classify(const lpw_presentation* pres, const char* p, uint64_t budget, int* definite,
                        char** out_json) {
  return guard([&] {
    need(pres, "pres");
    need(definite, "definite");
    need(out_json, "out_json");
    auto v = lpw::classify(*pres->ptr, exponent(p), budget);
    *definite = v.definite() ? 1 : 0;
    *out_json = dup(lpw::class_json(v).dump());
  });
}

lpw_status lpw_iso_check(const lpw_presentation* a, const lpw_presentation* b, const char* p, uint64_t budget,
                         lpw_iso* verdict, char** out_json) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(verdict, "verdict");
    need(out_json, "out_json");
    auto r = lpw::iso_check(*a->ptr, *b->ptr, exponent(p), budget);
    switch (r.verdict) {
      case lpw::Iso::Isomorphic: *verdict = LPW_ISOMORPHIC; break;
      case lpw::Iso::NotIsomorphic: *verdict = LPW_NOT_ISOMORPHIC; break;
      case lpw::Iso::UndeterminedAtBudget: *verdict = LPW_ISO_UNDETERMINED; break;
    }
    lpw::Json j{{"verdict", lpw::to_string(r.verdict)}, {"reason", r.reason}};
    *out_json = dup(j.dump());
  });
}

lpw_status lpw_lebesgue_probe(const lpw_name* f, uint64_t budget, char** out_json) {
  return guard([&] {
    need(f, "f");
    need(out_json, "out_json");
    auto est = lpw::estimate_exponent(f->ptr, lpw::rat(1, 20), budget);
    lpw::Json j;
    j["budget_relative"] = true;
    j["exponent"] = lpw::estimate_json(est);
    // The name of p claims only the estimate itself, widened so that a
    // closed endpoint stays inside the open interval.
    lpw::OpenInterval range{est.lo - lpw::pow2(-20), est.hi + lpw::pow2(-20)};
    auto h = lpw::finite_name({{lpw::Nat(0), lpw::encode_interval(range)}});
    auto v = lpw::lspace_monitor(f->ptr, h, budget);
    j["p_monitored"] = {{"lo", lpw::rational_json(range.lo)}, {"hi", lpw::rational_json(range.hi)}};
    j["lspace"] = lpw::verdict_json(v);
    *out_json = dup(j.dump());
  });
}

}  // extern "C"
