// Copyright 2026 The lpw Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C interface.
//
// Exit codes: 0 for a definite answer (or a plain success), 2 when the
// answer is only budget-relative or undetermined, 1 on bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpw/lpw.h"

namespace {

constexpr int kDefinite = 0;
constexpr int kInputError = 1;
constexpr int kUndetermined = 2;

struct Failure {
  lpw_status status;
};

void check(lpw_status s) {
  if (s != LPW_OK) throw Failure{s};
}

// Owning wrappers for the C handles and strings.
struct PresDel {
  void operator()(lpw_presentation* p) const { lpw_presentation_free(p); }
};
struct NameDel {
  void operator()(lpw_name* p) const { lpw_name_free(p); }
};
struct OrderDel {
  void operator()(lpw_order* p) const { lpw_order_free(p); }
};
using Pres = std::unique_ptr<lpw_presentation, PresDel>;
using Name = std::unique_ptr<lpw_name, NameDel>;
using Order = std::unique_ptr<lpw_order, OrderDel>;

std::string take(char* s) {
  std::string out = s ? s : "";
  lpw_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_json(const std::string& text) { std::cout << nlohmann::json::parse(text).dump(2) << "\n"; }

Pres pres_from_file(const std::string& path, const std::string& p) {
  lpw_presentation* out = nullptr;
  check(lpw_presentation_from_json(slurp(path).c_str(), p.c_str(), &out));
  return Pres(out);
}

Name name_from_file(const std::string& path) {
  lpw_name* out = nullptr;
  check(lpw_name_read_file(path.c_str(), &out));
  return Name(out);
}

// The name from --name, or the live name of the --pres presentation.
Name name_from_args(const std::string& name_path, const std::string& pres_path, const std::string& p) {
  if (name_path.empty() == pres_path.empty()) throw std::runtime_error("give exactly one of --name and --pres");
  if (!name_path.empty()) return name_from_file(name_path);
  Pres pres = pres_from_file(pres_path, p);
  lpw_name* out = nullptr;
  check(lpw_name_of_presentation(pres.get(), &out));
  return Name(out);
}

lpw_monitor_kind monitor_kind(const std::string& k) {
  if (k == "banach") return LPW_MONITOR_BANACH;
  if (k == "vtree") return LPW_MONITOR_VTREE;
  if (k == "disint") return LPW_MONITOR_DISINT;
  if (k == "lspace") return LPW_MONITOR_LSPACE;
  return LPW_MONITOR_HILBERT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpw: presentations of L^p spaces, their names, monitors and classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lpw_version()));

  // present
  std::string space = "lp", p = "2", out_path, pres_path, atoms, nonatomic = "0", a_path, b_path, tree_path,
              tree_name_path;
  std::uint64_t n = 2, stages = 100, depth = 4;
  auto* present = app.add_subcommand("present", "write the first diagram pairs of a presentation's name");
  present->add_option("--space", space, "lpn | lp | lp01 | sum | measure")
      ->check(CLI::IsMember({"lpn", "lp", "lp01", "sum", "measure"}));
  present->add_option("--p", p, "exponent, a rational >= 1")->required();
  present->add_option("--n", n, "dimension for lpn");
  present->add_option("--atoms", atoms, "comma-separated atom masses for measure");
  present->add_option("--nonatomic", nonatomic, "nonatomic mass for measure");
  present->add_option("--a", a_path, "left summand (JSON presentation) for sum");
  present->add_option("--b", b_path, "right summand (JSON presentation) for sum");
  present->add_option("--pres", pres_path, "JSON presentation; overrides --space");
  present->add_option("--out", out_path, "name file to write")->required();
  present->add_option("--stages", stages, "number of pairs");
  present->add_option("--tree", tree_path, "also write the disintegration snapshot as JSON lines");
  present->add_option("--tree-name", tree_name_path, "also write the first pairs of the tree's name");
  present->add_option("--depth", depth, "snapshot depth for --tree and --tree-name");

  // delta
  std::string eps = "1";
  int k = 30;
  auto* delta = app.add_subcommand("delta", "modulus of uniform convexity of L^p");
  delta->add_option("--p", p, "exponent")->required();
  delta->add_option("--eps", eps, "epsilon in (0, 2]")->required();
  delta->add_option("--k", k, "enclosure width 2^-k");

  // exponent
  std::string name_path, tol = "1/20";
  std::uint64_t budget = 10000;
  auto* expo = app.add_subcommand("exponent", "estimate p from a name");
  auto* expo_name = expo->add_option("--name", name_path, "name file (a prefix; keyed reads past it stay unanswered)");
  auto* expo_pres = expo->add_option("--pres", pres_path, "JSON presentation whose name is generated on demand");
  expo_name->excludes(expo_pres);
  expo->add_option("--p", p, "exponent used to build --pres");
  expo->add_option("--tol", tol, "target width");
  expo->add_option("--budget", budget, "read budget");

  // order2space
  std::string order_path;
  auto* o2s = app.add_subcommand("order2space", "name of the L^p space of a linear order");
  o2s->add_option("--order", order_path, "order JSON")->required();
  o2s->add_option("--p", p, "exponent")->required();
  o2s->add_option("--stages", stages, "pairs to write and elements to trace");
  o2s->add_option("--out", out_path, "name file to write")->required();

  // monitor
  std::string kind = "banach", f_path, g_path, h_path;
  auto* mon = app.add_subcommand("monitor", "run a monitor over name prefixes");
  mon->set_help_flag("--help", "print this help");  // frees -h for --h
  mon->add_option("--kind", kind, "banach | vtree | disint | lspace | hilbert")
      ->check(CLI::IsMember({"banach", "vtree", "disint", "lspace", "hilbert"}));
  mon->add_option("--f", f_path, "name of the presentation")->required();
  mon->add_option("--g", g_path, "tree name (vtree, disint) or name of p (lspace)");
  mon->add_option("--h", h_path, "name of p (disint) or tree name (lspace)");
  mon->add_option("--stages", stages, "stages to run");

  // classify
  auto* cls = app.add_subcommand("classify", "isometry type of a presentation");
  cls->add_option("--pres", pres_path, "JSON presentation")->required();
  cls->add_option("--p", p, "exponent")->required();
  cls->add_option("--budget", budget, "budget");

  // isocheck
  auto* iso = app.add_subcommand("isocheck", "isometric isomorphism of two presentations");
  iso->add_option("--a", a_path, "JSON presentation")->required();
  iso->add_option("--b", b_path, "JSON presentation")->required();
  iso->add_option("--p", p, "exponent")->required();
  iso->add_option("--budget", budget, "budget");

  // lebesgue-probe
  auto* probe = app.add_subcommand("lebesgue-probe", "exponent estimate plus L^p monitoring (budget-relative)");
  auto* probe_name = probe->add_option("--name", name_path, "name file");
  auto* probe_pres = probe->add_option("--pres", pres_path, "JSON presentation whose name is generated on demand");
  probe_name->excludes(probe_pres);
  probe->add_option("--p", p, "exponent used to build --pres");
  probe->add_option("--budget", budget, "budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*present) {
      lpw_presentation* raw = nullptr;
      if (!pres_path.empty()) {
        check(lpw_presentation_from_json(slurp(pres_path).c_str(), p.c_str(), &raw));
      } else if (space == "lpn") {
        check(lpw_presentation_standard(LPW_SPACE_LPN, n, p.c_str(), &raw));
      } else if (space == "lp") {
        check(lpw_presentation_standard(LPW_SPACE_LP, 0, p.c_str(), &raw));
      } else if (space == "lp01") {
        check(lpw_presentation_standard(LPW_SPACE_LP01, 0, p.c_str(), &raw));
      } else if (space == "measure") {
        nlohmann::json j{{"space", "measure"}, {"atoms", nlohmann::json::array()}, {"nonatomic", nonatomic}};
        std::stringstream ss(atoms);
        for (std::string item; std::getline(ss, item, ',');)
          if (!item.empty()) j["atoms"].push_back(item);
        check(lpw_presentation_from_json(j.dump().c_str(), p.c_str(), &raw));
      } else {  // sum
        if (a_path.empty() || b_path.empty()) throw std::runtime_error("sum needs --a and --b");
        Pres a = pres_from_file(a_path, p), b = pres_from_file(b_path, p);
        check(lpw_presentation_sum(a.get(), b.get(), p.c_str(), &raw));
      }
      Pres pres(raw);
      lpw_name* name = nullptr;
      check(lpw_name_of_presentation(pres.get(), &name));
      Name nm(name);
      check(lpw_name_write_file(nm.get(), stages, out_path.c_str()));
      if (!tree_path.empty()) {
        char* text = nullptr;
        check(lpw_presentation_tree(pres.get(), depth, 30, &text));
        std::ofstream(tree_path) << take(text);
      }
      if (!tree_name_path.empty()) {
        lpw_name* tn = nullptr;
        check(lpw_name_of_tree(pres.get(), depth, &tn));
        Name t(tn);
        check(lpw_name_write_file(t.get(), stages, tree_name_path.c_str()));
      }
      char* desc = nullptr;
      check(lpw_presentation_describe(pres.get(), &desc));
      std::cout << take(desc) << ": wrote " << stages << " pairs to " << out_path << "\n";
      return kDefinite;
    }
    if (*delta) {
      char* out = nullptr;
      check(lpw_delta(p.c_str(), eps.c_str(), k, &out));
      print_json(take(out));
      return kDefinite;
    }
    if (*expo) {
      Name f = name_from_args(name_path, pres_path, p);
      char* out = nullptr;
      check(lpw_estimate_exponent(f.get(), tol.c_str(), budget, &out));
      std::string text = take(out);
      print_json(text);
      return nlohmann::json::parse(text)["determined"].get<bool>() ? kDefinite : kUndetermined;
    }
    if (*o2s) {
      lpw_order* raw = nullptr;
      check(lpw_order_from_json(slurp(order_path).c_str(), &raw));
      Order ord(raw);
      lpw_presentation* pr = nullptr;
      check(lpw_order_to_space(ord.get(), p.c_str(), &pr));
      Pres pres(pr);
      lpw_name* name = nullptr;
      check(lpw_name_of_presentation(pres.get(), &name));
      Name nm(name);
      check(lpw_name_write_file(nm.get(), stages, out_path.c_str()));
      char* trace = nullptr;
      check(lpw_order_trace(ord.get(), stages, &trace));
      print_json(take(trace));
      return kDefinite;
    }
    if (*mon) {
      Name f = name_from_file(f_path);
      Name g = g_path.empty() ? Name() : name_from_file(g_path);
      Name h = h_path.empty() ? Name() : name_from_file(h_path);
      int violation = 0;
      char* out = nullptr;
      check(lpw_monitor(monitor_kind(kind), f.get(), g.get(), h.get(), stages, &violation, &out));
      std::string text = take(out);
      if (violation) {
        print_json(text);
        return kDefinite;
      }
      auto j = nlohmann::json::parse(text);
      std::cout << "OkAtStage(" << j["stage"] << ")\n" << j["progress"].dump(2) << "\n";
      return kUndetermined;
    }
    if (*cls) {
      Pres pres = pres_from_file(pres_path, p);
      int definite = 0;
      char* out = nullptr;
      check(lpw_classify(pres.get(), p.c_str(), budget, &definite, &out));
      print_json(take(out));
      return definite ? kDefinite : kUndetermined;
    }
    if (*iso) {
      Pres a = pres_from_file(a_path, p), b = pres_from_file(b_path, p);
      lpw_iso verdict = LPW_ISO_UNDETERMINED;
      char* out = nullptr;
      check(lpw_iso_check(a.get(), b.get(), p.c_str(), budget, &verdict, &out));
      print_json(take(out));
      return verdict == LPW_ISO_UNDETERMINED ? kUndetermined : kDefinite;
    }
    if (*probe) {
      Name f = name_from_args(name_path, pres_path, p);
      char* out = nullptr;
      check(lpw_lebesgue_probe(f.get(), budget, &out));
      std::string text = take(out);
      print_json(text);
      auto j = nlohmann::json::parse(text);
      return j["lspace"]["status"] == "Violation" ? kDefinite : kUndetermined;
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << lpw_status_name(e.status) << ": " << lpw_last_error() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
