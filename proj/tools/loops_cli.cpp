// loops: command-line surface for the loopalg library.
//
// Commands: check, verify, search, quotient, isotopes, catalog.
// Exit codes: 0 success, 2 invalid input, 3 not found, 4 cap exceeded.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "loopalg/core.hpp"
#include "loopalg/mappings.hpp"
#include "loopalg/properties.hpp"
#include "loopalg/search.hpp"
#include "loopalg/suite.hpp"
#include "loopalg/terms.hpp"

using nlohmann::json;
using namespace loopalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;        // applicable identity failed in verify
constexpr int kExitInvalid = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitCap = 4;

struct Common {
  std::string format = "human";
  std::string out_path;
  int threads = 1;  // accepted for interface stability; execution is serial
};

std::ostream& open_out(const Common& c, std::ofstream& file) {
  if (c.out_path.empty()) return std::cout;
  file.open(c.out_path);
  if (!file) throw loop_error("cannot open output file: " + c.out_path);
  return file;
}

LoopTable load_loop(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open input file: " + path);
  return validate_loop(parse_table(in));
}

int classify_error(const loop_error& e) {
  std::string what = e.what();
  if (what.find("cap") != std::string::npos ||
      what.find("too large") != std::string::npos)
    return kExitCap;
  return kExitInvalid;
}

std::string elements_str(const std::vector<int>& xs) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); ++i)
    s += (i ? ", " : "") + std::to_string(xs[i]);
  return s + "}";
}

// --- property report rendering ---------------------------------------------

json verdict_json(const PropertyVerdict& v) {
  json j;
  j["holds"] = v.holds;
  if (!v.holds) {
    j["witness"] = v.witness;
    if (!v.note.empty()) j["note"] = v.note;
  }
  return j;
}

json report_json(const LoopTable& L, const PropertyReport& rep) {
  json j;
  j["order"] = L.order();
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < L.order(); ++r) {
    std::vector<int> row;
    for (int c = 0; c < L.order(); ++c) row.push_back(L.mul(r, c));
    rows.push_back(std::move(row));
  }
  j["table"] = rows;
  json props = json::object();
  for (const auto& [name, v] : rep.entries) props[name] = verdict_json(v);
  j["properties"] = props;
  j["nucleus"] = rep.nucleus_set.elements();
  j["nucleus_order"] = rep.nucleus_set.count();
  return j;
}

void print_report_human(std::ostream& os, const LoopTable& L,
                        const PropertyReport& rep) {
  os << "loop of order " << L.order() << "\n";
  for (const auto& [name, v] : rep.entries) {
    os << "  " << name << ": " << (v.holds ? "yes" : "no");
    if (!v.holds) {
      os << "  witness " << elements_str(v.witness);
      if (!v.note.empty()) os << " (" << v.note << ")";
    }
    os << "\n";
  }
  os << "  Nuc(L) = " << elements_str(rep.nucleus_set.elements()) << " (order "
     << rep.nucleus_set.count() << ")\n";
}

// --- identity suite rendering ----------------------------------------------

// Operator-form statement for each suite entry id.
const std::map<std::string, std::string>& suite_formulas() {
  static const std::map<std::string, std::string> m = {
      {"eq1", "x(y*xz) = (xy*x)z"},
      {"eq2", "[R(x,y)R(y,x)]^-1 T(x)T(y) = T(xy)"},
      {"eq3", "L(x,y) = R(x^-1,y^-1)"},
      {"eq4", "R(x,y)^-1 = R(y^-1,x^-1)"},
      {"eq5", "L(x,y)^-1 = L(y^-1,x^-1)"},
      {"eq6", "R(y)T(x) = T(x)R(x^-1 y x)"},
      {"eq7", "L(y)T(x) = T(x)L(x^-1 y x)"},
      {"eq8", "C(x,y) fixes the identity element"},
      {"eq9", "C(x,y) = L(x^-1)R(y^-1)L(x)R(y)"},
      {"eq10", "C(x,y) = R(x,y)R(y,x)^-1"},
      {"eq11", "R(p), L(p) commute with R(q,r) on <a,b>"},
      {"eq12", "R(p), L(p) commute with L(q,r) on <a,b>"},
      {"eq13", "R(p), L(p) commute with C(q,r) on <a,b>"},
      {"eq14", "R(x,y) = R(y)R(y^-1 x^-1)R(x) = R(y^-1 x^-1)R(x)R(y)"},
      {"eq15", "L(x,y) = L(y)L(x^-1 y^-1)L(x) = L(x^-1 y^-1)L(x)L(y)"},
      {"eq16", "R(x,y)^-1 = R(y,x)"},
      {"eq17", "R(x,y) = R(x^-1,y^-1) = L(x,y) = L(x^-1,y^-1)"},
      {"eq18", "C(x,y) = C(x^-1,y^-1) = R(x,y)^2"},
      {"eq19", "(yx)C(z,y) = (yx)C(z^-1,x)"},
      {"lemma3", "T(x)T(y) = T(xy)"},
      {"thm1", "x(y(xz)) = ((xy)x)z"},
      {"cor8", "C(x,z) = L(z,x) = R(z,x) and C(x,z)^3 = I"},
      {"moufang_op", "R(xz)L(x) = R(x)L(x)R(z)"},
  };
  return m;
}

json suite_json(const IdentitySuiteReport& rep) {
  json j;
  j["inverse_property"] = rep.inverse_property;
  j["moufang"] = rep.moufang;
  j["diassociative_a_loop"] = rep.diassociative_a_loop;
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json je;
    je["id"] = e.id;
    je["hypothesis"] = to_string(e.hypothesis);
    je["applicable"] = e.applicable;
    if (e.applicable) je["holds"] = e.holds;
    if (!e.witness.empty()) je["witness"] = e.witness;
    entries.push_back(std::move(je));
  }
  j["entries"] = entries;
  j["all_applicable_hold"] = rep.all_applicable_hold();
  return j;
}

void print_suite_human(std::ostream& os, const IdentitySuiteReport& rep) {
  os << "hypothesis classes: IP=" << (rep.inverse_property ? "yes" : "no")
     << " Moufang=" << (rep.moufang ? "yes" : "no")
     << " diassociative-A-loop=" << (rep.diassociative_a_loop ? "yes" : "no")
     << "\n";
  for (const auto& e : rep.entries) {
    os << "  " << e.id << "  [" << to_string(e.hypothesis) << "]  ";
    auto it = suite_formulas().find(e.id);
    if (it != suite_formulas().end()) os << it->second << "  ";
    if (!e.applicable) os << "-- not applicable\n";
    else if (e.holds) os << "-- holds\n";
    else os << "-- FAILS at " << e.witness << "\n";
  }
}

json cor2_json(const Cor2Report& r) {
  return json{{"applicable", r.applicable},
              {"inverse_property", r.ip},
              {"alternative", r.alternative},
              {"diassociative", r.diassociative},
              {"moufang", r.moufang},
              {"equivalent", r.equivalent}};
}

json cor4_json(const Cor4Report& r) {
  return json{{"lhs_diassociative_a_loop", r.lhs},
              {"moufang", r.moufang},
              {"nucleus_normal", r.nucleus_normal},
              {"nucleus_order", r.nucleus_order},
              {"quotient_order", r.quotient_order},
              {"quotient_commutative", r.quotient_commutative},
              {"quotient_exponent3", r.quotient_exponent3},
              {"cubes_in_nucleus", r.cubes_in_nucleus},
              {"commutators_in_nucleus", r.commutators_in_nucleus},
              {"formulations_agree", r.formulations_agree},
              {"rhs", r.rhs},
              {"equivalent", r.equivalent}};
}

// --- search rendering --------------------------------------------------------

json stats_json(const SearchStats& st) {
  json j;
  j["nodes"] = st.nodes;
  j["forced"] = st.forced;
  j["models"] = st.models;
  j["models_after_iso"] = st.models_after_iso;
  j["elapsed_seconds"] = st.elapsed_seconds;
  json prunes = json::object();
  for (const auto& [k, v] : st.prunes) prunes[k] = v;
  j["prunes"] = prunes;
  return j;
}

void print_stats_human(std::ostream& os, const SearchStats& st,
                       bool iso_reject) {
  os << st.models << " models";
  if (iso_reject) os << " (" << st.models_after_iso << " up to isomorphism)";
  os << "\n"
     << "nodes " << st.nodes << ", forced " << st.forced << ", elapsed "
     << st.elapsed_seconds << " s\n";
  for (const auto& [k, v] : st.prunes) os << "  pruned by " << k << ": " << v << "\n";
}

// --- commands ----------------------------------------------------------------

int cmd_check(const Common& common, const std::string& path) {
  std::ofstream file;
  std::ostream& os = open_out(common, file);
  LoopTable L = load_loop(path);
  PropertyReport rep = property_report(L);
  if (common.format == "json") os << report_json(L, rep).dump(2) << "\n";
  else print_report_human(os, L, rep);
  return kExitOk;
}

int cmd_verify(const Common& common, const std::string& path,
               const std::string& suite) {
  if (suite != "default") throw parse_error("unknown suite: " + suite);
  std::ofstream file;
  std::ostream& os = open_out(common, file);
  LoopTable L = load_loop(path);
  IdentitySuiteReport rep = identity_suite(L);
  Cor2Report c2 = verify_corollary2(L);
  Cor4Report c4 = verify_corollary4(L);
  if (common.format == "json") {
    json j;
    j["suite"] = suite_json(rep);
    j["corollary2"] = cor2_json(c2);
    j["corollary4"] = cor4_json(c4);
    os << j.dump(2) << "\n";
  } else {
    print_suite_human(os, rep);
    os << "corollary 2: "
       << (c2.applicable
               ? std::string("applicable, equivalence ") +
                     (c2.equivalent ? "holds" : "FAILS")
               : "not applicable (not an A-loop)")
       << "\n";
    os << "corollary 4: lhs=" << (c4.lhs ? "yes" : "no")
       << " rhs=" << (c4.rhs ? "yes" : "no")
       << " equivalence " << (c4.equivalent ? "holds" : "FAILS")
       << " (|Nuc|=" << c4.nucleus_order << ")\n";
  }
  return rep.all_applicable_hold() ? kExitOk : kExitFail;
}

struct SearchArgs {
  int order = 0;
  std::vector<std::string> require, forbid;
  std::string mode = "count";
  bool iso_reject = false;
  std::string spec_path;
  int order_cap = 10;
  int canon_cap = 8;
};

SearchSpec build_spec(const SearchArgs& a) {
  SearchSpec spec;
  if (!a.spec_path.empty()) {
    std::ifstream in(a.spec_path);
    if (!in) throw parse_error("cannot open spec file: " + a.spec_path);
    spec = parse_search_spec(in);
  }
  if (a.order > 0) spec.order = a.order;
  for (const auto& t : a.require) add_constraint(spec, t, true);
  for (const auto& t : a.forbid) add_constraint(spec, t, false);
  if (a.mode == "first") spec.mode = SearchSpec::Mode::First;
  else if (a.mode == "count") spec.mode = SearchSpec::Mode::Count;
  else if (a.mode == "stream") spec.mode = SearchSpec::Mode::Stream;
  else throw parse_error("unknown mode: " + a.mode);
  if (a.iso_reject) spec.iso_reject = true;
  spec.order_cap = a.order_cap;
  spec.canon_cap = a.canon_cap;
  if (spec.order < 1) throw parse_error("search needs --order or a spec file");
  return spec;
}

int cmd_search(const Common& common, const SearchArgs& args) {
  std::ofstream file;
  std::ostream& os = open_out(common, file);
  SearchSpec spec = build_spec(args);
  SearchStats stats;
  if (spec.mode == SearchSpec::Mode::First) {
    std::optional<LoopTable> found = find_first(spec, &stats);
    if (common.format == "json") {
      json j;
      j["found"] = found.has_value();
      if (found) j["model"] = report_json(*found, property_report(*found));
      j["stats"] = stats_json(stats);
      os << j.dump(2) << "\n";
    } else {
      if (found) os << serialize(*found) << "\n";
      else os << "no model\n";
      print_stats_human(os, stats, spec.iso_reject);
    }
    return found ? kExitOk : kExitNotFound;
  }
  bool stream = spec.mode == SearchSpec::Mode::Stream;
  json models = json::array();
  stats = enumerate_loops(spec, [&](const LoopTable& L) {
    if (!stream) return true;
    if (common.format == "json") {
      std::vector<std::vector<int>> rows;
      for (int r = 0; r < L.order(); ++r) {
        std::vector<int> row;
        for (int c = 0; c < L.order(); ++c) row.push_back(L.mul(r, c));
        rows.push_back(std::move(row));
      }
      models.push_back(rows);
    } else {
      os << serialize(L) << "\n";
    }
    return true;
  });
  if (common.format == "json") {
    json j;
    if (stream) j["models"] = models;
    j["stats"] = stats_json(stats);
    os << j.dump(2) << "\n";
  } else {
    print_stats_human(os, stats, spec.iso_reject);
  }
  return kExitOk;
}

ElementSubset parse_by(const LoopTable& L, const std::string& by) {
  if (by == "nucleus") return nucleus(L);
  ElementSubset S(L.order());
  std::stringstream ss(by);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int x = std::stoi(tok);
    if (x < 0 || x >= L.order())
      throw parse_error("element out of range: " + tok);
    S.add(x);
  }
  S.add(0);
  return S;
}

int cmd_quotient(const Common& common, const std::string& path,
                 const std::string& by) {
  std::ofstream file;
  std::ostream& os = open_out(common, file);
  LoopTable L = load_loop(path);
  ElementSubset H = parse_by(L, by);
  Quotient Q = quotient(L, H);
  PropertyReport rep = property_report(Q.table);
  if (common.format == "json") {
    json j = report_json(Q.table, rep);
    j["subloop"] = H.elements();
    j["cosets"] = Q.cosets;
    os << j.dump(2) << "\n";
  } else {
    os << "quotient by " << elements_str(H.elements()) << ":\n"
       << serialize(Q.table);
    for (size_t i = 0; i < Q.cosets.size(); ++i)
      os << "  coset " << i << " = " << elements_str(Q.cosets[i]) << "\n";
    print_report_human(os, Q.table, rep);
  }
  return kExitOk;
}

int cmd_isotopes(const Common& common, const std::string& path) {
  std::ofstream file;
  std::ostream& os = open_out(common, file);
  LoopTable L = load_loop(path);
  IsotopeSweepReport rep = isotope_sweep(L);
  if (common.format == "json") {
    json j;
    j["base_moufang"] = rep.base_moufang;
    j["base_a_loop"] = rep.base_a_loop;
    j["total"] = rep.total;
    j["moufang_count"] = rep.moufang_count;
    j["a_loop_count"] = rep.a_loop_count;
    json ce = json::array();
    for (const auto& [ab, iso] : rep.counterexamples)
      ce.push_back(json{{"a", ab.first}, {"b", ab.second},
                        {"table", iso.cells()}});
    j["counterexamples"] = ce;
    os << j.dump(2) << "\n";
  } else {
    os << "base: moufang=" << (rep.base_moufang ? "yes" : "no")
       << " a_loop=" << (rep.base_a_loop ? "yes" : "no") << "\n"
       << "principal isotopes: " << rep.total << " total, "
       << rep.moufang_count << " Moufang, " << rep.a_loop_count
       << " A-loops\n";
    if (rep.base_moufang && rep.base_a_loop)
      os << "isotopes of a Moufang A-loop failing either property: "
         << rep.counterexamples.size() << " (report only, no verdict)\n";
  }
  return kExitOk;
}

int cmd_catalog(const Common& common, int max_order, int order_cap,
                int canon_cap) {
  std::ofstream file;
  std::ostream& os = open_out(common, file);
  json records = json::array();
  bool human = common.format != "json";
  for (int n = 1; n <= max_order; ++n) {
    SearchSpec spec;
    spec.order = n;
    spec.iso_reject = true;
    spec.order_cap = order_cap;
    spec.canon_cap = canon_cap;
    int index = 0;
    enumerate_loops(spec, [&](const LoopTable& L) {
      PropertyReport rep = property_report(L);
      if (human) {
        os << "# order " << n << " loop " << index << "\n" << serialize(L);
        os << "# ";
        for (const auto& [name, v] : rep.entries)
          os << name << "=" << (v.holds ? 1 : 0) << " ";
        os << "\n\n";
      } else {
        json j = report_json(L, rep);
        j["index"] = index;
        records.push_back(std::move(j));
      }
      ++index;
      return true;
    });
  }
  if (!human) os << records.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite loop algebra toolkit"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"human", "json"}));
  app.add_option("--out", common.out_path, "output file (default stdout)");
  app.add_option("--threads", common.threads, "worker thread bound")
      ->check(CLI::PositiveNumber);

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a table and report properties");
  check->add_option("file", check_path, "Cayley table file")->required();

  std::string verify_path, verify_suite = "default";
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("file", verify_path, "Cayley table file")->required();
  verify->add_option("--suite", verify_suite, "suite name (default)");

  SearchArgs sargs;
  auto* search = app.add_subcommand("search", "enumerate loops matching constraints");
  search->add_option("--order", sargs.order, "loop order");
  search->add_option("--require", sargs.require,
                     "structural property, builtin identity name, or identity");
  search->add_option("--forbid", sargs.forbid, "same shape as --require");
  search->add_option("--mode", sargs.mode, "first | count | stream")
      ->check(CLI::IsMember({"first", "count", "stream"}));
  search->add_flag("--iso-reject", sargs.iso_reject, "canonical-form dedup");
  search->add_option("--spec", sargs.spec_path, "search spec file");
  search->add_option("--order-cap", sargs.order_cap, "maximum searchable order");
  search->add_option("--canon-cap", sargs.canon_cap, "maximum canonicalizable order");

  std::string quot_path, quot_by = "nucleus";
  auto* quot = app.add_subcommand("quotient", "quotient by a normal subloop");
  quot->add_option("file", quot_path, "Cayley table file")->required();
  quot->add_option("--by", quot_by, "nucleus | comma-separated element list");

  std::string iso_path;
  auto* isot = app.add_subcommand("isotopes", "principal isotope sweep");
  isot->add_option("file", iso_path, "Cayley table file")->required();

  int cat_max = 5, cat_order_cap = 10, cat_canon_cap = 8;
  auto* cat = app.add_subcommand("catalog", "all loops up to an order, up to isomorphism");
  cat->add_option("--max-order", cat_max, "largest order to include");
  cat->add_option("--order-cap", cat_order_cap, "maximum searchable order");
  cat->add_option("--canon-cap", cat_canon_cap, "maximum canonicalizable order");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(common, check_path);
    if (*verify) return cmd_verify(common, verify_path, verify_suite);
    if (*search) return cmd_search(common, sargs);
    if (*quot) return cmd_quotient(common, quot_path, quot_by);
    if (*isot) return cmd_isotopes(common, iso_path);
    if (*cat) return cmd_catalog(common, cat_max, cat_order_cap, cat_canon_cap);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const loop_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
