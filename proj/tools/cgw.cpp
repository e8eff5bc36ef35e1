// cgw: build and verify witness pairs, compute class data.
//
// Exit codes: 0 ok, 1 verification failure or bad input, 2 undecided
// (budget), 3 no witness construction for the requested group.
#include "cgw/acceptance.hpp"
#include "cgw/class_data.hpp"
#include "cgw/witnesses.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cgw;
using nlohmann::json;

constexpr int kOk = 0, kFail = 1, kUnknown = 2, kUnsupported = 3;

struct Common {
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::string out;
};

SearchOptions options(const Common& c) {
  SearchOptions o = default_search_options();
  if (c.budget) o.budget = *c.budget;
  if (c.seed) o.seed = *c.seed;
  if (o.budget == 0) throw std::invalid_argument("budget must be positive");
  return o;
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::uint64_t int_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

FieldElement parse_element(FieldSpec f, const std::string& s) {
  if (s.find('[') != std::string::npos) return FieldElement::parse(f, s);
  return FieldElement::from_int(f, std::stoll(s));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// witness ------------------------------------------------------------------

struct WitnessArgs {
  std::string family;
  int n = 0;
  std::uint32_t p = 0;
  int k = 1;
  std::uint64_t base_q = 0;
  std::string a, b;
  bool exhaustive = false;
  bool stability = false;
};

int cmd_witness(const WitnessArgs& w, const Common& c) {
  const SearchOptions opts = options(c);
  const Family fam = parse_family(w.family);
  const FieldSpec f = make_field(w.p, w.k);
  WitnessParams prm;
  if (!w.a.empty()) prm.a = parse_element(f, w.a);
  if (!w.b.empty()) prm.b = parse_element(f, w.b);
  prm.base_q = w.base_q;

  WitnessPair pair;
  try {
    pair = construct_witness(fam, w.n, f, prm);
  } catch (const UnsupportedWitness& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    emit({{"error", "unsupported"}, {"message", e.what()}, {"seed", opts.seed}}, c.out);
    return kUnsupported;
  }

  pair.element = element_conjugate(pair, opts);
  pair.global = globally_conjugate(pair, opts);
  json report = to_json(pair);
  report["seed"] = opts.seed;
  report["budget"] = opts.budget;

  bool failed = pair.element->status == ElementStatus::Fails || pair.global->status == GlobalStatus::Found;
  bool unknown = pair.element->status == ElementStatus::Inconclusive || pair.global->status == GlobalStatus::Unknown;

  if (w.exhaustive) {
    json log;
    try {
      const auto group = generate(pair.phi1.target, opts.budget, opts.seed);
      log["group_order"] = group.size();
      const auto e = element_conjugate_by_enumeration(pair, group);
      std::optional<Matrix> conj;
      const auto g = global_by_enumeration(pair, group, &conj);
      log["element_conjugate"] = to_json(e);
      log["global"] = {{"outcome", to_string(g.outcome)}, {"work", g.work}, {"note", g.note}};
      if (conj) log["global"]["conjugator"] = to_json(*conj);
      failed |= e.status != ElementStatus::Verified || g.outcome == GlobalStatus::Found;
      std::cerr << "exhaustive: " << group.size() << " elements of " << pair.phi1.target.label() << " scanned\n";
    } catch (const BudgetExceeded& e) {
      log["error"] = e.what();
      unknown = true;
    }
    report["exhaustive"] = log;
  }
  if (w.stability) {
    const auto s = stability_check(pair, opts);
    report["stability"] = to_json(s);
    failed |= s.status == GlobalStatus::Found;
    unknown |= s.status == GlobalStatus::Unknown;
  }
  emit(report, c.out);

  std::cerr << pair.phi1.target.label() << ", source";
  for (auto m : pair.phi1.source.moduli) std::cerr << " " << m;
  std::cerr << "\n  element-conjugate: " << to_string(pair.element->status) << " (" << pair.element->note << ")\n"
            << "  global: " << to_string(pair.global->status) << " at " << pair.global->level << ", intertwiner dimension "
            << pair.global->dimension << "\n";
  for (const auto& p : pair.provenance) std::cerr << "  " << p << "\n";
  if (failed) return kFail;
  if (unknown) return kUnknown;
  return kOk;
}

// invariant ----------------------------------------------------------------

int cmd_invariant(const std::string& path, const std::string& kind_name, std::uint64_t base_q, const Common& c) {
  const Matrix m = parse_matrix(read_file(path));
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  if (det(m).is_zero()) throw std::invalid_argument("matrix is singular");
  ClassFunction cf = elementary_divisors(m);
  json report;
  const FieldSpec f = field_of(m);
  if (!kind_name.empty() && kind_name != "GL") {
    cf.kind = parse_group_kind(kind_name);
    if (cf.kind == GroupKind::Sp) {
      if (m.rows() % 2) throw std::invalid_argument("Sp needs an even matrix size");
      cf.n = static_cast<int>(m.rows() / 2);
    }
    if (cf.kind == GroupKind::U) {
      if (f.k() % 2) throw std::invalid_argument("U needs a field F_{q^2}");
      cf.base_q = base_q ? base_q : int_pow(f.p(), f.k() / 2);
    }
    const Validation v = validate_class_function(cf);
    report["kind"] = to_string(cf.kind);
    report["valid"] = v.valid;
    if (!v.valid) report["violated"] = v.violated;
    std::cerr << to_string(cf.kind) << " class data " << (v.valid ? "valid" : "invalid: " + v.violated) << "\n";
  }
  report["class_function"] = to_json(cf);
  emit(report, c.out);
  return kOk;
}

// classes ------------------------------------------------------------------

int cmd_classes(const std::string& kind_name, int n, std::uint32_t p, int k, std::uint64_t base_q, bool crosscheck,
                const Common& c) {
  const SearchOptions opts = options(c);
  const GroupKind kind = parse_group_kind(kind_name);
  const FieldSpec f = make_field(p, k);
  if (kind == GroupKind::U && base_q == 0) {
    if (k % 2) throw std::invalid_argument("U needs a field F_{q^2}");
    base_q = int_pow(p, k / 2);
  }
  std::vector<ClassFunction> fns;
  try {
    fns = enumerate_class_functions(kind, n, f, kind == GroupKind::U ? base_q : 0, opts.budget);
  } catch (const std::length_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    emit({{"error", "budget"}, {"message", e.what()}}, c.out);
    return kUnknown;
  }
  json report;
  report["kind"] = to_string(kind);
  report["n"] = n;
  report["field"] = f.to_string();
  report["count"] = fns.size();
  json list = json::array();
  for (const auto& cf : fns) list.push_back(to_json(cf));
  report["class_functions"] = list;
  std::cerr << fns.size() << " class functions for " << to_string(kind) << ", n = " << n << " over F_" << f.q() << "\n";
  if (kind == GroupKind::Sp || kind == GroupKind::O) {
    const std::string caveat =
        "these label classes over the algebraic closure; classes of the finite group refine them";
    report["note"] = caveat;
    std::cerr << "note: " << caveat << "\n";
  }
  int code = kOk;
  if (crosscheck) {
    if (kind != GroupKind::GL && kind != GroupKind::U)
      throw std::invalid_argument("--crosscheck supports GL and U only");
    const GroupSpec g = kind == GroupKind::GL ? make_group(Family::GL, n, f) : make_group(Family::U, n, f, base_q);
    try {
      const auto classes = conjugacy_classes(g, opts.budget, opts.seed);
      const bool ok = classes.sizes.size() == fns.size();
      report["crosscheck"] = {{"group", g.label()},
                              {"brute_force_classes", classes.sizes.size()},
                              {"verdict", ok ? "PASS" : "FAIL"}};
      std::cerr << "crosscheck " << g.label() << ": " << fns.size() << " vs " << classes.sizes.size() << " -> "
                << (ok ? "PASS" : "FAIL") << "\n";
      if (!ok) code = kFail;
    } catch (const BudgetExceeded& e) {
      report["crosscheck"] = {{"error", e.what()}};
      code = kUnknown;
    }
  }
  emit(report, c.out);
  return code;
}

// selftest -----------------------------------------------------------------

int cmd_selftest(const std::string& fault, const std::string& filter, const Common& c) {
  AcceptanceConfig cfg;
  cfg.opts = options(c);
  cfg.filter = filter;
  if (fault == "corrupt-form")
    cfg.corrupt_forms = true;
  else if (!fault.empty())
    throw std::invalid_argument("unknown fault: " + fault);
  const auto results = run_acceptance(cfg);
  for (const auto& r : results) std::cout << format_line(r) << "\n";
  return all_passed(results) ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witness pairs for classical groups over finite fields"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--budget", common.budget, "membership tests or solver nodes per decision (CGW_BUDGET)");
    s->add_option("--seed", common.seed, "seed for randomized steps (CGW_SEED)");
    s->add_option("--out", common.out, "write the JSON report here instead of stdout");
  };

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "construct a witness pair and run both deciders");
  witness->add_option("--family", wa.family, "GL, SL, U, Sp, Oodd, Oeven")->required();
  witness->add_option("--n", wa.n, "matrix size")->required();
  witness->add_option("--p", wa.p, "characteristic")->required();
  witness->add_option("--k", wa.k, "field degree");
  witness->add_option("--base-q", wa.base_q, "U: q with field F_{q^2}");
  witness->add_option("--a", wa.a, "first parameter, [c0,c1,...] or an integer");
  witness->add_option("--b", wa.b, "second parameter (GL)");
  witness->add_flag("--exhaustive", wa.exhaustive, "also scan every element of the target group");
  witness->add_flag("--stability", wa.stability, "re-run the global decider after one field extension");
  add_common(witness);

  std::string inv_path, inv_kind;
  std::uint64_t inv_base_q = 0;
  auto* invariant = app.add_subcommand("invariant", "GL class data of a matrix file");
  invariant->add_option("matrix", inv_path, "matrix in text format")->required();
  invariant->add_option("--kind", inv_kind, "GL, U, Sp or O: also validate for that group");
  invariant->add_option("--base-q", inv_base_q, "U: q with field F_{q^2}");
  add_common(invariant);

  std::string cl_kind;
  int cl_n = 0, cl_k = 1;
  std::uint32_t cl_p = 0;
  std::uint64_t cl_base_q = 0;
  bool cl_cross = false;
  auto* classes = app.add_subcommand("classes", "enumerate class functions");
  classes->add_option("--kind", cl_kind, "GL, U, Sp or O")->required();
  classes->add_option("--n", cl_n, "size (half the matrix size for Sp)")->required();
  classes->add_option("--p", cl_p, "characteristic")->required();
  classes->add_option("--k", cl_k, "field degree");
  classes->add_option("--base-q", cl_base_q, "U: q with field F_{q^2}");
  classes->add_flag("--crosscheck", cl_cross, "compare with brute-force classes (GL, U)");
  add_common(classes);

  std::string fault, filter;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--inject-fault", fault, "corrupt-form");
  selftest->add_option("--filter", filter, "only criteria whose id contains this");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFail;
  }

  try {
    if (*witness) return cmd_witness(wa, common);
    if (*invariant) return cmd_invariant(inv_path, inv_kind, inv_base_q, common);
    if (*classes) return cmd_classes(cl_kind, cl_n, cl_p, cl_k, cl_base_q, cl_cross, common);
    if (*selftest) return cmd_selftest(fault, filter, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}
