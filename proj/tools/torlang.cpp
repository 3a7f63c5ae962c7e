#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torlang/io.hpp"

using namespace torlang;
using io::json;

namespace {

struct Check {
  std::string name;
  std::string status;  // pass | fail | hypothesis-failed | skipped
  std::vector<std::pair<std::string, Vec>> groups;
  std::vector<std::string> diagnostics;
};

struct Report {
  std::vector<std::string> command;
  std::vector<Check> checks;

  int exit_code() const {
    bool fail = false, hyp = false;
    for (const auto& c : checks) {
      fail |= c.status == "fail";
      hyp |= c.status == "hypothesis-failed";
    }
    return fail ? 1 : hyp ? 3 : 0;
  }

  std::string verdict() const {
    switch (exit_code()) {
      case 0: return "pass";
      case 1: return "fail";
      default: return "hypothesis-failed";
    }
  }
};

std::string status_of(bool ok) { return ok ? "pass" : "fail"; }

json report_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json groups = json::object();
    for (const auto& [label, inv] : c.groups) groups[label] = io::vec_to_json(inv);
    checks.push_back({{"name", c.name}, {"status", c.status}, {"groups", groups}, {"diagnostics", c.diagnostics}});
  }
  return {{"command", r.command}, {"checks", checks}, {"status", r.verdict()}, {"exit_code", r.exit_code()}};
}

void print_text(const Report& r, std::ostream& out) {
  out << "command:";
  for (const auto& a : r.command) out << ' ' << a;
  out << '\n';
  for (const auto& c : r.checks) {
    out << '[' << c.status << "] " << c.name << '\n';
    for (const auto& [label, inv] : c.groups) out << "  " << label << " = " << format_invariants(inv) << '\n';
    for (const auto& d : c.diagnostics) out << "  " << d << '\n';
  }
  out << "result: " << r.verdict() << '\n';
}

std::string labels(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  long max_order = 4096;
};

// Counts 1-cocycles and 1-coboundaries G -> M by enumeration.
std::optional<Int> brute_h1_order(const GModule& m, long bound) {
  const FgAbelianGroup& M = m.module();
  const int g = m.group().order();
  if (!M.is_finite()) return std::nullopt;
  Int space = 1;
  for (int i = 1; i < g; ++i) {
    space *= M.order();
    if (space > bound) return std::nullopt;
  }
  std::vector<Vec> elems = M.elements();
  std::vector<std::size_t> idx(static_cast<std::size_t>(g - 1), 0);
  std::size_t z1 = 0;
  std::set<std::vector<Vec>> cob;
  for (const auto& a : elems) {
    std::vector<Vec> f;
    for (int x = 0; x < g; ++x) f.push_back(M.to_canonical(sub_vec(m.act(x, a), a)));
    cob.insert(f);
  }
  while (true) {
    auto f = [&](int x) { return x == 0 ? zero_vec(M.generator_count()) : elems[idx[static_cast<std::size_t>(x - 1)]]; };
    bool ok = true;
    for (int x = 0; x < g && ok; ++x)
      for (int y = 0; y < g && ok; ++y)
        ok = M.equal(f(m.group().mul(x, y)), add_vec(f(x), m.act(x, f(y))));
    z1 += ok;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return Int(static_cast<unsigned long>(z1)) / Int(static_cast<unsigned long>(cob.size()));
}

Report cmd_cohomology(const std::string& file, int degree, bool tate, const Options& o) {
  GModule m = io::parse_gmodule(io::read_file(file));
  CohomologyGroup h = tate ? tate_cohomology(m, degree) : cohomology(m, degree, std::max(3, degree));
  Report r;
  std::string label = std::string(tate ? "Hhat^" : "H^") + std::to_string(degree);
  r.checks.push_back({"cohomology", "pass", {{label, h.group().invariants()}}, {}});

  Check rt{"lift-classify-roundtrip", "pass", {}, {"seed " + std::to_string(o.seed)}};
  std::mt19937_64 rng(o.seed);
  const FgAbelianGroup& G = h.group();
  if (h.degree() == -2) {
    rt.status = "skipped";
    rt.diagnostics.push_back("degree -2 classes are group elements, not cochains");
  }
  for (int trial = 0; trial < 32 && rt.status == "pass"; ++trial) {
    Vec c(G.canonical_count());
    for (std::size_t i = 0; i < c.size(); ++i) {
      Int d = G.invariants()[i] == 0 ? Int(64) : G.invariants()[i];
      c[i] = Int(static_cast<unsigned long>(rng() % d.get_ui())) - (G.invariants()[i] == 0 ? 32 : 0);
    }
    auto back = h.classify(h.lift(c));
    if (!back || !G.equal(G.from_canonical(*back), G.from_canonical(c))) {
      rt.status = "fail";
      rt.diagnostics.push_back("class " + vec_string(c) + " does not survive lift/classify");
      break;
    }
  }
  r.checks.push_back(rt);

  Check br{"enumeration-oracle", "skipped", {}, {}};
  if (degree == 1) {
    if (auto n = brute_h1_order(m, o.max_order)) {
      br.status = status_of(*n == G.order() && G.is_finite());
      br.diagnostics.push_back("|Z^1/B^1| = " + n->get_str());
    } else {
      br.diagnostics.push_back("cochain space exceeds --max-order or module is infinite");
    }
  } else {
    br.diagnostics.push_back("enumeration is only run in degree 1");
  }
  r.checks.push_back(br);
  return r;
}

Report cmd_class_formation(const std::string& file) {
  ClassFormationDatum f = io::parse_formation(io::read_file(file));
  Report r;
  for (const auto& s : f.report.subgroups) {
    Check c{"subgroup " + labels(s.members), status_of(s.pass()), {{"H^1", s.h1_invariants}, {"H^2", s.h2_invariants}}, {}};
    if (!s.h1_trivial) c.diagnostics.push_back("H^1 is not trivial");
    if (!s.h2_cyclic_of_order) c.diagnostics.push_back("H^2 is not cyclic of order |H|");
    if (!s.restriction_generates) c.diagnostics.push_back("restricted class does not generate H^2");
    r.checks.push_back(c);
  }
  return r;
}

Report cmd_pi1(const std::string& torus, const std::string& formation) {
  TorusDatum t = io::parse_torus(io::read_file(torus));
  ClassFormationDatum f = io::parse_formation(io::read_file(formation));
  Pi1Model p = pi1_model(t, f);
  Check c{"pi1", "pass", {{"pi1", p.group().invariants()}, {"X", t.cochar.module().invariants()}}, {}};
  c.diagnostics.push_back(p.frobenius ? "Frobenius acts on pi1" : "no Frobenius on pi1");
  return {{}, {c}};
}

Report cmd_kottwitz(const std::string& torus, std::optional<long> modulus) {
  TorusDatum t = io::parse_torus(io::read_file(torus));
  KottwitzTarget k = kottwitz_target(t);
  Report r;
  r.checks.push_back({"kottwitz-target", "pass", {{"X_Gamma", k.coinvariants.group.invariants()}, {"target", k.target().invariants()}}, {}});
  if (modulus) {
    DualSequenceReport d = kottwitz_dual_sequence(t, *modulus);
    Check c{"dual-sequence-exact", status_of(d.exactness.exact),
            {{"T_O", d.t_o.invariants()}, {"Y", d.y.invariants()}, {"T_K", d.t_k.invariants()},
             {"Hom(Y,Z/n)", d.dual_y.group().invariants()}, {"Hom(T_K,Z/n)", d.dual_k.group().invariants()},
             {"Hom(T_O,Z/n)", d.dual_o.group().invariants()}},
            {}};
    if (!d.exactness.exact) c.diagnostics.push_back(d.exactness.diagnostic);
    r.checks.push_back(c);
  }
  return r;
}

Report cmd_correspondence(const std::string& torus, const std::string& formation, long n) {
  TorusDatum t = io::parse_torus(io::read_file(torus));
  ClassFormationDatum f = io::parse_formation(io::read_file(formation));
  Report r;
  try {
    Correspondence c = correspondence_phi(t, f, n);
    r.checks.push_back({"phi-bijective", status_of(is_isomorphism(c.phi)),
                        {{"Hom(pi1,Z/n)", c.dual.group().invariants()}, {"H^1", c.h1.group().invariants()}}, {}});
    r.checks.push_back({"phi-coinvariant", status_of(c.coinvariant), {}, {}});
    r.checks.push_back({"phi-additive", status_of(c.additive), {}, {}});
  } catch (const HypothesisFailed& e) {
    r.checks.push_back({"phi-bijective", "hypothesis-failed", {{"lhs", e.lhs().invariants()}, {"rhs", e.rhs().invariants()}}, {e.what()}});
  }
  return r;
}

Report cmd_verify_diagram(const std::string& torus, const std::string& formation, long n) {
  TorusDatum t = io::parse_torus(io::read_file(torus));
  ClassFormationDatum f = io::parse_formation(io::read_file(formation));
  DiagramReport d = main_diagram_check(t, f, n);
  Report r;
  for (const auto& c : d.cells) {
    Check k{c.name, c.status, {}, {}};
    if (!c.detail.empty()) k.diagnostics.push_back(c.detail);
    r.checks.push_back(k);
  }
  return r;
}

Report cmd_sheaf_function(const std::string& file, long level, long m, const Options& o) {
  FrobeniusModule p = io::parse_frobmodule(io::read_file(file));
  if (level < 1) throw Error("bad-level", "level must be at least 1");
  if (m < 2) throw Error("bad-modulus", "modulus must be at least 2");
  Report r;
  GroupWithMap l1 = level_points(p, 1), ln = level_points(p, level);
  r.checks.push_back({"level-points", "pass", {{"level_1", l1.group.invariants()}, {"level_n", ln.group.invariants()}}, {}});
  DualGroup dn(ln.group, m);
  if (dn.group().order() > o.max_order) {
    r.checks.push_back({"dual-norm", "skipped", {}, {"character group exceeds --max-order"}});
    r.checks.push_back({"sheaf-function-diagram", "skipped", {}, {"character group exceeds --max-order"}});
    return r;
  }
  DualNormReport d = dual_norm_check(p, level, m);
  Check c{"dual-norm", status_of(d.pass()), {{"Hom(level_1,Z/m)", d.level1_dual.invariants()}, {"fixed characters", d.fixed_dual.invariants()}}, {}};
  if (!d.lands_in_fixed) c.diagnostics.push_back("image is not Frobenius-fixed");
  if (!d.injective) c.diagnostics.push_back("dual norm is not injective");
  if (d.level1_count != d.fixed_count)
    c.diagnostics.push_back("counts differ: " + std::to_string(d.level1_count) + " vs " + std::to_string(d.fixed_count));
  r.checks.push_back(c);
  for (const auto& cell : sheaf_function_diagram(p, level, m).cells) r.checks.push_back({cell.name, status_of(cell.pass), {}, {}});
  return r;
}

Report cmd_depth(const std::string& base, const std::string& filtration, long m, long level, const Options& o) {
  FrobeniusModule p = io::parse_frobmodule(io::read_file(base));
  FiltrationDatum f = io::parse_filtration(io::read_file(filtration), p);
  if (level < 1) throw Error("bad-level", "level must be at least 1");
  if (m < 2) throw Error("bad-modulus", "modulus must be at least 2");
  Report r;
  DualGroup dn(level_points(p, level).group, m);
  if (dn.group().order() > o.max_order) {
    r.checks.push_back({"depth-preservation", "skipped", {}, {"character group exceeds --max-order"}});
    return r;
  }
  DepthReport d = depth_preservation_check(p, f, level, m);
  Check c{"depth-preservation", status_of(d.pass()), {{"characters", dn.group().invariants()}}, {}};
  c.diagnostics.push_back(std::to_string(d.characters) + " characters, " + std::to_string(d.mismatches) + " mismatches");
  r.checks.push_back(c);
  Check listing{"depth-listing", "pass", {}, {}};
  DualGroup dp(p.group(), m);
  if (dp.group().order() > o.max_order) {
    listing.status = "skipped";
    listing.diagnostics.push_back("character group exceeds --max-order");
  } else {
    for (const auto& chi : dp.characters()) {
      Vec vals = dp.values_on_generators(chi);
      auto dep = depth(vals, m, f);
      listing.diagnostics.push_back("chi" + vec_string(vals) + " depth " + (dep ? std::to_string(*dep) : "inf"));
    }
  }
  r.checks.push_back(listing);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-level verifier for the cohomology of tori"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Emit a machine-readable report");
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--max-order", o.max_order, "Bound for brute-force enumeration")->check(CLI::PositiveNumber);

  std::string file, file2;
  int degree = 0;
  bool tate = false;
  long modulus = 0, level = 1;
  std::optional<long> kottwitz_modulus;

  auto* coh = app.add_subcommand("cohomology", "Group cohomology of a G-module");
  coh->add_option("file", file, "gmodule datum")->required();
  coh->add_option("--degree", degree, "Degree")->required();
  coh->add_flag("--tate", tate, "Tate cohomology");

  auto* cf = app.add_subcommand("class-formation", "Class-formation axioms for every subgroup");
  cf->add_option("file", file, "formation datum")->required();

  auto* pi1 = app.add_subcommand("pi1", "The pi1 model of a torus over a formation");
  pi1->add_option("torus", file, "torus datum")->required();
  pi1->add_option("formation", file2, "formation datum")->required();

  auto* kot = app.add_subcommand("kottwitz", "Kottwitz target and dual sequence");
  kot->add_option("torus", file, "torus datum")->required();
  kot->add_option("--modulus", kottwitz_modulus, "Modulus n for the dual sequence");

  auto* corr = app.add_subcommand("correspondence", "Finite-level correspondence phi");
  corr->add_option("torus", file, "torus datum")->required();
  corr->add_option("formation", file2, "formation datum")->required();
  corr->add_option("--modulus", modulus, "Modulus n")->required();

  auto* diag = app.add_subcommand("verify-diagram", "Rows and squares of the main diagram");
  diag->add_option("torus", file, "torus datum")->required();
  diag->add_option("formation", file2, "formation datum")->required();
  diag->add_option("--modulus", modulus, "Modulus n")->required();

  auto* sh = app.add_subcommand("sheaf-function", "Dual norm and sheaf-function diagram");
  sh->add_option("frobmodule", file, "frobmodule datum")->required();
  sh->add_option("--level", level, "Level n")->required();
  sh->add_option("--modulus", modulus, "Character modulus m")->required();

  auto* dep = app.add_subcommand("depth", "Depth preservation along a filtration");
  dep->add_option("frobmodule", file, "frobmodule datum")->required();
  dep->add_option("filtration", file2, "filtration datum")->required();
  dep->add_option("--modulus", modulus, "Character modulus m")->required();
  dep->add_option("--level", level, "Level n (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report r;
  try {
    if (coh->parsed()) r = cmd_cohomology(file, degree, tate, o);
    else if (cf->parsed()) r = cmd_class_formation(file);
    else if (pi1->parsed()) r = cmd_pi1(file, file2);
    else if (kot->parsed()) r = cmd_kottwitz(file, kottwitz_modulus);
    else if (corr->parsed()) r = cmd_correspondence(file, file2, modulus);
    else if (diag->parsed()) r = cmd_verify_diagram(file, file2, modulus);
    else if (sh->parsed()) r = cmd_sheaf_function(file, level, modulus, o);
    else r = cmd_depth(file, file2, modulus, level, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  r.command.assign(argv + 1, argv + argc);
  if (o.json) std::cout << io::pretty(report_json(r));
  else print_text(r, std::cout);
  return r.exit_code();
}
