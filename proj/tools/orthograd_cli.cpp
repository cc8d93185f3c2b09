// orthograd: set gradings on so(2n) built from Steiner systems S(2,4,n),
// with exact verification and group-realizability analysis.
//
// Every command prints a deterministic report: human-readable text by
// default, a structured JSON document with --json.  Exit codes: 0 for a
// positive outcome, 1 for a negative verdict (Violation, NotFound,
// NotRealizable), 2 for bad input.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "orthograd/orthograd.hpp"
#include "orthograd/report.hpp"

namespace {

using namespace orthograd;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join_ints(const std::vector<Int>& v) {
  if (v.empty()) return "none";
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i];
  }
  return out.str();
}

std::string join_intvec(const IntVec& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  return out.str();
}

std::string histogram_text(const std::map<std::size_t, std::size_t>& h) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [dim, count] : h) {
    if (!first) out << ' ';
    out << dim << ':' << count;
    first = false;
  }
  return out.str();
}

std::vector<Int> nonzero_divisors(const std::vector<Int>& d) {
  std::vector<Int> out;
  for (const Int& x : d)
    if (x != 0) out.push_back(x);
  return out;
}

json components_json(const SetGrading& g, const GroupGrading* labels) {
  json out = json::array();
  for (std::size_t c = 0; c < g.component_count(); ++c) {
    json members = json::array();
    for (std::uint32_t idx : g.components()[c])
      members.push_back(g.basis().vector_name(idx));
    json comp{{"name", g.name(c)},
              {"dimension", g.components()[c].size()},
              {"members", std::move(members)}};
    if (labels) comp["label"] = ivec_json(labels->labels()[c]);
    out.push_back(std::move(comp));
  }
  return out;
}

// Report envelope shared by every command.
struct Emitter {
  bool json_mode = false;
  std::uint64_t seed = 0;
  std::string command;
  json parameters = json::object();
  json files = json::object();

  void add_file(const std::string& key, const std::string& path,
                const std::string& content) {
    files[key] = json{{"path", path}, {"fnv1a64", fnv1a64_hex(content)}};
  }

  int finish(json results, const std::string& verdict, int exit_code,
             const std::string& text) const {
    if (json_mode) {
      json params = parameters;
      params["seed"] = seed;
      json report{{"command", command},
                  {"inputs", json{{"parameters", std::move(params)}, {"files", files}}},
                  {"results", std::move(results)},
                  {"exit_code", exit_code}};
      if (!verdict.empty()) report["verdict"] = verdict;
      std::cout << report.dump(2) << '\n';
    } else {
      std::cout << text;
    }
    return exit_code;
  }

  int fail(const std::string& message) const {
    std::cerr << "error: " << message << '\n';
    if (json_mode) {
      json report{{"command", command}, {"error", message}, {"exit_code", 2}};
      std::cout << report.dump(2) << '\n';
    }
    return 2;
  }
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("demo-d13: " + what + " does not hold");
}

int cmd_demo_d13(Emitter& em) {
  const Design d = pg2_f3();
  expect(!validate(d), "built-in design validity");
  const SetGrading g = grading_from_design(d);
  expect(g.component_count() == 157, "157 components");
  const auto hist = g.dimension_histogram();
  expect(hist == std::map<std::size_t, std::size_t>{{2, 156}, {13, 1}},
         "histogram 2:156 13:1");
  expect(!verify_set_grading(g), "set grading verification");

  const Lattice e = e_from_grading(g);
  const Lattice q = root_lattice(d.n);
  const Lattice w = weight_lattice(d.n);
  const Int iqe = lattice_index(e, q).value();
  const Int iwe = lattice_index(e, w).value();
  expect(iqe == 2, "[Q:E] = 2");
  expect(iwe == 4, "[W:E] = 4");

  const IntMatrix a = IntMatrix::from_rows(design_subgroup_rows(d));
  const std::vector<Int> divisors = elementary_divisors(a);
  const std::vector<Int> nz = nonzero_divisors(divisors);
  expect(nz == std::vector<Int>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 4},
         "matrix divisors 1 x12, 4");
  const Lattice from_matrix =
      Lattice::from_rows(design_subgroup_rows(d), static_cast<std::size_t>(d.n));
  expect(from_matrix == e, "matrix rows span the grading subgroup");

  const std::vector<Int> diag = diag_invariants(g);
  expect(diag == std::vector<Int>{2, 2}, "diag invariants 2 2");

  const RealizabilityResult verdict = realizability_verdict(g);
  expect(!verdict.realizable, "NotRealizable verdict");
  expect(verdict.group.torsion == std::vector<Int>{2, 2}, "universal torsion 2 2");
  expect(verdict.group.free_rank == 0, "universal free rank 0");
  expect(verdict.collision.has_value(), "collision certificate");

  json results{{"design", design_json(d)},
               {"component_count", g.component_count()},
               {"histogram", histogram_json(hist)},
               {"set_grading_ok", true},
               {"matrix_divisors", ivec_json(divisors)},
               {"index_w_e", int_json(iwe)},
               {"index_q_e", int_json(iqe)},
               {"matrix_matches_subgroup", true},
               {"diag_invariants", ivec_json(diag)},
               {"universal", universal_group_json(verdict.group, false)},
               {"collision", collision_json(*verdict.collision, g)}};

  std::ostringstream text;
  text << "design: PG(2,3), 13 points, 13 blocks\n"
       << "design valid: yes\n"
       << "components: " << g.component_count() << '\n'
       << "histogram: " << histogram_text(hist) << '\n'
       << "set grading: ok\n"
       << "matrix divisors: " << join_ints(divisors) << '\n'
       << "index [W:E]: " << iwe << '\n'
       << "index [Q:E]: " << iqe << '\n'
       << "matrix lattice matches grading subgroup: yes\n"
       << "diag invariants: " << join_ints(diag) << '\n'
       << "universal torsion: " << join_ints(verdict.group.torsion) << '\n'
       << "universal free rank: " << verdict.group.free_rank << '\n'
       << "collision: " << g.name(verdict.collision->comp_a) << " vs "
       << g.name(verdict.collision->comp_b) << '\n'
       << "verdict: NotRealizable\n";
  return em.finish(std::move(results), "NotRealizable", 0, text.str());
}

int cmd_design_pg23(Emitter& em) {
  const Design d = pg2_f3();
  return em.finish(json{{"design", design_json(d)}}, "Ok", 0, write_design(d));
}

int cmd_design_validate(Emitter& em, const std::string& path) {
  const std::string content = slurp(path);
  em.add_file("design", path, content);
  const Design d = parse_design(content);
  em.parameters["n"] = d.n;
  const auto violation = validate(d);
  json results{{"n", d.n}, {"block_count", d.blocks.size()}};
  std::ostringstream text;
  text << "n: " << d.n << '\n' << "blocks: " << d.blocks.size() << '\n';
  if (violation) {
    results["violation"] = design_violation_json(*violation);
    text << "verdict: Violation\n" << "violation: " << violation->describe() << '\n';
    return em.finish(std::move(results), "Violation", 1, text.str());
  }
  text << "verdict: Ok\n";
  return em.finish(std::move(results), "Ok", 0, text.str());
}

std::array<int, 4> parse_block_arg(const std::string& arg) {
  std::string spaced = arg;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  std::array<int, 4> blk;
  for (std::size_t k = 0; k < 4; ++k)
    if (!(in >> blk[k]))
      throw input_error("--blocks: expected four integers, got '" + arg + "'");
  std::string extra;
  if (in >> extra)
    throw input_error("--blocks: expected four integers, got '" + arg + "'");
  return blk;
}

int cmd_design_develop(Emitter& em, int n, const std::vector<int>& group,
                       const std::vector<std::string>& block_args) {
  em.parameters["n"] = n;
  std::vector<int> factors = group.empty() ? std::vector<int>{n} : group;
  em.parameters["group"] = factors;
  long long prod = 1;
  for (int f : factors) prod *= f;
  if (prod != n)
    throw input_error("--group: factors must multiply to " + std::to_string(n));
  std::vector<std::array<int, 4>> base;
  json base_json = json::array();
  for (const std::string& arg : block_args) {
    base.push_back(parse_block_arg(arg));
    const auto& b = base.back();
    base_json.push_back(json{b[0], b[1], b[2], b[3]});
  }
  em.parameters["blocks"] = base_json;
  const AbelianGroup g(factors);
  const Design d = develop_difference_family(g, base);
  json results{{"n", n},
               {"family", family_json(DifferenceFamily{factors, base})},
               {"design", design_json(d)}};
  return em.finish(std::move(results), "Ok", 0, write_design(d));
}

int cmd_design_search(Emitter& em, int n) {
  em.parameters["n"] = n;
  const auto family = search_base_blocks(n);
  if (!family) {
    std::ostringstream text;
    text << "n: " << n << '\n' << "verdict: NotFound\n";
    return em.finish(json{{"n", n}}, "NotFound", 1, text.str());
  }
  const Design d = develop_difference_family(*family);
  json results{{"n", n},
               {"family", family_json(*family)},
               {"design", design_json(d)},
               {"block_count", d.blocks.size()}};
  std::ostringstream text;
  text << "n: " << n << '\n'
       << "group: " << AbelianGroup(family->group).name() << '\n';
  for (const auto& b : family->base_blocks)
    text << "base block: " << b[0] << ' ' << b[1] << ' ' << b[2] << ' ' << b[3] << '\n';
  text << "blocks: " << d.blocks.size() << '\n' << "verdict: Ok\n";
  return em.finish(std::move(results), "Ok", 0, text.str());
}

// Shared by grade: the subgroup path builds the coset grading of a subgroup
// 2Q <= E <= Q given by generator rows.
int cmd_grade(Emitter& em, const std::string& design_path,
              const std::string& subgroup_path, int n_flag, bool verify) {
  if (verify) em.parameters["verify"] = true;
  if (!design_path.empty()) {
    const std::string content = slurp(design_path);
    em.add_file("design", design_path, content);
    const Design d = parse_design(content);
    if (auto violation = validate(d))
      throw input_error("design does not validate: " + violation->describe());
    const SetGrading g = grading_from_design(d);
    em.parameters["n"] = d.n;
    const auto hist = g.dimension_histogram();
    json results{{"n", d.n},
                 {"source", "design"},
                 {"dimension", g.basis().dimension()},
                 {"component_count", g.component_count()},
                 {"histogram", histogram_json(hist)},
                 {"components", components_json(g, nullptr)}};
    std::ostringstream text;
    text << "n: " << d.n << '\n'
         << "dimension: " << g.basis().dimension() << '\n'
         << "components: " << g.component_count() << '\n'
         << "histogram: " << histogram_text(hist) << '\n';
    if (!verify) {
      text << "verdict: Ok\n";
      return em.finish(std::move(results), "Ok", 0, text.str());
    }
    const auto bad = verify_set_grading(g);
    if (bad) {
      results["counterexample"] = set_counterexample_json(*bad, g);
      text << "verify: violation\n"
           << "counterexample: " << bad->describe() << '\n'
           << "verdict: Violation\n";
      return em.finish(std::move(results), "Violation", 1, text.str());
    }
    results["verified"] = true;
    text << "verify: ok\n" << "verdict: Ok\n";
    return em.finish(std::move(results), "Ok", 0, text.str());
  }

  const std::string content = slurp(subgroup_path);
  em.add_file("subgroup", subgroup_path, content);
  const SubgroupInput s = parse_subgroup(content);
  if (n_flag != 0 && n_flag != s.n)
    throw input_error("--n " + std::to_string(n_flag) + " disagrees with the subgroup file rank " +
                      std::to_string(s.n));
  em.parameters["n"] = s.n;
  const Lattice e = subgroup_lattice(s);
  const GroupGrading gg =
      grading_from_subgroup(std::make_shared<AdaptedBasis>(s.n), e);
  const SetGrading& g = gg.grading();
  const auto hist = g.dimension_histogram();
  json results{{"n", s.n},
               {"source", "subgroup"},
               {"dimension", g.basis().dimension()},
               {"component_count", g.component_count()},
               {"histogram", histogram_json(hist)},
               {"moduli", ivec_json(gg.moduli())},
               {"components", components_json(g, &gg)}};
  std::ostringstream text;
  text << "n: " << s.n << '\n'
       << "dimension: " << g.basis().dimension() << '\n'
       << "components: " << g.component_count() << '\n'
       << "histogram: " << histogram_text(hist) << '\n'
       << "moduli: " << join_ints(gg.moduli()) << '\n';
  for (std::size_t c = 0; c < g.component_count(); ++c)
    text << "component " << gg.label_string(c) << ": " << g.name(c) << " dim "
         << g.components()[c].size() << '\n';
  if (!verify) {
    text << "verdict: Ok\n";
    return em.finish(std::move(results), "Ok", 0, text.str());
  }
  const auto bad = verify_group_grading(gg);
  if (bad) {
    results["counterexample"] = group_counterexample_json(*bad);
    text << "verify: violation\n"
         << "counterexample: " << bad->describe() << '\n'
         << "verdict: Violation\n";
    return em.finish(std::move(results), "Violation", 1, text.str());
  }
  results["verified"] = true;
  text << "verify: ok\n" << "verdict: Ok\n";
  return em.finish(std::move(results), "Ok", 0, text.str());
}

int cmd_nongroup(Emitter& em, const std::string& design_path) {
  const std::string content = slurp(design_path);
  em.add_file("design", design_path, content);
  const Design d = parse_design(content);
  if (auto violation = validate(d))
    throw input_error("design does not validate: " + violation->describe());
  em.parameters["n"] = d.n;
  const SetGrading g = grading_from_design(d);
  const std::vector<Int> diag = diag_invariants(g);
  const RealizabilityResult r = realizability_verdict(g);

  json results{{"n", d.n},
               {"component_count", g.component_count()},
               {"histogram", histogram_json(g.dimension_histogram())},
               {"diag_invariants", ivec_json(diag)},
               {"free_rank", r.group.free_rank},
               {"invariant_factors", ivec_json(r.group.torsion)}};
  std::ostringstream text;
  text << "n: " << d.n << '\n'
       << "components: " << g.component_count() << '\n'
       << "diag invariants: " << join_ints(diag) << '\n'
       << "invariant factors: " << join_ints(r.group.torsion) << '\n'
       << "free rank: " << r.group.free_rank << '\n';
  if (!r.realizable) {
    results["certificate"] = collision_json(*r.collision, g);
    text << "verdict: NotRealizable\n"
         << "collision: " << g.name(r.collision->comp_a) << " vs "
         << g.name(r.collision->comp_b) << " at image ("
         << join_intvec(r.collision->image) << ")\n";
    return em.finish(std::move(results), "NotRealizable", 1, text.str());
  }
  json labels = json::array();
  for (std::size_t c = 0; c < g.component_count(); ++c)
    labels.push_back(json{{"component", g.name(c)},
                          {"label", ivec_json(r.induced->labels()[c])}});
  results["induced_labels"] = std::move(labels);
  results["induced_moduli"] = ivec_json(r.induced->moduli());
  text << "verdict: Realizable\n"
       << "induced moduli: " << join_ints(r.induced->moduli()) << '\n';
  for (std::size_t c = 0; c < g.component_count(); ++c)
    text << "label " << g.name(c) << ": " << r.induced->label_string(c) << '\n';
  return em.finish(std::move(results), "Realizable", 0, text.str());
}

int cmd_pure(Emitter& em, const std::string& subgroup_path, int n_flag) {
  const std::string content = slurp(subgroup_path);
  em.add_file("subgroup", subgroup_path, content);
  const SubgroupInput s = parse_subgroup(content);
  if (n_flag != 0 && n_flag != s.n)
    throw input_error("--n " + std::to_string(n_flag) + " disagrees with the subgroup file rank " +
                      std::to_string(s.n));
  em.parameters["n"] = s.n;
  const std::size_t un = static_cast<std::size_t>(s.n);
  const Lattice e = subgroup_lattice(s);
  const Lattice ec = ecirc(s.n, e);
  const Lattice q = root_lattice(s.n);
  const Lattice twoq = doubled_root_lattice(s.n);
  const Int iqe = lattice_index(e, q).value();
  const Int iqec = lattice_index(ec, q).value();
  const GroupGrading gg = grading_from_subgroup(std::make_shared<AdaptedBasis>(s.n), e);
  const SetGrading& g = gg.grading();
  const std::vector<Int> diag = diag_invariants(g);
  const auto hist = g.dimension_histogram();

  json results{{"n", s.n},
               {"component_count", g.component_count()},
               {"histogram", histogram_json(hist)},
               {"moduli", ivec_json(gg.moduli())},
               {"components", components_json(g, &gg)},
               {"e", lattice_json(e)},
               {"ecirc", lattice_json(ec)},
               {"index_q_e", int_json(iqe)},
               {"index_q_ecirc", int_json(iqec)},
               {"ecirc_equals_e", ec == e},
               {"ecirc_equals_2q", ec == twoq},
               {"diag_invariants", ivec_json(diag)}};
  std::ostringstream text;
  text << "n: " << s.n << '\n'
       << "components: " << g.component_count() << '\n'
       << "histogram: " << histogram_text(hist) << '\n'
       << "moduli: " << join_ints(gg.moduli()) << '\n'
       << "index [Q:E]: " << iqe << '\n'
       << "index [Q:Ecirc]: " << iqec << '\n';
  for (std::size_t i = 0; i < ec.rank(); ++i) {
    text << "ecirc row:";
    for (std::size_t j = 0; j < un; ++j) text << ' ' << ec.basis()(i, j);
    text << '\n';
  }
  text << "ecirc equals E: " << (ec == e ? "yes" : "no") << '\n'
       << "ecirc equals 2Q: " << (ec == twoq ? "yes" : "no") << '\n'
       << "diag invariants: " << join_ints(diag) << '\n'
       << "verdict: Ok\n";
  return em.finish(std::move(results), "Ok", 0, text.str());
}

int cmd_snf(Emitter& em, const std::string& path, bool transforms) {
  const std::string content = slurp(path);
  em.add_file("matrix", path, content);
  const IntMatrix a = parse_matrix(content);
  const SmithDecomposition s = smith_normal_form(a);
  const std::vector<Int> divisors = s.diagonal();
  json results{{"rows", a.rows()}, {"cols", a.cols()}, {"divisors", ivec_json(divisors)}};
  std::ostringstream text;
  text << "rows: " << a.rows() << '\n'
       << "cols: " << a.cols() << '\n'
       << "divisors: " << join_ints(divisors) << '\n';
  if (transforms) {
    em.parameters["transforms"] = true;
    results["u"] = matrix_json(s.u);
    results["v"] = matrix_json(s.v);
    text << "U:\n" << write_matrix(s.u) << "V:\n" << write_matrix(s.v);
  }
  return em.finish(std::move(results), "Ok", 0, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set gradings on so(2n) from Steiner systems S(2,4,n)"};
  app.require_subcommand(1);
  Emitter em;
  app.add_flag("--json", em.json_mode, "emit a structured JSON report");
  app.add_option("--seed", em.seed,
                 "echoed into reports; every search is deterministic")
      ->capture_default_str();

  auto* demo = app.add_subcommand(
      "demo-d13", "full pipeline on PG(2,3): grading, verification, verdict");

  auto* design = app.add_subcommand("design", "construct or check S(2,4,n) designs");
  design->require_subcommand(1);
  auto* pg23 = design->add_subcommand("pg23", "print the built-in S(2,4,13)");
  auto* validate_cmd = design->add_subcommand("validate", "check a design file");
  std::string validate_path;
  validate_cmd->add_option("file", validate_path, "design file")->required();
  auto* develop = design->add_subcommand(
      "develop", "develop difference-family base blocks into a design");
  int develop_n = 0;
  std::vector<int> develop_group;
  std::vector<std::string> develop_blocks;
  develop->add_option("--n", develop_n, "number of points")->required();
  develop->add_option("--group", develop_group,
                      "cyclic factor orders of the difference group (default n)")
      ->delimiter(',');
  develop->add_option("--blocks", develop_blocks,
                      "base block as four comma-separated group elements (repeatable)")
      ->required();
  auto* search = design->add_subcommand(
      "search", "find the first difference family for n = 1 (mod 12)");
  int search_n = 0;
  search->add_option("--n", search_n, "number of points")->required();

  auto* grade = app.add_subcommand(
      "grade", "build the grading from a design or a subgroup 2Q <= E <= Q");
  std::string grade_design, grade_subgroup;
  int grade_n = 0;
  bool grade_verify = false;
  auto* gd = grade->add_option("--design", grade_design, "design file");
  auto* gs = grade->add_option("--subgroup", grade_subgroup, "subgroup file");
  gd->excludes(gs);
  gs->excludes(gd);
  grade->add_option("--n", grade_n, "rank cross-check for --subgroup");
  grade->add_flag("--verify", grade_verify, "verify the grading bracket by bracket");

  auto* nongroup = app.add_subcommand(
      "nongroup", "decide whether the design grading is a group grading");
  std::string nongroup_design;
  nongroup->add_option("--design", nongroup_design, "design file")->required();

  auto* pure = app.add_subcommand(
      "pure", "coset grading of a subgroup: components, Ecirc, diag invariants");
  std::string pure_subgroup;
  int pure_n = 0;
  pure->add_option("--subgroup", pure_subgroup, "subgroup file")->required();
  pure->add_option("--n", pure_n, "rank cross-check");

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file");
  std::string snf_path;
  bool snf_transforms = false;
  snf->add_option("file", snf_path, "matrix file")->required();
  snf->add_flag("--transforms", snf_transforms, "include the unimodular factors U, V");

  // let --json / --seed appear after the subcommand as well
  for (CLI::App* sub : {demo, design, pg23, validate_cmd, develop, search, grade,
                        nongroup, pure, snf})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (demo->parsed()) em.command = "demo-d13";
  else if (pg23->parsed()) em.command = "design pg23";
  else if (validate_cmd->parsed()) em.command = "design validate";
  else if (develop->parsed()) em.command = "design develop";
  else if (search->parsed()) em.command = "design search";
  else if (grade->parsed()) em.command = "grade";
  else if (nongroup->parsed()) em.command = "nongroup";
  else if (pure->parsed()) em.command = "pure";
  else em.command = "snf";

  try {
    if (demo->parsed()) return cmd_demo_d13(em);
    if (pg23->parsed()) return cmd_design_pg23(em);
    if (validate_cmd->parsed()) return cmd_design_validate(em, validate_path);
    if (develop->parsed())
      return cmd_design_develop(em, develop_n, develop_group, develop_blocks);
    if (search->parsed()) return cmd_design_search(em, search_n);
    if (grade->parsed()) {
      if (grade_design.empty() && grade_subgroup.empty())
        throw input_error("grade: pass --design or --subgroup");
      return cmd_grade(em, grade_design, grade_subgroup, grade_n, grade_verify);
    }
    if (nongroup->parsed()) return cmd_nongroup(em, nongroup_design);
    if (pure->parsed()) return cmd_pure(em, pure_subgroup, pure_n);
    return cmd_snf(em, snf_path, snf_transforms);
  } catch (const std::exception& e) {
    return em.fail(e.what());
  }
}
