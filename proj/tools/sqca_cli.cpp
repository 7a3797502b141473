#include "sqca/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace sqca;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  double tol_alg = -1;
  std::string out;
};

void emit(const json& j, const Globals& g) {
  const std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw Error(Errc::InvalidInput, "cannot write " + g.out);
    f << text << "\n";
  }
}

int fail(const std::string& code, const std::string& message, int status) {
  json err = {{"error", {{"code", code}, {"message", message}}}};
  std::cout << err.dump(2) << "\n";
  return status;
}

FiniteGroup group_arg(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    try {
      return group_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw Error(Errc::InvalidInput, e.what());
    }
  }
  return group_preset(spec);
}

int cmd_index(const std::string& path, long cell, const Globals& g) {
  ProblemFile p = load_problem(path);
  QcaRealization q = qca_from_json(p.qca, p.group);
  Eigen::Index n = cell >= 0 ? Eigen::Index(cell) : Eigen::Index(p.options.value("cell", long(default_cell(q))));
  QcaIndexReport rep = qca_index_report(q, n);
  std::vector<FactorizationReport> cells;
  for (auto c : factorization_cells(q)) cells.push_back(verify_factorization(q, c));
  json out = index_report_to_json(rep, cells);
  out["diagnostics"]["provenance"] = q.provenance;
  emit(out, g);
  return 0;
}

int cmd_verify(const std::string& suite, const Globals& g) {
  auto results = run_suite(suite, g.seed);
  json out = json::array();
  bool ok = true;
  for (const auto& r : results) {
    out.push_back(suite_to_json(r));
    ok = ok && r.ok();
  }
  emit({{"suite", suite}, {"seed", g.seed}, {"pass", ok}, {"results", out}}, g);
  return ok ? 0 : 1;
}

int cmd_cohomology(const std::string& spec, long m, const Globals& g) {
  FiniteGroup grp = group_arg(spec);
  auto classes = h2_enumerate(grp, m);
  json list = json::array();
  for (const auto& c : classes) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < c.canonical.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index k = 0; k < c.canonical.cols(); ++k) row.push_back(c.canonical(r, k));
      rows.push_back(row);
    }
    list.push_back({{"trivial", c.is_trivial()}, {"canonical", rows}});
  }
  emit({{"group", grp.name}, {"order", grp.order}, {"modulus", m}, {"count", classes.size()}, {"classes", list}}, g);
  return 0;
}

int cmd_decouple(const std::string& path, bool auto_stack, const Globals& g) {
  ProblemFile p = load_problem(path);
  QcaRealization q = qca_from_json(p.qca, p.group);
  emit(decoupling_to_json(decouple_trivial(q, auto_stack)), g);
  return 0;
}

int cmd_examples(const std::string& dir, const Globals& g) {
  json list = json::array();
  for (const auto& ex : example_problems()) {
    json entry = {{"name", ex.name}, {"problem", ex.problem}};
    if (!dir.empty()) {
      std::filesystem::create_directories(dir);
      const std::string file = (std::filesystem::path(dir) / (ex.name + ".json")).string();
      std::ofstream(file) << ex.problem.dump(2) << "\n";
      entry["file"] = file;
    }
    list.push_back(entry);
  }
  emit(list, g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable-equivalence index of even equivariant QCAs on finite windows"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for all randomized checks")->capture_default_str();
  app.add_option("--tol-alg", g.tol_alg, "algebraic tolerance");
  app.add_option("--out", g.out, "also write the JSON result to this file");

  std::string path, suite, group_spec, dir;
  long cell = -1, modulus = 2;
  bool auto_stack = false;
  auto* index = app.add_subcommand("index", "compute the index of the QCA in a problem file");
  index->add_option("file", path)->required();
  index->add_option("--cell", cell, "cell to evaluate (default: first admissible)");
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite)->required();
  auto* coh = app.add_subcommand("cohomology", "enumerate H^2(G, Z_m)");
  coh->add_option("group", group_spec, "preset name or JSON file")->required();
  coh->add_option("-m,--modulus", modulus)->capture_default_str();
  auto* dec = app.add_subcommand("decouple", "split a trivial-index QCA into two block layers");
  dec->add_option("file", path)->required();
  dec->add_flag("--auto-stack", auto_stack, "stack auxiliary chains when no isomorphism exists");
  auto* examples = app.add_subcommand("examples", "list the built-in example problems");
  examples->add_option("--write", dir, "write each problem file into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("UsageError", e.what(), 2);
  }

  if (g.tol_alg > 0) config().tol_alg = g.tol_alg;

  try {
    if (*index) return cmd_index(path, cell, g);
    if (*verify) return cmd_verify(suite, g);
    if (*coh) return cmd_cohomology(group_spec, modulus, g);
    if (*dec) return cmd_decouple(path, auto_stack, g);
    if (*examples) return cmd_examples(dir, g);
  } catch (const Error& e) {
    return fail(errc_name(e.code()), e.what(), e.is_input_error() ? 2 : 1);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), 1);
  }
  return 0;
}
