#include "sqca/suites.hpp"

#include "sqca/condexp.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>

namespace sqca {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Mat pauli(char c) {
  Mat m = Mat::Zero(2, 2);
  if (c == 'x') m << 0, 1, 1, 0;
  if (c == 'z') m << 1, 0, 0, -1;
  if (c == 'i') m = Mat::Identity(2, 2);
  return m;
}

AmbientSpace qubit_space() {
  Eigen::VectorXi g(2);
  g << 1, -1;
  return AmbientSpace(g);
}

GSystem with_trivial_action(const FiniteGroup& g, const GradedSubalgebra& b) {
  const Eigen::Index n = b.ambient.dim();
  return {g, b, std::vector<Mat>(std::size_t(g.order), Mat::Identity(n, n))};
}

class Collector {
 public:
  explicit Collector(SuiteResult& r) : r_(r) {}
  void add(std::string name, bool pass, std::string detail = {}) {
    r_.checks.push_back({std::move(name), pass, std::move(detail)});
  }
  // runs f, turning module errors into a failed check
  void guard(const std::string& name, const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  }

 private:
  SuiteResult& r_;
};

const std::vector<std::string> kGroups{"Z2", "Z2xZ2", "Z3"};

void group_laws(Collector& c, Rng&) {
  for (const auto& name : kGroups) {
    FiniteGroup g = group_preset(name);
    c.guard("group-laws " + name, [&] {
      std::vector<IndexTriple> ts;
      for (const auto& s : sample_gsystems(g)) ts.push_back(gsystem_index(s));
      const IndexTriple e = neutral_triple(g);
      bool unit = true, inv = true, comm = true, assoc = true;
      for (const auto& a : ts) {
        unit = unit && triple_mul(e, a) == a;
        inv = inv && triple_mul(a, triple_inv(a)) == e;
        for (const auto& b : ts) {
          comm = comm && triple_mul(a, b) == triple_mul(b, a);
          for (const auto& x : ts) assoc = assoc && triple_mul(triple_mul(a, b), x) == triple_mul(a, triple_mul(b, x));
        }
      }
      c.add("neutral element " + name, unit);
      c.add("inverses " + name, inv);
      c.add("commutativity " + name, comm);
      c.add("associativity " + name, assoc, std::to_string(ts.size()) + " triples");
      double worst = 0.0;
      bool witnessed = true;
      for (const auto& z : enumerate_z2_homs(g)) {
        Vec mu(g.order);
        for (int a = 0; a < g.order; ++a) mu(a) = z.values[std::size_t(a)] ? cplx(0, 1) : cplx(1, 0);
        Cocycle2 t = twist_class(g, z, z);
        worst = std::max(worst, (t.phases - coboundary(g, mu).phases).cwiseAbs().maxCoeff());
        witnessed = witnessed && cohomologous(g, t, trivial_cocycle(g)).has_value();
      }
      c.add("nu(zeta, zeta) = d(i^zeta) " + name, worst < 1e-12 && witnessed, "defect " + fmt(worst));
    });
  }
}

void stacking(Collector& c, Rng& rng) {
  int passed = 0, total = 0;
  std::string first_failure;
  for (int t = 0; t < 50; ++t) {
    FiniteGroup g = group_preset(kGroups[std::size_t(t) % kGroups.size()]);
    auto sys = sample_gsystems(g);
    std::uniform_int_distribution<std::size_t> pick(0, sys.size() - 1);
    GSystem a = sys[pick(rng)], b = sys[pick(rng)];
    a = conjugate_gsystem(a, random_even_unitary(a.algebra.ambient, rng));
    b = conjugate_gsystem(b, random_even_unitary(b.algebra.ambient, rng));
    ++total;
    try {
      IndexTriple want = triple_mul(gsystem_index(a), gsystem_index(b));
      IndexTriple got = gsystem_index(stack_gsystems(a, b));
      if (got == want) {
        ++passed;
      } else if (first_failure.empty()) {
        first_failure = g.name + ": " + got.str() + " vs " + want.str();
      }
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = e.what();
    }
  }
  c.add("stack index = product of indices", passed == total,
        std::to_string(passed) + "/" + std::to_string(total) + (first_failure.empty() ? "" : "; " + first_failure));
}

std::vector<std::pair<std::string, QcaRealization>> overlap_presets() {
  std::vector<std::pair<std::string, QcaRealization>> out;
  out.emplace_back("shift-2", preset_shift(2, 8));
  out.emplace_back("shift-3", preset_shift(3, 8));
  out.emplace_back("left-shift-2", preset_shift(2, 8, true));
  out.emplace_back("majorana", preset_majorana_shift(8));
  FiniteGroup z2 = group_preset("Z2");
  out.emplace_back("zeta-example", preset_zeta_example(z2, {Mat::Identity(1, 1), Mat::Identity(1, 1)}, Z2Hom{{0, 1}}, 8));
  out.emplace_back("cocycle-example", preset_cocycle_example(group_preset("Z2xZ2"), pauli_rep(), 8));
  return out;
}

void overlap(Collector& c, Rng&) {
  for (const auto& [name, q] : overlap_presets()) {
    for (auto n : factorization_cells(q)) {
      const std::string tag = name + " cell " + std::to_string(n);
      c.guard(tag, [&] {
        FactorizationReport f = verify_factorization(q, n);
        bool dims = f.dim_c == f.dim_r_prev * f.dim_l && f.dim_b == f.dim_l * f.dim_r;
        std::string detail = "C=" + std::to_string(f.dim_c) + " B=" + std::to_string(f.dim_b) +
                             " L=" + std::to_string(f.dim_l) + " R=" + std::to_string(f.dim_r);
        for (const auto& msg : f.failures) detail += "; " + msg;
        c.add(tag, f.ok && dims, detail);
      });
    }
  }
}

void condexp(Collector& c, Rng& rng) {
  Eigen::VectorXi g3(3);
  g3 << 1, -1, 1;
  const Eigen::VectorXi q = qubit_space().grading;
  for (bool graded : {true, false}) {
    ChainEmbedding ch = graded ? ChainEmbedding{{q, g3, q}}
                               : ChainEmbedding{{Eigen::VectorXi::Ones(2), Eigen::VectorXi::Ones(3), Eigen::VectorXi::Ones(2)}};
    TracialFrame f(ch);
    const Eigen::Index n = f.ambient.dim();
    std::vector<std::vector<Eigen::Index>> regions{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    std::vector<RegionExpectation> ex;
    for (const auto& r : regions) ex.emplace_back(f, r);
    double trace = 0, grade = 0, tower = 0, contraction = 0, bimodule = 0;
    for (int t = 0; t < 100; ++t) {
      Mat x = random_complex(n, n, rng);
      std::size_t i = std::size_t(t) % regions.size(), j = std::size_t(t / 6) % regions.size();
      Mat e = ex[i](x);
      const auto& ai = ex[i].algebra();
      Mat b1 = ai.project(random_complex(n, n, rng)), b2 = ai.project(random_complex(n, n, rng));
      trace = std::max(trace, std::abs(f.ctrace(b1 * e * b2) - f.ctrace(b1 * x * b2)));
      grade = std::max(grade, (f.ambient.theta_conj(e) - ex[i](f.ambient.theta_conj(x))).norm());
      std::vector<Eigen::Index> meet;
      for (auto s : regions[i])
        if (std::count(regions[j].begin(), regions[j].end(), s)) meet.push_back(s);
      Mat em = cond_expect(x, meet, f);
      tower = std::max({tower, (ex[i](ex[j](x)) - em).norm(), (ex[j](ex[i](x)) - em).norm()});
      contraction = std::max(contraction, op_norm(e) - op_norm(x));
      bimodule = std::max(bimodule, (ex[i](b1 * x * b2) - b1 * e * b2).norm() /
                                        std::max(1.0, x.norm() * b1.norm() * b2.norm()));
    }
    const std::string w = graded ? " graded" : " ungraded";
    c.add("trace preservation" + w, trace < 1e-10, fmt(trace));
    c.add("grading commutes" + w, grade < 1e-10, fmt(grade));
    c.add("commuting squares" + w, tower < 1e-10, fmt(tower));
    c.add("contraction" + w, contraction < 1e-10, fmt(contraction));
    c.add("bimodule" + w, bimodule < 1e-10, fmt(bimodule));
  }
}

void nearincl(Collector& c, Rng& rng) {
  const AmbientSpace q = qubit_space();
  ChainEmbedding ch{{q.grading, q.grading}};
  const AmbientSpace amb = ch.ambient();
  GradedSubalgebra s0 = region_algebra(ch, {0}), s1 = region_algebra(ch, {1});
  Mat v = kron(pauli('z'), pauli('z'));
  for (double eps : {1e-3, 1e-2}) {
    const std::string tag = " eps=" + fmt(eps);
    c.guard("near inclusion" + tag, [&] {
      Mat h = parity_split(random_hermitian(4, rng), amb).first;
      h = 0.5 * (h + v * h * v);
      h /= op_norm(h);
      // ||Ad exp(i t h) - id|| <= 2t, so t = eps/2 keeps the instance eps-near
      PerturbedPair p = perturbed_pair(s0, h, eps / 2.0);
      c.add("instance constant" + tag, p.epsilon <= eps, "2||w-I|| " + fmt(p.epsilon));

      NearInclusionReport r = near_inclusion_report(p.a, s1, rng);
      for (const auto& b : r.bound_checks)
        c.add(b.tag + tag, b.pass && b.applicable, "observed " + fmt(b.observed) + " bound " + fmt(b.bound));

      Implementer imp = inner_implementer({{p.a, p.phi, p.epsilon}}, {v});
      c.add("implementer" + tag, imp.bound_applicable() && imp.distance <= imp.bound + 1e-6,
            "||u-I|| " + fmt(imp.distance) + " bound " + fmt(imp.bound));

      NearInclusionTheoremReport th = verify_near_inclusion_theorem(p, {v}, 20, rng);
      c.add("theorem precondition" + tag, th.precondition, "eps " + fmt(th.epsilon));
      for (const auto& b : th.bound_checks)
        c.add("theorem " + b.tag + tag, b.pass, "observed " + fmt(b.observed) + " bound " + fmt(b.bound));
    });
  }
}

using SuiteFn = void (*)(Collector&, Rng&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"group-laws", group_laws}, {"stacking", stacking}, {"overlap", overlap}, {"condexp", condexp}, {"nearincl", nearincl}};
  return r;
}

}  // namespace

bool SuiteResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  out.push_back("all");
  return out;
}

std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& [n, fn] : registry()) {
    if (name != "all" && name != n) continue;
    SuiteResult r;
    r.suite = n;
    r.seed = seed;
    Rng rng(seed);
    Collector c(r);
    fn(c, rng);
    out.push_back(std::move(r));
  }
  if (out.empty()) throw Error(Errc::UnknownSuite, name);
  return out;
}

json suite_to_json(const SuiteResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.ok()}, {"checks", checks}};
}

Mat random_even_unitary(const AmbientSpace& amb, Rng& rng) {
  const Eigen::Index n = amb.dim();
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index i = 0; i < n; ++i) (amb.grading(i) > 0 ? plus : minus).push_back(i);
  Mat u = Mat::Zero(n, n);
  for (const auto* part : {&plus, &minus}) {
    const Eigen::Index k = Eigen::Index(part->size());
    if (k == 0) continue;
    Mat w = random_unitary(k, rng);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) u((*part)[std::size_t(i)], (*part)[std::size_t(j)]) = w(i, j);
  }
  return u;
}

GSystem conjugate_gsystem(const GSystem& s, const Mat& u) {
  GSystem out = s;
  for (auto& b : out.algebra.basis) b = u * b * u.adjoint();
  for (auto& v : out.action) v = u * v * u.adjoint();
  return out;
}

std::vector<Mat> pauli_rep() { return {pauli('i'), pauli('x'), pauli('z'), Mat(pauli('x') * pauli('z'))}; }

std::vector<GSystem> sample_gsystems(const FiniteGroup& g) {
  std::vector<GSystem> out;
  const AmbientSpace q = qubit_space();
  GradedSubalgebra k = close_algebra({pauli('x')}, q);
  out.push_back(with_trivial_action(g, full_algebra(q)));
  out.push_back(with_trivial_action(g, k));
  out.push_back(with_trivial_action(g, scalars(AmbientSpace::trivial(1))));
  Eigen::VectorXi g3(3);
  g3 << 1, -1, 1;
  out.push_back(with_trivial_action(g, full_algebra(AmbientSpace(g3))));
  for (const auto& z : enumerate_z2_homs(g)) {
    GSystem a{g, full_algebra(q), {}}, b{g, k, {}};
    for (int x = 0; x < g.order; ++x) {
      const bool odd = z.values[std::size_t(x)] != 0;
      a.action.push_back(odd ? pauli('x') : pauli('i'));
      b.action.push_back(odd ? pauli('z') : pauli('i'));
    }
    out.push_back(a);
    out.push_back(b);
  }
  if (g.order == 4 && g.name == "Z2xZ2") {
    out.push_back({g, full_algebra(q), pauli_rep()});
    out.push_back({g, full_algebra(AmbientSpace::trivial(2)), pauli_rep()});
  }
  if (g.order == 3) {
    GSystem r{g, full_algebra(AmbientSpace::trivial(3)), {}};
    for (int a = 0; a < 3; ++a) {
      Mat u = Mat::Zero(3, 3);
      for (int b = 0; b < 3; ++b) u(g.mul(a, b), b) = 1.0;
      r.action.push_back(u);
    }
    out.push_back(r);
  }
  return out;
}

std::vector<ExampleProblem> example_problems() {
  auto preset = [](json payload) { return json{{"realization", {{"type", "preset"}, {"payload", std::move(payload)}}}}; };
  auto problem = [](const std::string& group, json qca) {
    return json{{"version", 1}, {"group", group}, {"qca", std::move(qca)}};
  };
  json one = mat_to_json(Mat::Identity(1, 1));
  json paulis = json::array();
  for (const auto& m : pauli_rep()) paulis.push_back(mat_to_json(m));
  json z2_circuit = preset({{"name", "circuit"}, {"seed", 1}});
  z2_circuit["window"] = {{"site", {{"kind", "graded"}, {"grading", {1, -1}}}}, {"count", 10}};
  json identity = preset({{"name", "identity"}});
  identity["window"] = {{"site", {{"kind", "plain"}, {"dim", 2}}}, {"count", 10}};
  return {
      {"shift-2", problem("trivial", preset({{"name", "shift"}, {"d", 2}, {"sites", 8}}))},
      {"shift-3", problem("trivial", preset({{"name", "shift"}, {"d", 3}, {"sites", 8}}))},
      {"left-shift-2", problem("trivial", preset({{"name", "shift"}, {"d", 2}, {"sites", 8}, {"left", true}}))},
      {"majorana", problem("trivial", preset({{"name", "majorana"}, {"sites", 8}}))},
      {"zeta-example",
       problem("Z2", preset({{"name", "zeta_example"}, {"v", {one, one}}, {"zeta", {0, 1}}, {"sites", 8}}))},
      {"cocycle-example", problem("Z2xZ2", preset({{"name", "cocycle_example"}, {"v", paulis}, {"sites", 8}}))},
      {"circuit-z2", problem("Z2", z2_circuit)},
      {"identity", problem("trivial", identity)},
  };
}

}  // namespace sqca
