#include "circuits.hpp"
#include "oracles.hpp"
#include "sqca/condexp.hpp"
#include "sqca/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace sqca;
using namespace tu;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s [%.1fs] %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IndexTriple triple(const FiniteGroup& g, std::int64_t num, std::int64_t den, int radical, std::vector<int> zeta = {}) {
  if (zeta.empty()) zeta.assign(std::size_t(g.order), 0);
  return make_triple(g, IndexValue::make(num, den, radical), Z2Hom{zeta}, trivial_cocycle(g));
}

std::vector<Mat> paulis() { return {id(2), sx(), sz(), sx() * sz()}; }

// index at every admissible cell, all equal to want
void all_cells(Outcome& o, const std::string& tag, const QcaRealization& q, const IndexTriple& want) {
  auto cells = admissible_cells(q);
  o.require(!cells.empty(), tag + " has no admissible cell");
  for (auto n : cells) {
    IndexTriple got = qca_index(q, n);
    o.require(got == want, tag + " cell " + std::to_string(n) + ": " + got.str() + " != " + want.str());
  }
}

std::string suite_failures(const std::vector<SuiteResult>& rs) {
  std::string out;
  for (const auto& r : rs)
    for (const auto& c : r.checks)
      if (!c.pass) out += c.name + " (" + c.detail + ") ";
  return out;
}

std::size_t suite_checks(const std::vector<SuiteResult>& rs) {
  std::size_t n = 0;
  for (const auto& r : rs) n += r.checks.size();
  return n;
}

// M_{p|q} or K (x) M_n, tensored with a graded multiplicity space
struct Summand {
  AmbientSpace amb;
  std::vector<Mat> gens;
};

Summand random_summand(Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 1), small(1, 2);
  const int p = small(rng), q = coin(rng), m = small(rng);
  Eigen::VectorXi gb(p + q), gm(m);
  for (int i = 0; i < p + q; ++i) gb(i) = i < p ? 1 : -1;
  for (int i = 0; i < m; ++i) gm(i) = coin(rng) ? 1 : -1;
  gm(0) = 1;
  AmbientSpace base(gb), mult(gm);
  std::vector<Mat> local;
  if (q == 1 && p == 1 && coin(rng)) {
    local.push_back(sx());
  } else {
    for (int k = 0; k < 3; ++k) {
      Mat x = random_complex(p + q, p + q, rng);
      auto [even, odd] = parity_split(x, base);
      local.push_back(even);
      local.push_back(odd);
    }
  }
  Summand s{graded_tensor(base, mult), {}};
  for (const auto& x : local) s.gens.push_back(graded_kron(x, id(m), base, mult));
  return s;
}

GradedSubalgebra random_graded_subalgebra(Rng& rng, Eigen::Index max_dim) {
  std::uniform_int_distribution<int> parts(1, 3);
  while (true) {
    std::vector<Summand> ss;
    const int k = parts(rng);
    Eigen::Index n = 0;
    for (int i = 0; i < k; ++i) {
      ss.push_back(random_summand(rng));
      n += ss.back().amb.dim();
    }
    if (n > max_dim) continue;
    Eigen::VectorXi g(n);
    std::vector<Mat> gens;
    Eigen::Index off = 0;
    for (const auto& s : ss) {
      const Eigen::Index d = s.amb.dim();
      g.segment(off, d) = s.amb.grading;
      Mat proj = Mat::Zero(n, n);
      proj.block(off, off, d, d).setIdentity();
      gens.push_back(proj);
      for (const auto& x : s.gens) {
        Mat y = Mat::Zero(n, n);
        y.block(off, off, d, d) = x;
        gens.push_back(y);
      }
      off += d;
    }
    AmbientSpace amb(g);
    Mat u = tu::random_even_unitary(amb, rng);
    for (auto& x : gens) x = u * x * u.adjoint();
    return close_algebra(gens, amb);
  }
}

}  // namespace

int main() {
  const FiniteGroup triv = group_preset("trivial");
  const FiniteGroup z2 = group_preset("Z2"), z3 = group_preset("Z3"), k4 = group_preset("Z2xZ2");
  const std::vector<Mat> v1(2, id(1));

  criterion(1, "shift index", [&](Outcome& o) {
    for (int d : {2, 3}) {
      auto q = preset_shift(d, 12);
      double t = timed([&] { all_cells(o, "shift-" + std::to_string(d), q, triple(triv, d, 1, 0)); });
      o.require(t < 5.0, "shift-" + std::to_string(d) + " took " + std::to_string(t) + "s");
      o.detail << "D=" << d << " " << admissible_cells(q).size() << " cells " << t << "s; ";
    }
  });

  criterion(2, "majorana index", [&](Outcome& o) {
    auto q = preset_majorana_shift(12);
    double t = timed([&] { all_cells(o, "majorana", q, triple(triv, 1, 1, 1)); });
    o.require(t < 5.0, "majorana took " + std::to_string(t) + "s");
    IndexTriple got = qca_index(q);
    o.detail << got.str() << " " << t << "s";
  });

  criterion(3, "zeta example", [&](Outcome& o) {
    auto want = triple(z2, 2, 1, 0, {0, 1});
    all_cells(o, "zeta", preset_zeta_example(z2, v1, Z2Hom{{0, 1}}, 8), want);
    all_cells(o, "zeta half sites", preset_zeta_example(z2, v1, Z2Hom{{0, 1}}, 8, true), want);
    o.detail << want.str();
  });

  criterion(4, "cocycle example", [&](Outcome& o) {
    for (bool half : {false, true}) {
      auto q = preset_cocycle_example(k4, paulis(), 8, half);
      for (auto n : admissible_cells(q)) {
        IndexTriple got = qca_index(q, n);
        o.require(got.d == IndexValue::make(2, 1, 0), "d = " + got.d.str());
        o.require(got.zeta == Z2Hom{{0, 0, 0, 0}}, "zeta nonzero");
        o.require(!got.nu.is_trivial(), "canonical class trivial");
        o.require(!cohomologous(k4, got.nu_rep, trivial_cocycle(k4)).has_value(), "witness found for nu ~ 1");
      }
    }
    o.detail << qca_index(preset_cocycle_example(k4, paulis(), 8)).str();
  });

  criterion(5, "multiplicativity", [&](Outcome& o) {
    auto ring = preset_shift(2, 8, false, true);
    IndexTriple a = qca_index(coarse_grain(compose_qca(ring, ring), 2));
    o.require(a == triple(triv, 4, 1, 0), "shift o shift = " + a.str());
    IndexTriple b = qca_index(stack_qca(preset_shift(2, 6), preset_shift(3, 6, true)));
    o.require(b == triple(triv, 2, 3, 0), "shift (x) left shift = " + b.str());
    auto maj = preset_majorana_shift(6);
    IndexTriple c = qca_index(stack_qca(maj, maj));
    o.require(c == triple(triv, 2, 1, 0), "majorana (x) majorana = " + c.str());
    o.detail << a.str() << " " << b.str() << " " << c.str();
  });

  criterion(6, "stacking law", [&](Outcome& o) {
    auto rs = run_suite("stacking", 6);
    o.require(suite_failures(rs).empty(), suite_failures(rs));
    for (const auto& r : rs)
      for (const auto& c : r.checks) o.detail << c.detail;
  });

  criterion(7, "circuit triviality", [&](Outcome& o) {
    Rng rng(7);
    const std::vector<FiniteGroup> groups{z2, k4, z3};
    for (int t = 0; t < 20; ++t) {
      const FiniteGroup& g = groups[std::size_t(t) % 3];
      ChainWindow w = circuit_window(g, 8, rng, g.order == 2 && t % 2 == 0);
      auto layers = random_brickwork(w, rng);
      o.require(layers.size() == 2, "depth " + std::to_string(layers.size()));
      all_cells(o, "circuit " + std::to_string(t), circuit_from_layers(w, layers), neutral_triple(g));
    }
    o.detail << "20 circuits";
  });

  criterion(8, "overlap factorization", [&](Outcome& o) {
    std::vector<std::pair<std::string, QcaRealization>> presets{
        {"shift-2", preset_shift(2, 8)},
        {"shift-3", preset_shift(3, 8)},
        {"left-shift-2", preset_shift(2, 8, true)},
        {"left-shift-3", preset_shift(3, 8, true)},
        {"majorana", preset_majorana_shift(8)},
        {"left-majorana", preset_majorana_shift(8, true)},
        {"zeta", preset_zeta_example(z2, v1, Z2Hom{{0, 1}}, 8)},
        {"cocycle", preset_cocycle_example(k4, paulis(), 8)}};
    int checked = 0;
    for (const auto& [name, q] : presets) {
      for (auto n : admissible_cells(q)) {
        auto rep = qca_index_report(q, n);
        CellMap m(q, n);
        const Eigen::Index db = m.dim(1) * m.dim(2);
        o.require(rep.dim_l * rep.dim_r == db * db, name + " cell " + std::to_string(n) + ": dim B != dim L dim R");
        o.require(!rep.shape_l.empty() && !rep.shape_r.empty(), name + ": overlaps not classified");
      }
      for (auto n : factorization_cells(q)) {
        auto f = verify_factorization(q, n);
        o.require(f.ok, name + " cell " + std::to_string(n) + ": " + (f.failures.empty() ? "" : f.failures.front()));
        o.require(f.dim_c == f.dim_r_prev * f.dim_l, name + ": dim C != dim R_prev dim L");
        o.require(f.dim_b == f.dim_l * f.dim_r, name + ": dim B != dim L dim R");
        ++checked;
      }
    }
    o.detail << presets.size() << " presets, " << checked << " cells with both neighbours";
  });

  criterion(9, "index well-definedness", [&](Outcome& o) {
    struct Case {
      std::string name;
      QcaRealization fine;
      IndexTriple want;
      bool coarse;
    };
    std::vector<Case> cases{
        {"shift-2", preset_shift(2, 12), triple(triv, 2, 1, 0), true},
        {"left-shift-2", preset_shift(2, 12, true), triple(triv, 1, 2, 0), true},
        {"shift-3", preset_shift(3, 12), triple(triv, 3, 1, 0), false},
        {"majorana", preset_majorana_shift(12), triple(triv, 1, 1, 1), true},
        {"majorana ring", preset_majorana_shift(8, false, true), triple(triv, 1, 1, 1), true},
        {"zeta", preset_zeta_example(z2, v1, Z2Hom{{0, 1}}, 12, true), triple(z2, 2, 1, 0, {0, 1}), true},
        {"cocycle", preset_cocycle_example(k4, paulis(), 12, true), qca_index(preset_cocycle_example(k4, paulis(), 8)),
         true}};
    for (const auto& c : cases) {
      all_cells(o, c.name, c.fine, c.want);
      if (c.coarse) all_cells(o, c.name + " coarse", coarse_grain(c.fine, 2), c.want);
    }
    o.detail << cases.size() << " presets; shift-3 coarse-grained patch exceeds the ambient cap";
  });

  criterion(10, "group structure", [&](Outcome& o) {
    std::map<std::string, std::vector<IndexTriple>> samples;
    for (const auto& g : {z2, k4, z3})
      for (const auto& s : sample_gsystems(g)) samples[g.name].push_back(gsystem_index(s));
    samples["Z2"].push_back(qca_index(preset_zeta_example(z2, v1, Z2Hom{{0, 1}}, 8)));
    samples["Z2xZ2"].push_back(qca_index(preset_cocycle_example(k4, paulis(), 8)));
    std::size_t triples = 0;
    for (const auto& g : {z2, k4, z3}) {
      const auto& ts = samples[g.name];
      const IndexTriple e = neutral_triple(g);
      for (const auto& a : ts) {
        o.require(triple_mul(a, triple_inv(a)) == e, "inverse of " + a.str());
        o.require(triple_mul(e, a) == a, "unit on " + a.str());
        for (const auto& b : ts) {
          o.require(triple_mul(a, b) == triple_mul(b, a), "commutativity");
          for (const auto& c : ts) {
            o.require(triple_mul(triple_mul(a, b), c) == triple_mul(a, triple_mul(b, c)), "associativity");
            ++triples;
          }
        }
      }
      for (const auto& z : enumerate_z2_homs(g)) {
        Vec mu(g.order);
        for (int x = 0; x < g.order; ++x) mu(x) = z.values[std::size_t(x)] ? cplx(0, 1) : cplx(1, 0);
        double defect = (twist_class(g, z, z).phases - coboundary(g, mu).phases).cwiseAbs().maxCoeff();
        o.require(defect < 1e-12, g.name + ": nu(zeta, zeta) != d(i^zeta)");
      }
    }
    o.detail << triples << " ordered triples";
  });

  criterion(11, "bicommutant", [&](Outcome& o) {
    Rng rng(11);
    double worst = 0.0;
    Eigen::Index largest = 0;
    for (int t = 0; t < 20; ++t) {
      GradedSubalgebra s = random_graded_subalgebra(rng, 16);
      largest = std::max(largest, s.ambient.dim());
      GradedSubalgebra ss = double_supercommutant(s);
      o.require(ss.dim() == s.dim(), "dimension " + std::to_string(ss.dim()) + " vs " + std::to_string(s.dim()));
      worst = std::max(worst, span_distance(ss, s));
    }
    o.require(worst < 1e-9, "defect " + std::to_string(worst));
    o.detail << "worst defect " << worst << ", ambient dim up to " << largest;
  });

  criterion(12, "araki expectations", [&](Outcome& o) {
    auto rs = run_suite("condexp", 12);
    o.require(suite_failures(rs).empty(), suite_failures(rs));
    o.detail << suite_checks(rs) << " checks";
  });

  criterion(13, "cohomology oracle", [&](Outcome& o) {
    auto oracle_count = [](const FiniteGroup& g, int m) {
      std::set<std::vector<int>> forms;
      for (const auto& c : oracle::all_zm_cocycles(g, m)) forms.insert(oracle::commutator_form(g, c, m));
      return forms.size();
    };
    o.require(h2_enumerate(k4, 2).size() == 2, "|H2(Z2xZ2, Z2)| != 2");
    o.require(oracle_count(k4, 2) == 2, "oracle |H2(Z2xZ2, Z2)| != 2");
    for (int n : {2, 3, 4}) {
      FiniteGroup g = cyclic_group(n);
      o.require(h2_enumerate(g, n).size() == 1, "|H2(Z" + std::to_string(n) + ")| != 1");
      o.require(oracle_count(g, n) == 1, "oracle |H2(Z" + std::to_string(n) + ")| != 1");
    }
    Rng rng(13);
    std::uniform_real_distribution<double> ph(0.0, 2 * kPi);
    int pairs = 0;
    for (auto [g, m] : std::vector<std::pair<FiniteGroup, int>>{{k4, 2}, {z2, 2}, {z3, 3}, {cyclic_group(4), 4}}) {
      auto reps = h2_representatives(g, m);
      std::vector<Cocycle2> pool = reps;
      for (const auto& r : reps) {
        Vec mu(g.order);
        for (int a = 0; a < g.order; ++a) mu(a) = std::polar(1.0, ph(rng));
        pool.push_back(cocycle_mul(r, coboundary(g, mu)));
      }
      for (const auto& a : pool)
        for (const auto& b : pool) {
          bool same = canonical_class(g, a) == canonical_class(g, b);
          o.require(same == cohomologous(g, a, b).has_value(), g.name + ": canonical_class disagrees with cohomologous");
          ++pairs;
        }
    }
    o.detail << pairs << " pairs";
  });

  criterion(14, "near inclusion constants", [&](Outcome& o) {
    auto rs = run_suite("nearincl", 14);
    o.require(suite_failures(rs).empty(), suite_failures(rs));
    o.detail << suite_checks(rs) << " checks";
  });

  criterion(15, "first cohomology realization", [&](Outcome& o) {
    for (const auto& g : {z2, z3}) {
      const int n = g.order;
      GSystem reg{g, full_algebra(AmbientSpace::trivial(n)), {}};
      for (int a = 0; a < n; ++a) {
        Mat u = Mat::Zero(n, n);
        for (int b = 0; b < n; ++b) u(g.mul(a, b), b) = 1.0;
        reg.action.push_back(u);
      }
      std::set<std::vector<long>> seen;
      for (const auto& chi : enumerate_characters(g)) {
        Mat u = Mat(chi.asDiagonal());
        Vec mu = first_cohomology_index(reg, u);
        double defect = 0.0;
        for (int a = 0; a < n; ++a)
          defect = std::max({defect, std::abs(mu(a) - chi(a)), std::abs(mu(n + a) - chi(a))});
        o.require(defect < 1e-12, g.name + ": recovered character differs by " + std::to_string(defect));
        std::vector<long> key;
        for (int a = 0; a < n; ++a) key.push_back(std::lround(std::arg(mu(a)) / (2 * kPi) * n + n) % n);
        seen.insert(key);
      }
      o.require(int(seen.size()) == n, g.name + ": not every character realized");
      o.detail << g.name << " " << seen.size() << " characters; ";
    }
  });

  criterion(16, "decoupling round trip", [&](Outcome& o) {
    Rng rng(16);
    double worst = 0.0;
    for (const auto& g : {z2, z3, k4}) {
      ChainWindow w = circuit_window(g, 12, rng, g.order == 2);
      auto q = circuit_from_layers(w, random_brickwork(w, rng));
      Decoupling d = decouple_trivial(q);
      worst = std::max(worst, d.roundtrip_error);
      for (const auto& b : d.psi) {
        const Eigen::Index n = b.sites.front() / 2;
        CellMap a(q, n), c(d.decoupled, n);
        const Eigen::Index db = a.dim(1) * a.dim(2);
        for (Eigen::Index k = 0; k < db * db; ++k) {
          Mat e = Mat::Zero(db, db);
          e(k % db, k / db) = 1.0;
          worst = std::max(worst, (a(e) - c(e)).norm());
        }
      }
    }
    o.require(worst < 1e-8, "round trip error " + std::to_string(worst));
    try {
      decouple_trivial(preset_shift(2, 12));
      o.require(false, "shift decoupled");
    } catch (const Error& e) {
      o.require(e.code() == Errc::IndexNotTrivial, std::string("shift: ") + e.what());
    }
    o.detail << "worst " << worst;
  });

  std::printf("%d of 16 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
