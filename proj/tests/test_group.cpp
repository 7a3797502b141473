#include "doctest.h"
#include "oracles.hpp"
#include "sqca/group.hpp"

#include <set>

using namespace sqca;

namespace {

Cocycle2 pauli_cocycle(const FiniteGroup& g, bool swapped) {
  Cocycle2 c{Mat(4, 4)};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int a1 = a >> 1, a2 = a & 1, b1 = b >> 1, b2 = b & 1;
      int e = swapped ? a2 * b1 : a1 * b2;
      c.phases(a, b) = e ? -1.0 : 1.0;
    }
  (void)g;
  return c;
}

bool brute_force_coboundary_4th_roots(const FiniteGroup& g, const Cocycle2& nu) {
  const int n = g.order;
  std::vector<int> e(std::size_t(n), 0);
  while (true) {
    Vec mu(n);
    for (int a = 0; a < n; ++a) mu(a) = std::polar(1.0, kPi / 2 * e[std::size_t(a)]);
    if ((coboundary(g, mu).phases - nu.phases).cwiseAbs().maxCoeff() < 1e-9) return true;
    int p = 0;
    while (p < n && ++e[std::size_t(p)] == 4) e[std::size_t(p++)] = 0;
    if (p == n) return false;
  }
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("tables and validation") {
    auto t = group_from_table({{0}});
    CHECK(t.order == 1);
    auto z2 = group_from_table({{0, 1}, {1, 0}});
    CHECK(z2.identity == 0);
    CHECK(z2.inv(1) == 1);
    auto k = group_preset("Z2xZ2");
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(k.mul(a, b) == (a ^ b));
    CHECK_THROWS_AS(group_from_table({{0, 1}, {0, 1}}), Error);
    try {
      group_from_table({{1, 0}, {0, 0}});
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK((e.code() == Errc::NotAssociative || e.code() == Errc::NoIdentity));
    }
    try {
      group_from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 0}});
    } catch (const Error& e) {
      CHECK(e.code() != Errc::InvalidInput);
    }
    for (const auto& name : group_preset_names()) {
      auto g = group_preset(name);
      for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
          for (int c = 0; c < g.order; ++c) CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
    CHECK(group_preset("S3").order == 6);
    CHECK(group_preset("D4").order == 8);
    CHECK(group_preset("Q8").order == 8);
    CHECK_FALSE(oracle::is_abelian(group_preset("Q8")));
  }

  TEST_CASE("parity extension") {
    auto p = parity_extend(group_preset("trivial"));
    CHECK(p.group.order == 2);
    auto q = parity_extend(group_preset("Z2"));
    CHECK(q.group.order == 4);
    CHECK(oracle::is_abelian(q.group));
    auto s = parity_extend(group_preset("S3"));
    CHECK(s.group.order == 12);
    for (int a = 0; a < 12; ++a) CHECK(s.group.mul(a, s.theta) == s.group.mul(s.theta, a));
    CHECK(s.group.mul(s.theta, s.theta) == s.group.identity);
  }

  TEST_CASE("z2 homomorphisms against brute force") {
    for (const auto& name : group_preset_names()) {
      auto g = group_preset(name);
      auto homs = enumerate_z2_homs(g);
      auto brute = oracle::all_z2_maps_that_are_homs(g);
      CHECK(homs.size() == brute.size());
      CHECK(int(homs.size()) == oracle::z2_homs_from_abelianization(g));
      std::set<std::vector<int>> seen;
      for (const auto& h : homs) {
        CHECK(is_z2_hom(g, h));
        CHECK(seen.insert(h.values).second);
      }
      CHECK(seen.count(std::vector<int>(std::size_t(g.order), 0)) == 1);
    }
    auto z6 = parity_extend(group_preset("S3")).group;
    CHECK(int(enumerate_z2_homs(z6).size()) == oracle::z2_homs_from_abelianization(z6));
    CHECK(enumerate_z2_homs(group_preset("Z3")).size() == 1);
    CHECK_THROWS_AS(enumerate_z2_homs(cyclic_group(25)), Error);
  }

  TEST_CASE("characters") {
    for (const auto& name : group_preset_names()) {
      auto g = group_preset(name);
      for (const auto& chi : enumerate_characters(g))
        for (int a = 0; a < g.order; ++a)
          for (int b = 0; b < g.order; ++b) CHECK(std::abs(chi(a) * chi(b) - chi(g.mul(a, b))) < 1e-12);
    }
    CHECK(enumerate_characters(cyclic_group(3)).size() == 3);
    CHECK(enumerate_characters(group_preset("S3")).size() == 2);
    CHECK(enumerate_characters(group_preset("Q8")).size() == 4);
  }

  TEST_CASE("cocycles and snapping") {
    auto k = group_preset("Z2xZ2");
    CHECK(is_cocycle(k, trivial_cocycle(k)).ok);
    auto w = pauli_cocycle(k, false);
    CHECK(is_cocycle(k, w).ok);
    auto bad = trivial_cocycle(k);
    bad.phases(1, 2) = -1.0;
    auto rep = is_cocycle(k, bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst > 1.0);
    CHECK(snap_cocycle(k, trivial_cocycle(k), 2).isZero());
    IMat sn = snap_cocycle(k, w, 2);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(sn(a, b) == ((a >> 1) * (b & 1)));
    auto withi = trivial_cocycle(k);
    withi.phases.fill(cplx(0, 1));
    try {
      snap_cocycle(k, withi, 2);
      FAIL("expected SnapFailure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SnapFailure);
    }
  }

  TEST_CASE("cohomologous and twist") {
    auto z2 = group_preset("Z2");
    Z2Hom id{{0, 1}}, zero{{0, 0}};
    auto tw = twist_class(z2, id, id);
    auto mu = cohomologous(z2, trivial_cocycle(z2), tw);
    REQUIRE(mu);
    CHECK((coboundary(z2, *mu).phases - tw.phases).cwiseAbs().maxCoeff() < 1e-12);
    Vec paper(2);
    paper << 1.0, cplx(0, 1);
    CHECK((coboundary(z2, paper).phases - tw.phases).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((twist_class(z2, zero, id).phases - trivial_cocycle(z2).phases).norm() == 0);

    auto k = group_preset("Z2xZ2");
    auto w = pauli_cocycle(k, false);
    CHECK_FALSE(cohomologous(k, trivial_cocycle(k), w));
    CHECK_FALSE(brute_force_coboundary_4th_roots(k, w));
    Z2Hom b1{{0, 0, 1, 1}}, b2{{0, 1, 0, 1}};
    auto t12 = twist_class(k, b1, b2);
    CHECK((t12.phases - w.phases).norm() == 0);
    CHECK_FALSE(cohomologous(k, trivial_cocycle(k), t12));
    for (const auto& z : enumerate_z2_homs(k)) {
      auto t = twist_class(k, z, z);
      Vec m(4);
      for (int a = 0; a < 4; ++a) m(a) = z.values[std::size_t(a)] ? cplx(0, 1) : cplx(1, 0);
      CHECK((coboundary(k, m).phases - t.phases).cwiseAbs().maxCoeff() < 1e-15);
      CHECK(cohomologous(k, trivial_cocycle(k), t));
    }
  }

  TEST_CASE("cohomologous is an equivalence on sampled cocycles") {
    Rng rng(3);
    std::uniform_real_distribution<double> u(0, 2 * kPi);
    for (const auto& name : {"Z3", "Z2xZ2", "S3", "D4", "Q8"}) {
      auto g = group_preset(name);
      auto reps = h2_representatives(g, 2);
      for (const auto& r : reps) {
        Vec m1(g.order), m2(g.order);
        for (int a = 0; a < g.order; ++a) {
          m1(a) = std::polar(1.0, u(rng));
          m2(a) = std::polar(1.0, u(rng));
        }
        auto a = cocycle_mul(r, coboundary(g, m1));
        auto b = cocycle_mul(a, coboundary(g, m2));
        CHECK(cohomologous(g, a, a));
        auto ab = cohomologous(g, a, b);
        auto ba = cohomologous(g, b, a);
        REQUIRE(ab);
        REQUIRE(ba);
        CHECK((coboundary(g, ab->cwiseInverse()).phases.cwiseProduct(b.phases) - a.phases).cwiseAbs().maxCoeff() <
              1e-9);
        auto ra = cohomologous(g, r, a);
        REQUIRE(ra);
        Vec prod = ra->cwiseProduct(*ab);
        CHECK((coboundary(g, prod).phases.cwiseProduct(r.phases) - b.phases).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(canonical_class(g, a) == canonical_class(g, r));
        CHECK(canonical_class(g, b) == canonical_class(g, r));
      }
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) {
          bool same = canonical_class(g, reps[i]) == canonical_class(g, reps[j]);
          CHECK(same == bool(cohomologous(g, reps[i], reps[j])));
          CHECK(same == (i == j));
        }
    }
  }

  TEST_CASE("canonical class") {
    auto k = group_preset("Z2xZ2");
    CHECK(canonical_class(k, trivial_cocycle(k)).is_trivial());
    auto a = canonical_class(k, pauli_cocycle(k, false));
    auto b = canonical_class(k, pauli_cocycle(k, true));
    CHECK(a == b);
    CHECK(cohomologous(k, pauli_cocycle(k, false), pauli_cocycle(k, true)));
    CHECK_FALSE(a == canonical_class(k, trivial_cocycle(k)));
  }

  TEST_CASE("h2 enumeration against exhaustive oracle") {
    CHECK(h2_enumerate(group_preset("trivial"), 2).size() == 1);
    for (int m = 1; m <= 4; ++m)
      for (const auto& name : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
        auto g = group_preset(name);
        if (g.order == 4 && m == 4 && std::string(name) == "Z2xZ2") continue;
        std::set<std::vector<int>> forms;
        for (const auto& c : oracle::all_zm_cocycles(g, m)) forms.insert(oracle::commutator_form(g, c, m));
        CHECK(h2_enumerate(g, m).size() == forms.size());
      }
    CHECK(h2_enumerate(cyclic_group(4), 4).size() == 1);
    CHECK(h2_enumerate(group_preset("Z2xZ2"), 2).size() == 2);
    CHECK(h2_enumerate(group_preset("D4"), 2).size() == 2);
    CHECK(h2_enumerate(group_preset("Q8"), 4).size() == 1);
    CHECK(h2_enumerate(group_preset("S3"), 3).size() == 1);
    CHECK_THROWS_AS(h2_enumerate(cyclic_group(9), 2), Error);
    CHECK_THROWS_AS(h2_enumerate(cyclic_group(2), 5), Error);
  }
}
