#include "doctest.h"
#include "sqca/qca.hpp"
#include "circuits.hpp"

#include <cmath>

using namespace sqca;
using namespace tu;

namespace {

IndexTriple triple(const FiniteGroup& g, std::int64_t num, std::int64_t den, int radical, std::vector<int> zeta = {}) {
  if (zeta.empty()) zeta.assign(std::size_t(g.order), 0);
  return make_triple(g, IndexValue::make(num, den, radical), Z2Hom{zeta}, trivial_cocycle(g));
}

FiniteGroup trivial_group() { return group_preset("trivial"); }

std::vector<Mat> paulis() { return {id(2), sx(), sz(), sx() * sz()}; }

void check_all_cells(const QcaRealization& q, const IndexTriple& want) {
  auto cells = admissible_cells(q);
  REQUIRE(!cells.empty());
  for (auto n : cells) CHECK(qca_index(q, n) == want);
}

}  // namespace

TEST_SUITE("qca") {
  TEST_CASE("graded permutation moves Jordan-Wigner operators") {
    Eigen::VectorXi g2(2), g3(3);
    g2 << 1, -1;
    g3 << 1, -1, -1;
    std::vector<Eigen::VectorXi> grads{g2, g3, g2, g3};
    ChainEmbedding chain{grads};
    std::vector<Eigen::Index> sigma{2, 0, 3, 1};
    GradedPermutation p = graded_permutation(grads, sigma);
    std::vector<Eigen::VectorXi> moved(4);
    for (int j = 0; j < 4; ++j) moved[std::size_t(sigma[std::size_t(j)])] = grads[std::size_t(j)];
    ChainEmbedding target{moved};
    Mat pm = p.matrix();
    CHECK((pm.adjoint() * pm - id(pm.rows())).norm() < 1e-12);
    Rng rng(3);
    for (int j = 0; j < 4; ++j) {
      AmbientSpace a(grads[std::size_t(j)]);
      auto [e, o] = parity_split(random_complex(a.dim(), a.dim(), rng), a);
      for (const Mat& x : {e, o}) {
        Mat lhs = p.conjugate(jw_embed(chain, j, x));
        Mat rhs = jw_embed(target, sigma[std::size_t(j)], x);
        CHECK((lhs - rhs).norm() < 1e-10);
      }
    }
  }

  TEST_CASE("implementing unitary of a conjugation") {
    Eigen::VectorXi g2(2);
    g2 << 1, -1;
    ChainEmbedding chain{{g2, g2, g2}};
    AmbientSpace amb = chain.ambient();
    Rng rng(11);
    Mat w = random_even_unitary(amb, rng);
    Mat v = implement_on_region(chain, {0, 1, 2}, [&](Eigen::Index j, const Mat& x) {
      return Mat(w * jw_embed(chain, j, x) * w.adjoint());
    });
    cplx c = extract_scalar(v, w, 1e-8);
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-8);
  }

  TEST_CASE("shift index") {
    FiniteGroup g = trivial_group();
    for (int d : {2, 3}) {
      check_all_cells(preset_shift(d, 6), triple(g, d, 1, 0));
      check_all_cells(preset_shift(d, 6, true), triple(g, 1, d, 0));
    }
    check_all_cells(preset_shift(2, 6, false, true), triple(g, 2, 1, 0));
  }

  TEST_CASE("majorana shift index") {
    FiniteGroup g = trivial_group();
    check_all_cells(preset_majorana_shift(8), triple(g, 1, 1, 1));
    check_all_cells(preset_majorana_shift(8, false, false, true), triple(g, 1, 1, 1));
    check_all_cells(preset_majorana_shift(8, true), triple(g, 1, 2, 1));
    check_all_cells(preset_majorana_shift(6, false, true), triple(g, 1, 1, 1));
    auto rep = qca_index_report(preset_majorana_shift(6), 1);
    CHECK(rep.dim_r == 8);
    CHECK(rep.shape_r == "M2(x)K");
  }

  TEST_CASE("zeta example") {
    FiniteGroup g = group_preset("Z2");
    std::vector<Mat> v(2, id(1));
    Z2Hom zeta{{0, 1}};
    auto want = triple(g, 2, 1, 0, {0, 1});
    check_all_cells(preset_zeta_example(g, v, zeta, 6, true), want);
    check_all_cells(preset_zeta_example(g, v, zeta, 8), want);
    check_all_cells(preset_zeta_example(g, v, Z2Hom{{0, 0}}, 6), triple(g, 2, 1, 0));
    std::vector<Mat> v2{id(2), sz()};
    check_all_cells(preset_zeta_example(g, v2, zeta, 6, true), triple(g, 4, 1, 0, {0, 1}));
  }

  TEST_CASE("cocycle example") {
    FiniteGroup g = group_preset("Z2xZ2");
    auto q = preset_cocycle_example(g, paulis(), 6);
    IndexTriple ind = qca_index(q);
    CHECK(ind.d == IndexValue::make(2, 1, 0));
    CHECK(ind.zeta == Z2Hom{{0, 0, 0, 0}});
    CHECK(!cohomologous(g, ind.nu_rep, trivial_cocycle(g)).has_value());
    // nu(a, b) / nu(b, a) is a class invariant; anticommuting Paulis give -1
    cplx comm = ind.nu_rep.phases(1, 2) / ind.nu_rep.phases(2, 1);
    CHECK(std::abs(comm + 1.0) < 1e-9);
    check_all_cells(preset_cocycle_example(g, paulis(), 6, true), ind);
  }

  TEST_CASE("multiplicativity") {
    FiniteGroup g = trivial_group();
    auto ring = preset_shift(2, 8, false, true);
    CHECK(qca_index(coarse_grain(compose_qca(ring, ring), 2)) == triple(g, 4, 1, 0));
    CHECK(qca_index(compose_qca(ring, inverse_qca(ring))) == triple(g, 1, 1, 0));
    auto maj = preset_majorana_shift(6);
    CHECK(qca_index(stack_qca(maj, maj)) == triple(g, 2, 1, 0));
    CHECK(qca_index(stack_qca(preset_shift(2, 6), maj)) == triple(g, 2, 1, 1));
    CHECK(qca_index(stack_qca(preset_shift(2, 6), preset_shift(2, 6, true))) == triple(g, 1, 1, 0));
  }

  TEST_CASE("overlap factorization dimensions") {
    struct Case {
      QcaRealization q;
      Eigen::Index dim_r_prev, dim_l, dim_r;
    };
    std::vector<Case> cases;
    cases.push_back({preset_shift(2, 8), 16, 1, 16});
    cases.push_back({preset_shift(2, 8, true), 1, 16, 1});
    cases.push_back({preset_shift(3, 8), 81, 1, 81});
    cases.push_back({preset_majorana_shift(8), 8, 2, 8});
    for (auto& c : cases) {
      auto cells = admissible_cells(c.q);
      for (auto n : cells) {
        if (std::find(cells.begin(), cells.end(), n - 1) == cells.end()) continue;
        auto rep = verify_factorization(c.q, n);
        CHECK(rep.ok);
        CHECK(rep.dim_r_prev == c.dim_r_prev);
        CHECK(rep.dim_l == c.dim_l);
        CHECK(rep.dim_r == c.dim_r);
        CHECK(rep.dim_c == rep.dim_r_prev * rep.dim_l);
        CHECK(rep.dim_b == rep.dim_l * rep.dim_r);
      }
    }
  }

  TEST_CASE("coarse graining keeps the index") {
    FiniteGroup g = trivial_group();
    check_all_cells(coarse_grain(preset_shift(2, 12), 2), triple(g, 2, 1, 0));
    check_all_cells(coarse_grain(preset_majorana_shift(12), 2), triple(g, 1, 1, 1));
    check_all_cells(coarse_grain(preset_majorana_shift(8, false, true), 2), triple(g, 1, 1, 1));
    CHECK_THROWS_AS(coarse_grain(preset_shift(2, 7), 2), Error);
    try {
      coarse_grain(preset_shift(3, 12), 2);
      FAIL("9-dim sites fit the patch cap");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::AmbientTooLarge);
    }
  }

  TEST_CASE("realizations are even and equivariant") {
    FiniteGroup k4 = group_preset("Z2xZ2");
    CHECK_NOTHROW(validate_realization(preset_shift(2, 6)));
    CHECK_NOTHROW(validate_realization(preset_majorana_shift(6, false, true)));
    CHECK_NOTHROW(validate_realization(preset_cocycle_example(k4, paulis(), 6)));
  }

  TEST_CASE("input errors") {
    auto code = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return Errc::InvalidInput;
    };
    CHECK(code([] { preset_shift(2, 4); }) == Errc::WindowTooSmall);
    FiniteGroup z2 = group_preset("Z2");
    CHECK(code([&] { preset_zeta_example(z2, {id(2), sx() * 0.5}, Z2Hom{{0, 1}}, 6); }) == Errc::NotARepresentation);
    Mat s = id(2);
    s(1, 1) = cplx(0, 1);
    CHECK(code([&] { preset_cocycle_example(z2, {id(2), s}, 6); }) == Errc::NotProjective);
    // clock and shift: nu has order 3, so v and its conjugate are not equivalent
    FiniteGroup z33 = direct_product(cyclic_group(3), cyclic_group(3));
    Mat x = Mat::Zero(3, 3), z = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      x((i + 1) % 3, i) = 1.0;
      z(i, i) = std::polar(1.0, 2 * kPi * i / 3);
    }
    std::vector<Mat> cs;
    for (int a = 0; a < 9; ++a) {
      Mat m = id(3);
      for (int k = 0; k < a / 3; ++k) m = x * m;
      for (int k = 0; k < a % 3; ++k) m = m * z;
      cs.push_back(m);
    }
    CHECK(code([&] { preset_cocycle_example(z33, cs, 6, true); }) == Errc::NotEquivariant);
    CHECK(code([] { compose_qca(preset_shift(2, 6, false, true), preset_shift(2, 8, false, true)); }) ==
          Errc::WindowMismatch);
    ChainWindow w = uniform_window(z2, flip_site(), 8);
    GateBlock bad{{2, 3}, std::cos(0.3) * id(4) + cplx(0, std::sin(0.3)) * Mat(kron(sz(), id(2)))};
    CHECK(code([&] { check_gate(w, bad); }) == Errc::BlockUnitaryNotEquivariant);
  }

  TEST_CASE("circuits have trivial index") {
    Rng rng(99);
    for (const char* name : {"Z2", "Z3", "Z2xZ2"}) {
      FiniteGroup g = group_preset(name);
      for (int k = 0; k < 2; ++k) {
        ChainWindow w = circuit_window(g, 8, rng, k == 1 && g.order == 2);
        auto q = circuit_from_layers(w, random_brickwork(w, rng));
        check_all_cells(q, neutral_triple(g));
      }
    }
    ChainWindow ring = circuit_window(group_preset("Z2"), 6, rng, true);
    ring.periodic = true;
    check_all_cells(circuit_from_layers(ring, random_brickwork(ring, rng)), neutral_triple(group_preset("Z2")));
  }

  TEST_CASE("decoupling") {
    Rng rng(7);
    for (const char* name : {"Z2", "Z3", "Z2xZ2"}) {
      FiniteGroup g = group_preset(name);
      ChainWindow w = circuit_window(g, 12, rng, g.order == 2);
      auto q = circuit_from_layers(w, random_brickwork(w, rng));
      Decoupling d = decouple_trivial(q);
      CHECK(d.roundtrip_error < 1e-8);
      CHECK(!d.psi.empty());
      for (const auto& b : d.phi) CHECK_NOTHROW(check_gate(w, b));
      for (const auto& b : d.psi) CHECK_NOTHROW(check_gate(w, b));
      // the decoupled circuit agrees with the input on cells whose blocks were all rebuilt
      for (const auto& b : d.psi) {
        const Eigen::Index n = b.sites.front() / 2;
        CellMap a(q, n), c(d.decoupled, n);
        Mat x = random_complex(a.dim(1) * a.dim(2), a.dim(1) * a.dim(2), rng);
        CHECK((a(x) - c(x)).norm() < 1e-8 * a(x).norm());
      }
    }
    try {
      decouple_trivial(preset_shift(2, 12));
      FAIL("shift decoupled");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::IndexNotTrivial);
    }
  }
}
