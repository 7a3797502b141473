#include "doctest.h"
#include "util.hpp"

using namespace sqca;
using namespace tu;

TEST_SUITE("superalg") {
  TEST_CASE("parity split and supercommutator") {
    auto q = qubit();
    auto [ie, io] = parity_split(id(2), q);
    CHECK((ie - id(2)).norm() == 0);
    CHECK(io.norm() == 0);
    auto [te, to] = parity_split(sz(), q);
    CHECK((te - sz()).norm() == 0);
    CHECK(to.norm() == 0);
    auto [xe, xo] = parity_split(sx(), q);
    CHECK(xe.norm() == 0);
    CHECK((xo - sx()).norm() == 0);
    CHECK(supercommutator(id(2), sx(), q).norm() == 0);
    CHECK((supercommutator(sx(), sx(), q) - 2.0 * id(2)).norm() < 1e-15);
    CHECK((supercommutator(sz(), sx(), q) - 2.0 * sz() * sx()).norm() < 1e-15);
    Rng rng(1);
    ChainEmbedding c{{q.grading, q.grading}};
    auto amb = c.ambient();
    for (int t = 0; t < 100; ++t) {
      Mat x = random_complex(4, 4, rng), y = random_complex(4, 4, rng);
      CHECK(op_norm(supercommutator(x, y, amb)) <= 4 * op_norm(x) * op_norm(y) + 1e-12);
    }
  }

  TEST_CASE("close algebra") {
    auto q = qubit();
    CHECK(close_algebra({id(2)}, q).dim() == 1);
    auto k = close_algebra({sx()}, q);
    CHECK(k.dim() == 2);
    CHECK(k.contains(id(2)));
    CHECK(k.contains(sx()));
    Mat e12 = Mat::Zero(2, 2);
    e12(0, 1) = 1;
    CHECK(close_algebra({e12}, AmbientSpace::trivial(2)).dim() == 4);
  }

  TEST_CASE("supercommutants") {
    auto q = qubit();
    CHECK(supercommutant(scalars(q)).dim() == 4);
    CHECK(supercommutant(full_algebra(AmbientSpace::trivial(2))).dim() == 1);
    auto k = close_algebra({sx()}, q);
    auto kc = supercommutant(k);
    CHECK(kc.dim() == 2);
    CHECK(kc.contains(id(2)));
    CHECK(kc.contains(sx() * sz()));
    CHECK(frame_distance(kc.frame(), brute_supercommutant_frame(k)) < 1e-10);
    CHECK(span_distance(double_supercommutant(k), k) < 1e-10);
    CHECK(span_distance(double_supercommutant(full_algebra(q)), full_algebra(q)) < 1e-10);
    CHECK(double_supercommutant(scalars(q)).dim() == 1);

    // M_2 (x) I inside M_2 (x) M_3, trivially graded
    auto amb = AmbientSpace::trivial(6);
    std::vector<Mat> gens;
    Mat e12 = Mat::Zero(2, 2);
    e12(0, 1) = 1;
    gens.push_back(kron(e12, id(3)));
    gens.push_back(kron(sz(), id(3)));
    auto s = close_algebra(gens, amb);
    CHECK(s.dim() == 4);
    auto sc = supercommutant(s);
    CHECK(sc.dim() == 9);
    for (const auto& b : sc.basis) CHECK((kron(id(2), Mat(b.block(0, 0, 3, 3))) - b).norm() < 1e-9);
  }

  TEST_CASE("supercommutant agrees with dense oracle") {
    Rng rng(7);
    ChainEmbedding c{{qubit().grading, qubit().grading}};
    auto amb = c.ambient();
    for (int t = 0; t < 6; ++t) {
      Mat u = random_even_unitary(amb, rng);
      std::vector<Mat> gens{u * jw_embed(c, 0, sx()) * u.adjoint()};
      if (t % 2) gens.push_back(u * jw_embed(c, 1, sz()) * u.adjoint());
      if (t % 3 == 0) gens.push_back(u * jw_embed(c, 1, sy()) * u.adjoint());
      auto s = close_algebra(gens, amb);
      CHECK(frame_distance(supercommutant(s).frame(), brute_supercommutant_frame(s)) < 1e-9);
    }
  }

  TEST_CASE("intersections") {
    auto q = qubit();
    auto k = close_algebra({sx()}, q);
    CHECK(span_distance(intersect(k, k), k) < 1e-12);
    CHECK(intersect(full_algebra(AmbientSpace::trivial(2)), scalars(AmbientSpace::trivial(2))).dim() == 1);
    auto amb = AmbientSpace::trivial(4);
    auto a = close_algebra({kron(sx(), id(2)), kron(sz(), id(2))}, amb);
    auto b = close_algebra({kron(id(2), sx()), kron(id(2), sz())}, amb);
    auto ab = intersect(a, b);
    CHECK(ab.dim() == 1);
    CHECK(ab.contains(id(4)));
  }

  TEST_CASE("jordan wigner embedding") {
    ChainEmbedding c{{qubit().grading, qubit().grading}};
    CHECK((jw_embed(c, 1, sz()) - kron(id(2), sz())).norm() == 0);
    CHECK((jw_embed(c, 0, sx()) - kron(sx(), id(2))).norm() == 0);
    CHECK((jw_embed(c, 1, sx()) - kron(sz(), sx())).norm() == 0);
    auto amb = c.ambient();
    CHECK(supercommutator(jw_embed(c, 0, sx()), jw_embed(c, 1, sx()), amb).norm() < 1e-15);
    CHECK_THROWS_AS(jw_embed(c, 2, sx()), Error);
    ChainEmbedding c3{{qubit().grading, Eigen::VectorXi::Ones(3), qubit().grading}};
    auto a3 = c3.ambient();
    std::vector<Mat> locals{sx(), sy(), sz(), Mat(sx() + sz())};
    for (const auto& x : locals)
      for (const auto& y : locals) {
        CHECK(supercommutator(jw_embed(c3, 0, x), jw_embed(c3, 2, y), a3).norm() < 1e-12);
        CHECK(supercommutator(jw_embed(c3, 1, Mat(Mat::Ones(3, 3))), jw_embed(c3, 2, y), a3).norm() < 1e-12);
      }
  }

  TEST_CASE("classification") {
    auto q = qubit();
    auto m11 = full_algebra(q);
    auto s = classify_central_simple(m11);
    REQUIRE_FALSE(s.is_radical());
    CHECK(s.rational().p == 1);
    CHECK(s.rational().q == 1);
    CHECK((s.rational().grading_operator - sz()).norm() < 1e-9);
    auto k = close_algebra({sx()}, q);
    auto sk = classify_central_simple(k);
    REQUIRE(sk.is_radical());
    CHECK(sk.radical().n == 1);
    CHECK((sk.radical().epsilon - sx()).norm() < 1e-9);
    auto triv = classify_central_simple(full_algebra(AmbientSpace::trivial(3)));
    CHECK(triv.rational().p == 3);
    CHECK(triv.rational().q == 0);
    // M^{2|1} with multiplicity 2
    Eigen::VectorXi g(3);
    g << 1, 1, -1;
    ChainEmbedding c{{g, Eigen::VectorXi::Ones(2)}};
    auto big = region_algebra(c, {0});
    auto sb = classify_central_simple(big);
    CHECK(sb.rational().p + sb.rational().q == 3);
    CHECK(sb.rational().p * sb.rational().q == 2);
    // K (x) K is M^{1|1}
    auto kk = graded_tensor(k, k);
    auto skk = classify_central_simple(kk);
    CHECK_FALSE(skk.is_radical());
    CHECK(skk.rational().p == 1);
    CHECK(skk.rational().q == 1);
    // M^{1|1} (x) K is radical with n = 2
    auto mk = graded_tensor(m11, k);
    auto smk = classify_central_simple(mk);
    REQUIRE(smk.is_radical());
    CHECK(smk.radical().n == 2);
    CHECK(mk.dim() == 8);
    // two copies of M_2 is not central simple
    auto amb = AmbientSpace::trivial(4);
    Mat p0 = Mat::Zero(4, 4);
    p0.topLeftCorner(2, 2) = id(2);
    auto ds = close_algebra({p0, kron(sx(), sx()), kron(id(2), sz())}, amb);
    CHECK_THROWS_AS(classify_central_simple(ds), Error);
  }

  TEST_CASE("inner intertwiners") {
    auto triv = full_algebra(AmbientSpace::trivial(2));
    auto v = inner_intertwiner(triv, [](const Mat& x) { return x; });
    CHECK((v - id(2)).norm() < 1e-9);
    Mat x = sx();
    auto w = inner_intertwiner(triv, [&](const Mat& y) { return Mat(x * y * x); });
    CHECK(std::abs(std::abs(hs_inner(w, sx())) - 1.0) < 1e-9);
    auto q = qubit();
    auto t = inner_intertwiner(full_algebra(q), [&](const Mat& y) { return q.theta_conj(y); }, true);
    CHECK((t - sz()).norm() < 1e-9);
  }

  TEST_CASE("graded tensor automorphisms") {
    auto q = qubit();
    CHECK((graded_tensor_autom(sx(), 1, sx(), 1, q, q) - kron(sx(), Mat(sx() * sz()))).norm() < 1e-15);
    CHECK((graded_tensor_autom(sz(), 0, sx(), 1, q, q) - kron(sz(), sx())).norm() < 1e-15);
    CHECK((graded_tensor_autom(sx(), 1, id(2), 0, q, q) - kron(sx(), sz())).norm() < 1e-15);
    CHECK_THROWS_AS(graded_tensor_autom(sx(), 0, id(2), 0, q, q), Error);
    Rng rng(5);
    auto full = full_algebra(q);
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2) {
        Mat u1 = x1 ? Mat(sx() * expi_hermitian(0.3 * sz())) : expi_hermitian(0.7 * sz());
        Mat u2 = x2 ? Mat(sy()) : expi_hermitian(-0.4 * sz());
        Mat w = graded_tensor_autom(u1, x1, u2, x2, q, q);
        for (const auto& b1 : full.basis)
          for (const auto& b2 : full.basis) {
            Mat lhs = w * graded_kron(b1, b2, q, q) * w.adjoint();
            Mat rhs = graded_kron(Mat(u1 * b1 * u1.adjoint()), Mat(u2 * b2 * u2.adjoint()), q, q);
            CHECK((lhs - rhs).norm() < 1e-12);
          }
      }
  }
}
