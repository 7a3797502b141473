#include "sqca/group.hpp"

#include "sqca/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace sqca {

namespace {

FiniteGroup from_closure(int count, const std::function<int(int, int)>& mul, std::string name) {
  std::vector<std::vector<int>> t(std::size_t(count), std::vector<int>(std::size_t(count), 0));
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) t[std::size_t(a)][std::size_t(b)] = mul(a, b);
  return group_from_table(t, std::move(name));
}

// elements generated by matrices, identity first, breadth-first
std::vector<Mat> matrix_closure(const std::vector<Mat>& gens) {
  std::vector<Mat> els{Mat::Identity(gens[0].rows(), gens[0].cols())};
  auto find = [&](const Mat& m) {
    for (std::size_t i = 0; i < els.size(); ++i)
      if ((els[i] - m).norm() < 1e-9) return int(i);
    return -1;
  };
  for (std::size_t i = 0; i < els.size(); ++i)
    for (const auto& g : gens) {
      Mat p = els[i] * g;
      if (find(p) < 0) els.push_back(p);
    }
  return els;
}

FiniteGroup matrix_group(const std::vector<Mat>& gens, std::string name) {
  auto els = matrix_closure(gens);
  auto find = [&](const Mat& m) {
    for (std::size_t i = 0; i < els.size(); ++i)
      if ((els[i] - m).norm() < 1e-9) return int(i);
    return -1;
  };
  return from_closure(int(els.size()), [&](int a, int b) { return find(els[std::size_t(a)] * els[std::size_t(b)]); },
                      std::move(name));
}

Mat perm_matrix(const std::vector<int>& p) {
  const int n = int(p.size());
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(p[std::size_t(i)], i) = 1.0;
  return m;
}

std::vector<int> non_identity(const FiniteGroup& g) {
  std::vector<int> out;
  for (int a = 0; a < g.order; ++a)
    if (a != g.identity) out.push_back(a);
  return out;
}

// normalized coboundary map C^1 -> C^2, rows (g,h) row-major over non-identity elements
IMat delta1(const FiniteGroup& g) {
  auto ne = non_identity(g);
  const Eigen::Index n = Eigen::Index(ne.size());
  std::vector<Eigen::Index> pos(std::size_t(g.order), -1);
  for (Eigen::Index i = 0; i < n; ++i) pos[std::size_t(ne[std::size_t(i)])] = i;
  IMat d = IMat::Zero(n * n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index row = i * n + j;
      d(row, i) += 1;
      d(row, j) += 1;
      int p = g.mul(ne[std::size_t(i)], ne[std::size_t(j)]);
      if (p != g.identity) d(row, pos[std::size_t(p)]) -= 1;
    }
  return d;
}

IMat delta2(const FiniteGroup& g) {
  auto ne = non_identity(g);
  const Eigen::Index n = Eigen::Index(ne.size());
  std::vector<Eigen::Index> pos(std::size_t(g.order), -1);
  for (Eigen::Index i = 0; i < n; ++i) pos[std::size_t(ne[std::size_t(i)])] = i;
  auto idx = [&](int a, int b) -> Eigen::Index {
    if (a == g.identity || b == g.identity) return -1;
    return pos[std::size_t(a)] * n + pos[std::size_t(b)];
  };
  IMat d = IMat::Zero(n * n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l) {
        int a = ne[std::size_t(i)], b = ne[std::size_t(j)], c = ne[std::size_t(l)];
        Eigen::Index row = (i * n + j) * n + l;
        auto add = [&](Eigen::Index col, int s) {
          if (col >= 0) d(row, col) += s;
        };
        add(idx(a, b), 1);
        add(idx(g.mul(a, b), c), 1);
        add(idx(b, c), -1);
        add(idx(a, g.mul(b, c)), -1);
      }
  return d;
}

IMat full_to_normalized(const FiniteGroup& g, const IMat& k) {
  auto ne = non_identity(g);
  const Eigen::Index n = Eigen::Index(ne.size());
  IMat v(n * n, 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j, 0) = k(ne[std::size_t(i)], ne[std::size_t(j)]);
  return v;
}

IMat normalized_to_full(const FiniteGroup& g, const IMat& v) {
  auto ne = non_identity(g);
  const Eigen::Index n = Eigen::Index(ne.size());
  IMat k = IMat::Zero(g.order, g.order);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) k(ne[std::size_t(i)], ne[std::size_t(j)]) = v(i * n + j, 0);
  return k;
}

// nu = nu_n * coboundary(mu) with nu_n normalized and valued in |G|-th roots of unity
std::pair<Cocycle2, Vec> root_normalize(const FiniteGroup& g, const Cocycle2& nu) {
  const int n = g.order;
  Vec mu(n);
  for (int a = 0; a < n; ++a) {
    double ang = 0.0;
    for (int b = 0; b < n; ++b) ang += std::arg(nu.phases(a, b));
    mu(a) = std::polar(1.0, ang / n);
  }
  Cocycle2 r;
  r.phases = Mat(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) r.phases(a, b) = nu.phases(a, b) * mu(g.mul(a, b)) / (mu(a) * mu(b));
  cplx c = r.phases(g.identity, g.identity);
  r.phases /= c;
  mu *= c;
  return {r, mu};
}


}  // namespace

FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows, std::string name) {
  const int n = int(rows.size());
  if (n == 0) throw Error(Errc::InvalidInput, "empty table");
  FiniteGroup g;
  g.order = n;
  g.name = std::move(name);
  g.table.assign(std::size_t(n * n), 0);
  for (int a = 0; a < n; ++a) {
    if (int(rows[std::size_t(a)].size()) != n) throw Error(Errc::InvalidInput, "table not square");
    for (int b = 0; b < n; ++b) {
      int v = rows[std::size_t(a)][std::size_t(b)];
      if (v < 0 || v >= n) throw Error(Errc::InvalidInput, "table entry out of range");
      g.table[std::size_t(a * n + b)] = v;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw Error(Errc::NotAssociative, "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                std::to_string(c) + ")");
  g.identity = -1;
  for (int e = 0; e < n && g.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) g.identity = e;
  }
  if (g.identity < 0) throw Error(Errc::NoIdentity, "no two-sided identity");
  g.inverses.assign(std::size_t(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) g.inverses[std::size_t(a)] = b;
    if (g.inverses[std::size_t(a)] < 0) throw Error(Errc::NoInverse, "element " + std::to_string(a));
  }
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "cyclic group order");
  return from_closure(n, [n](int a, int b) { return (a + b) % n; }, n == 1 ? "trivial" : "Z" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int nb = b.order;
  return from_closure(a.order * nb,
                      [&](int x, int y) { return a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb); },
                      a.name + "x" + b.name);
}

std::vector<std::string> group_preset_names() { return {"trivial", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8"}; }

FiniteGroup group_preset(const std::string& name) {
  if (name == "trivial") return cyclic_group(1);
  if (name == "Z2") return cyclic_group(2);
  if (name == "Z3") return cyclic_group(3);
  if (name == "Z4") return cyclic_group(4);
  if (name == "Z2xZ2") return from_closure(4, [](int a, int b) { return a ^ b; }, "Z2xZ2");
  if (name == "S3") return matrix_group({perm_matrix({1, 0, 2}), perm_matrix({1, 2, 0})}, "S3");
  if (name == "D4") return matrix_group({perm_matrix({1, 2, 3, 0}), perm_matrix({0, 3, 2, 1})}, "D4");
  if (name == "Q8") {
    const cplx i(0, 1);
    Mat qi(2, 2), qj(2, 2);
    qi << i, 0, 0, -i;
    qj << 0, 1, -1, 0;
    return matrix_group({qi, qj}, "Q8");
  }
  throw Error(Errc::InvalidInput, "unknown group preset " + name);
}

ParityExtension parity_extend(const FiniteGroup& g) {
  const int n = g.order;
  ParityExtension p;
  p.group = from_closure(2 * n, [&](int x, int y) { return ((x / n + y / n) % 2) * n + g.mul(x % n, y % n); },
                         "Z2x" + (g.name.empty() ? std::string("G") : g.name));
  p.embed.resize(std::size_t(n));
  for (int a = 0; a < n; ++a) p.embed[std::size_t(a)] = a;
  p.theta = n + g.identity;
  return p;
}

bool is_z2_hom(const FiniteGroup& g, const Z2Hom& z) {
  if (int(z.values.size()) != g.order) return false;
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      if ((z.values[std::size_t(a)] + z.values[std::size_t(b)]) % 2 != z.values[std::size_t(g.mul(a, b))])
        return false;
  return true;
}

namespace {

std::vector<IMat> hom_exponents(const FiniteGroup& g, std::int64_t m) {
  IMat d = delta1(g);
  if (d.cols() == 0) return {IMat::Zero(0, 1)};
  auto s = zmod::smith(d, m);
  IMat k = zmod::kernel(s);
  return zmod::span_elements(k, m, 1u << 20);
}

}  // namespace

std::vector<Z2Hom> enumerate_z2_homs(const FiniteGroup& g) {
  if (g.order > config().hom_cap) throw Error(Errc::GroupTooLarge, "order " + std::to_string(g.order));
  auto ne = non_identity(g);
  std::vector<Z2Hom> out;
  for (const auto& v : hom_exponents(g, 2)) {
    Z2Hom z;
    z.values.assign(std::size_t(g.order), 0);
    for (std::size_t i = 0; i < ne.size(); ++i) z.values[std::size_t(ne[i])] = int(v(Eigen::Index(i), 0));
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const Z2Hom& a, const Z2Hom& b) { return a.values < b.values; });
  return out;
}

std::vector<Vec> enumerate_characters(const FiniteGroup& g) {
  if (g.order > config().hom_cap) throw Error(Errc::GroupTooLarge, "order " + std::to_string(g.order));
  auto ne = non_identity(g);
  std::vector<Vec> out;
  for (const auto& v : hom_exponents(g, g.order)) {
    Vec chi = Vec::Ones(g.order);
    for (std::size_t i = 0; i < ne.size(); ++i)
      chi(ne[i]) = std::polar(1.0, 2 * kPi * double(v(Eigen::Index(i), 0)) / g.order);
    out.push_back(chi);
  }
  return out;
}

Cocycle2 trivial_cocycle(const FiniteGroup& g) { return {Mat::Ones(g.order, g.order)}; }

Cocycle2 coboundary(const FiniteGroup& g, const Vec& mu) {
  Cocycle2 c{Mat(g.order, g.order)};
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) c.phases(a, b) = mu(a) * mu(b) / mu(g.mul(a, b));
  return c;
}

Cocycle2 cocycle_mul(const Cocycle2& a, const Cocycle2& b) { return {a.phases.cwiseProduct(b.phases)}; }

Cocycle2 cocycle_inv(const Cocycle2& a) { return {a.phases.conjugate()}; }

Cocycle2 cocycle_from_exponents(const IMat& k, std::int64_t m) {
  Cocycle2 c{Mat(k.rows(), k.cols())};
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      c.phases(i, j) = std::polar(1.0, 2 * kPi * double(zmod::mod(k(i, j), m)) / double(m));
  return c;
}

CocycleReport is_cocycle(const FiniteGroup& g, const Cocycle2& nu) {
  CocycleReport r;
  const int n = g.order;
  if (nu.phases.rows() != n || nu.phases.cols() != n) throw Error(Errc::DimensionMismatch, "cocycle shape");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        cplx lhs = nu.phases(a, b) * nu.phases(g.mul(a, b), c);
        cplx rhs = nu.phases(b, c) * nu.phases(a, g.mul(b, c));
        double v = std::abs(lhs - rhs);
        if (v > r.worst) {
          r.worst = v;
          r.g = a;
          r.h = b;
          r.k = c;
        }
      }
  r.ok = r.worst <= config().tol_cocycle;
  return r;
}

IMat snap_cocycle(const FiniteGroup& g, const Cocycle2& nu, std::int64_t m) {
  const int n = g.order;
  IMat k(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx z = nu.phases(a, b);
      double t = std::arg(z) * double(m) / (2 * kPi);
      std::int64_t e = std::llround(t);
      double dist = std::abs(z - std::polar(1.0, 2 * kPi * double(e) / double(m)));
      if (dist > config().tol_snap)
        throw Error(Errc::SnapFailure, "(" + std::to_string(a) + "," + std::to_string(b) +
                                           ") distance " + std::to_string(dist));
      k(a, b) = zmod::mod(e, m);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (zmod::mod(k(a, b) + k(g.mul(a, b), c) - k(b, c) - k(a, g.mul(b, c)), m) != 0)
          throw Error(Errc::SnapFailure, "snapped exponents violate the cocycle identity");
  return k;
}

std::optional<Vec> cohomologous(const FiniteGroup& g, const Cocycle2& nu1, const Cocycle2& nu2) {
  Cocycle2 ratio{nu2.phases.cwiseProduct(nu1.phases.conjugate())};
  auto [r, mu0] = root_normalize(g, ratio);
  const std::int64_t m = g.order;
  IMat k = snap_cocycle(g, r, m);
  IMat d = delta1(g);
  Vec mu = mu0;
  if (d.cols() > 0) {
    auto s = zmod::smith(d, m);
    auto a = zmod::solve(s, full_to_normalized(g, k));
    if (!a) return std::nullopt;
    auto ne = non_identity(g);
    for (std::size_t i = 0; i < ne.size(); ++i)
      mu(ne[i]) *= std::polar(1.0, 2 * kPi * double((*a)(Eigen::Index(i), 0)) / double(m));
  }
  Mat check = coboundary(g, mu).phases.cwiseProduct(nu1.phases) - nu2.phases;
  if (check.cwiseAbs().maxCoeff() > 1e-6) throw Error(Errc::SnapFailure, "witness failed verification");
  return mu;
}

Cocycle2 twist_class(const FiniteGroup& g, const Z2Hom& z1, const Z2Hom& z2) {
  Cocycle2 c{Mat(g.order, g.order)};
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      c.phases(a, b) = (z1.values[std::size_t(a)] * z2.values[std::size_t(b)]) % 2 ? -1.0 : 1.0;
  return c;
}

CohomClass canonical_class(const FiniteGroup& g, const Cocycle2& nu) {
  const std::int64_t m = g.order;
  auto [r, mu0] = root_normalize(g, nu);
  (void)mu0;
  IMat k = snap_cocycle(g, r, m);
  CohomClass c;
  c.modulus = m;
  IMat d = delta1(g);
  if (d.cols() == 0) {
    c.canonical = IMat::Zero(g.order, g.order);
    return c;
  }
  auto h = zmod::howell(d.transpose(), m);
  IMat v = full_to_normalized(g, k).transpose();
  IMat red = zmod::reduce(h, v);
  c.canonical = normalized_to_full(g, red.transpose());
  return c;
}

std::vector<Cocycle2> h2_representatives(const FiniteGroup& g, std::int64_t m) {
  if (g.order > config().h2_group_cap || m > config().h2_modulus_cap || m < 1)
    throw Error(Errc::TooLarge, "h2_enumerate limits |G| <= " + std::to_string(config().h2_group_cap) +
                                    ", m <= " + std::to_string(config().h2_modulus_cap));
  std::vector<Cocycle2> reps{trivial_cocycle(g)};
  std::vector<CohomClass> classes{canonical_class(g, reps[0])};
  IMat d2 = delta2(g);
  if (d2.cols() == 0) return reps;
  IMat gens = zmod::kernel(zmod::smith(d2, m));
  std::vector<Cocycle2> gen_cocycles;
  for (Eigen::Index j = 0; j < gens.cols(); ++j)
    gen_cocycles.push_back(cocycle_from_exponents(normalized_to_full(g, gens.col(j)), m));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& gc : gen_cocycles) {
      Cocycle2 p = cocycle_mul(reps[i], gc);
      CohomClass c = canonical_class(g, p);
      if (std::find(classes.begin(), classes.end(), c) == classes.end()) {
        classes.push_back(c);
        reps.push_back(p);
      }
    }
  return reps;
}

std::vector<CohomClass> h2_enumerate(const FiniteGroup& g, std::int64_t m) {
  std::vector<CohomClass> out;
  for (const auto& r : h2_representatives(g, m)) out.push_back(canonical_class(g, r));
  return out;
}

}  // namespace sqca
