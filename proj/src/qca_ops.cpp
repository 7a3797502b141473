#include "sqca/qca.hpp"

#include <algorithm>
#include <cmath>

namespace sqca {

namespace {

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

void check_ambient(Eigen::Index n) {
  if (n > config().max_ambient)
    throw Error(Errc::AmbientTooLarge,
                "dimension " + std::to_string(n) + " exceeds the cap " + std::to_string(config().max_ambient));
}

std::vector<Eigen::Index> open_cells(Eigen::Index s) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index n = 1; 2 * n + 2 <= s - 1; ++n) out.push_back(n);
  return out;
}

ChainEmbedding patch_embedding(const ChainWindow& w, Eigen::Index n) {
  return w.embedding({2 * n - 1, 2 * n, 2 * n + 1, 2 * n + 2});
}

int unitary_parity(const Mat& u, const AmbientSpace& amb) {
  int x = parity_of(u, amb, 1e-8);
  if (x < 0) throw Error(Errc::ParityMismatch, "implementing unitary is not homogeneous");
  return x;
}

// U1 (x) U2 Theta^{xi1}, reordered so that the k-th sites of both chains become neighbours
Mat interleave(const Mat& u1, const std::vector<Eigen::VectorXi>& g1, const Mat& u2,
               const std::vector<Eigen::VectorXi>& g2) {
  AmbientSpace a1 = ChainEmbedding{g1}.ambient(), a2 = ChainEmbedding{g2}.ambient();
  check_ambient(a1.dim() * a2.dim());
  Mat t = graded_tensor_autom(u1, unitary_parity(u1, a1), u2, unitary_parity(u2, a2), a1, a2);
  const Eigen::Index s = Eigen::Index(g1.size());
  std::vector<Eigen::VectorXi> all = g1;
  all.insert(all.end(), g2.begin(), g2.end());
  std::vector<Eigen::Index> sigma(static_cast<std::size_t>(2 * s));
  for (Eigen::Index j = 0; j < s; ++j) {
    sigma[std::size_t(j)] = 2 * j;
    sigma[std::size_t(s + j)] = 2 * j + 1;
  }
  return graded_permutation(all, sigma).conjugate(t);
}

void require_identical_sites(const ChainWindow& w) {
  for (const auto& s : w.sites) {
    const Site& f = w.sites.front();
    if (s.grading != f.grading) throw Error(Errc::InvalidInput, "shift needs identical sites");
    for (int g = 0; g < w.group.order; ++g) {
      try {
        extract_scalar(s.rep[std::size_t(g)], f.rep[std::size_t(g)], 1e-9);
      } catch (const Error&) {
        throw Error(Errc::NotEquivariant, "translation does not commute with the on-site action");
      }
    }
  }
}

}  // namespace

QcaRealization identity_qca(const ChainWindow& w) {
  validate_window(w);
  QcaRealization q;
  q.window = w;
  q.provenance = "identity";
  if (w.periodic) {
    check_ambient(w.total_dim());
    q.kind = RealizationKind::GlobalUnitary;
    q.unitary = identity(w.total_dim());
    return q;
  }
  q.kind = RealizationKind::BlockMaps;
  q.patches.resize(std::size_t(w.size()));
  for (auto n : open_cells(w.size())) {
    Eigen::Index p = patch_embedding(w, n).total_dim();
    check_ambient(p);
    q.patches[std::size_t(n)] = identity(p);
  }
  return q;
}

QcaRealization compose_qca(const QcaRealization& a, const QcaRealization& b) {
  if (!same_window(a.window, b.window)) throw Error(Errc::WindowMismatch, "composition needs the same window");
  if (a.kind != RealizationKind::GlobalUnitary || b.kind != RealizationKind::GlobalUnitary)
    throw Error(Errc::Unsupported, "composition of block maps leaves nearest neighbour range; use global unitaries");
  QcaRealization q = a;
  q.unitary = a.unitary * b.unitary;
  q.provenance = "(" + a.provenance + ") o (" + b.provenance + ")";
  return q;
}

QcaRealization stack_qca(const QcaRealization& a, const QcaRealization& b) {
  const ChainWindow &wa = a.window, &wb = b.window;
  if (wa.group.order != wb.group.order || wa.group.table != wb.group.table)
    throw Error(Errc::WindowMismatch, "stacking needs the same group");
  if (wa.size() != wb.size() || wa.periodic != wb.periodic) throw Error(Errc::WindowMismatch, "window shapes differ");
  if (a.kind != b.kind) throw Error(Errc::WindowMismatch, "realization kinds differ");
  QcaRealization q;
  q.kind = a.kind;
  q.window.group = wa.group;
  q.window.periodic = wa.periodic;
  for (Eigen::Index j = 0; j < wa.size(); ++j)
    q.window.sites.push_back(site_tensor(wa.sites[std::size_t(j)], wb.sites[std::size_t(j)]));
  q.provenance = "(" + a.provenance + ") (x) (" + b.provenance + ")";
  q.block_size = a.block_size;
  if (a.kind == RealizationKind::GlobalUnitary) {
    q.unitary = interleave(a.unitary, wa.embedding().site_gradings, b.unitary, wb.embedding().site_gradings);
    return q;
  }
  q.patches.resize(std::max(a.patches.size(), b.patches.size()));
  for (std::size_t n = 0; n < q.patches.size(); ++n) {
    if (n >= a.patches.size() || n >= b.patches.size()) continue;
    if (a.patches[n].size() == 0 || b.patches[n].size() == 0) continue;
    const Eigen::Index c = Eigen::Index(n);
    q.patches[n] = interleave(a.patches[n], patch_embedding(wa, c).site_gradings, b.patches[n],
                              patch_embedding(wb, c).site_gradings);
  }
  return q;
}

QcaRealization coarse_grain(const QcaRealization& q, int f) {
  if (f < 1) throw Error(Errc::InvalidInput, "coarse graining factor must be positive");
  if (f == 1) return q;
  const ChainWindow& w = q.window;
  const Eigen::Index s = w.size();
  if (s % f) throw Error(Errc::NotNearestNeighbourAfterGrouping, "factor does not divide the window");
  QcaRealization out;
  out.kind = q.kind;
  out.block_size = q.block_size * f;
  out.provenance = "coarse_grain(" + q.provenance + ", " + std::to_string(f) + ")";
  out.window.group = w.group;
  out.window.periodic = w.periodic;
  for (Eigen::Index k = 0; k < s / f; ++k) {
    Site acc = w.sites[std::size_t(k * f)];
    for (Eigen::Index j = 1; j < f; ++j) acc = site_tensor(acc, w.sites[std::size_t(k * f + j)]);
    out.window.sites.push_back(acc);
  }
  if (q.kind == RealizationKind::GlobalUnitary) {
    out.unitary = q.unitary;
    if (admissible_cells(out).empty())
      throw Error(Errc::NotNearestNeighbourAfterGrouping, "grouped window has no admissible cell");
    for (auto n : admissible_cells(out))
      if (CellMap(out, n).containment_defect() > kContainmentTol)
        throw Error(Errc::NotNearestNeighbourAfterGrouping, "not nearest neighbour on cell " + std::to_string(n));
    return out;
  }
  if (w.periodic) throw Error(Errc::Unsupported, "block maps on periodic windows");
  const Eigen::Index sn = s / f;
  out.patches.resize(std::size_t(sn));
  auto old_cells = admissible_cells(q);
  auto has = [&](Eigen::Index m) { return std::find(old_cells.begin(), old_cells.end(), m) != old_cells.end(); };
  for (auto n : open_cells(sn)) {
    bool ok = true;
    for (Eigen::Index m = f * n; m < f * n + f; ++m) ok = ok && has(m);
    if (!ok) continue;
    const Eigen::Index o = f * (2 * n - 1);
    std::vector<Eigen::Index> fine_sites;
    for (Eigen::Index j = o; j < o + 4 * f; ++j) fine_sites.push_back(j);
    ChainEmbedding fine = w.embedding(fine_sites);
    check_ambient(fine.total_dim());
    std::vector<Eigen::Index> region;
    for (Eigen::Index j = f; j < 3 * f; ++j) region.push_back(j);
    auto phi = [&](Eigen::Index pos, const Mat& x) -> Mat {
      const Eigen::Index j = o + pos;
      const Eigen::Index m = j / 2;
      const Mat& u = q.patches[std::size_t(m)];
      ChainEmbedding old = patch_embedding(w, m);
      Mat y = u * jw_embed(old, j - (2 * m - 1), x) * u.adjoint();
      return embed_block(fine, 2 * m - 1 - o, y);
    };
    out.patches[std::size_t(n)] = implement_on_region(fine, region, phi);
  }
  if (admissible_cells(out).empty())
    throw Error(Errc::NotNearestNeighbourAfterGrouping, "grouped window has no admissible cell");
  return out;
}

QcaRealization inverse_qca(const QcaRealization& q) {
  if (q.kind != RealizationKind::GlobalUnitary)
    throw Error(Errc::Unsupported, "inverse of block maps; use the left-moving preset");
  QcaRealization out = q;
  out.unitary = q.unitary.adjoint();
  out.provenance = "inverse(" + q.provenance + ")";
  return out;
}

QcaRealization preset_site_shift(const ChainWindow& w, bool left) {
  validate_window(w);
  require_identical_sites(w);
  const Eigen::Index s = w.size();
  QcaRealization q;
  q.window = w;
  q.provenance = left ? "left shift" : "shift";
  if (w.periodic) {
    if (s < 4 || s % 2) throw Error(Errc::WindowTooSmall, "periodic windows need an even number of at least 4 sites");
    check_ambient(w.total_dim());
    std::vector<Eigen::Index> sigma(static_cast<std::size_t>(s));
    for (Eigen::Index j = 0; j < s; ++j) sigma[std::size_t(j)] = ((j + (left ? -1 : 1)) % s + s) % s;
    q.kind = RealizationKind::GlobalUnitary;
    q.unitary = graded_permutation(w.embedding().site_gradings, sigma).matrix();
    return q;
  }
  if (s < 6) throw Error(Errc::WindowTooSmall, "shift presets need at least 6 sites");
  q.kind = RealizationKind::BlockMaps;
  q.patches.resize(std::size_t(s));
  for (auto n : open_cells(s)) {
    auto pe = patch_embedding(w, n);
    check_ambient(pe.total_dim());
    std::vector<Eigen::Index> sigma(4);
    for (Eigen::Index k = 0; k < 4; ++k) sigma[std::size_t(k)] = ((k + (left ? -1 : 1)) % 4 + 4) % 4;
    q.patches[std::size_t(n)] = graded_permutation(pe.site_gradings, sigma).matrix();
  }
  return q;
}

QcaRealization preset_shift(int d, Eigen::Index sites, bool left, bool periodic) {
  if (d < 1) throw Error(Errc::InvalidInput, "site dimension must be positive");
  FiniteGroup g = group_preset("trivial");
  QcaRealization q = preset_site_shift(uniform_window(g, plain_site(g, d), sites, periodic), left);
  q.provenance = std::string(left ? "left_shift(" : "shift(") + std::to_string(d) + ")";
  return q;
}

QcaRealization preset_majorana_shift(Eigen::Index sites, bool left, bool periodic, bool swap_order) {
  FiniteGroup g = group_preset("trivial");
  Eigen::VectorXi gr(2);
  gr << 1, -1;
  ChainWindow w = uniform_window(g, graded_site(g, gr), sites, periodic);
  Mat sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  const Mat el = swap_order ? sy : sx;
  const Mat er = swap_order ? sx : sy;
  const Mat elr = el * er;
  QcaRealization q;
  q.window = w;
  q.provenance = std::string(left ? "left_majorana_shift" : "majorana_shift") + (swap_order ? "(swapped)" : "");
  auto build = [&](const ChainEmbedding& chain, const std::vector<Eigen::Index>& region, bool ring) {
    const Eigen::Index s = chain.site_count();
    auto wrap = [&](Eigen::Index j) { return ring ? ((j % s) + s) % s : j; };
    auto image_l = [&](Eigen::Index j) {
      return left ? jw_embed(chain, wrap(j - 1), er) : jw_embed(chain, j, er);
    };
    auto image_r = [&](Eigen::Index j) {
      return left ? jw_embed(chain, j, el) : jw_embed(chain, wrap(j + 1), el);
    };
    auto phi = [&](Eigen::Index j, const Mat& x) -> Mat {
      const Eigen::Index n = chain.total_dim();
      cplx c0 = x.trace() / 2.0, c1 = (el * x).trace() / 2.0, c2 = (er * x).trace() / 2.0,
           c3 = (elr.adjoint() * x).trace() / 2.0;
      Mat a = image_l(j), b = image_r(j);
      return c0 * identity(n) + c1 * a + c2 * b + c3 * a * b;
    };
    return implement_on_region(chain, region, phi);
  };
  const Eigen::Index s = w.size();
  if (periodic) {
    if (s < 4 || s % 2) throw Error(Errc::WindowTooSmall, "periodic windows need an even number of at least 4 sites");
    check_ambient(w.total_dim());
    std::vector<Eigen::Index> all;
    for (Eigen::Index j = 0; j < s; ++j) all.push_back(j);
    q.kind = RealizationKind::GlobalUnitary;
    q.unitary = build(w.embedding(), all, true);
    return q;
  }
  if (s < 6) throw Error(Errc::WindowTooSmall, "shift presets need at least 6 sites");
  q.kind = RealizationKind::BlockMaps;
  q.patches.resize(std::size_t(s));
  for (auto n : open_cells(s)) q.patches[std::size_t(n)] = build(patch_embedding(w, n), {1, 2}, false);
  return q;
}

namespace {

void require_rep(const FiniteGroup& g, const std::vector<Mat>& v, bool genuine) {
  if (int(v.size()) != g.order) throw Error(Errc::InvalidInput, "one matrix per group element required");
  const Eigen::Index d = v.front().rows();
  for (const auto& u : v)
    if (u.rows() != d || u.cols() != d || (u.adjoint() * u - identity(d)).norm() > 1e-9)
      throw Error(genuine ? Errc::NotARepresentation : Errc::NotProjective, "matrices are not unitary of equal size");
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      Mat lhs = v[std::size_t(a)] * v[std::size_t(b)];
      const Mat& rhs = v[std::size_t(g.mul(a, b))];
      if (genuine) {
        if ((lhs - rhs).norm() > 1e-9) throw Error(Errc::NotARepresentation, "v(g) v(h) != v(gh)");
      } else {
        try {
          extract_scalar(lhs, rhs, 1e-9);
        } catch (const Error&) {
          throw Error(Errc::NotProjective, "v(g) v(h) is not proportional to v(gh)");
        }
      }
    }
}

}  // namespace

QcaRealization preset_zeta_example(const FiniteGroup& g, const std::vector<Mat>& v, const Z2Hom& zeta,
                                   Eigen::Index sites, bool half_sites) {
  require_rep(g, v, true);
  if (!is_z2_hom(g, zeta)) throw Error(Errc::InvalidInput, "zeta is not a homomorphism to Z2");
  if (sites < 6) throw Error(Errc::WindowTooSmall, "presets need at least 6 sites");
  const Eigen::Index d = v.front().rows();
  Site half;
  half.grading.resize(2 * d);
  half.grading.head(d).setOnes();
  half.grading.tail(d).setConstant(-1);
  for (int a = 0; a < g.order; ++a) {
    Mat u = Mat::Zero(2 * d, 2 * d);
    const Mat& va = v[std::size_t(a)];
    if (zeta.values[std::size_t(a)]) {
      u.topRightCorner(d, d) = va;
      u.bottomLeftCorner(d, d) = va;
    } else {
      u.topLeftCorner(d, d) = va;
      u.bottomRightCorner(d, d) = va;
    }
    half.rep.push_back(u);
  }
  QcaRealization fine = preset_site_shift(uniform_window(g, half, 2 * sites), false);
  fine.provenance = "zeta_example";
  if (half_sites) return fine;
  QcaRealization q = coarse_grain(fine, 2);
  q.block_size = 1;
  q.provenance = "zeta_example";
  return q;
}

QcaRealization preset_cocycle_example(const FiniteGroup& g, const std::vector<Mat>& v, Eigen::Index sites,
                                      bool half_sites) {
  require_rep(g, v, false);
  if (sites < 6) throw Error(Errc::WindowTooSmall, "presets need at least 6 sites");
  Site l = plain_site(g, v.front().rows());
  l.rep = v;
  Site r = conjugate_site(l);
  ChainWindow w;
  w.group = g;
  for (Eigen::Index j = 0; j < sites; ++j) {
    w.sites.push_back(l);
    w.sites.push_back(r);
  }
  QcaRealization fine = preset_site_shift(w, false);
  fine.provenance = "cocycle_example";
  if (half_sites) return fine;
  QcaRealization q = coarse_grain(fine, 2);
  q.block_size = 1;
  q.provenance = "cocycle_example";
  return q;
}

}  // namespace sqca
