#include "sqca/qca.hpp"
#include "sqca/nearincl.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sqca {

namespace {

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

bool consecutive(const ChainWindow& w, const std::vector<Eigen::Index>& sites) {
  if (sites.empty()) return false;
  for (std::size_t k = 1; k < sites.size(); ++k)
    if (w.wrap(sites[k - 1] + 1) != w.wrap(sites[k])) return false;
  return true;
}

// gate on the listed positions of a chain, wrapping around its end if needed
Mat embed_gate(const std::vector<Eigen::VectorXi>& gradings, const std::vector<Eigen::Index>& positions,
               const Mat& u) {
  const Eigen::Index s = Eigen::Index(gradings.size());
  const Eigen::Index first = positions.front();
  bool straight = true;
  for (std::size_t k = 1; k < positions.size(); ++k) straight = straight && positions[k] == positions[k - 1] + 1;
  if (straight) return embed_block(ChainEmbedding{gradings}, first, u);
  std::vector<Eigen::Index> sigma(static_cast<std::size_t>(s));
  std::vector<Eigen::VectorXi> rotated(static_cast<std::size_t>(s));
  for (Eigen::Index j = 0; j < s; ++j) {
    sigma[std::size_t(j)] = ((j - first) % s + s) % s;
    rotated[std::size_t(sigma[std::size_t(j)])] = gradings[std::size_t(j)];
  }
  Mat y = embed_block(ChainEmbedding{rotated}, 0, u);
  GradedPermutation p = graded_permutation(gradings, sigma);
  const Eigen::Index n = y.rows();
  Mat out(n, n);
  // P* y P
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      out(r, c) = p.sign[std::size_t(r)] * p.sign[std::size_t(c)] * y(p.to[std::size_t(r)], p.to[std::size_t(c)]);
  return out;
}

std::vector<Eigen::Index> block_sites(const ChainWindow& w, Eigen::Index first, Eigen::Index len) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index k = 0; k < len; ++k) out.push_back(w.periodic ? w.wrap(first + k) : first + k);
  return out;
}

}  // namespace

void check_gate(const ChainWindow& w, const GateBlock& b) {
  if (!consecutive(w, b.sites)) throw Error(Errc::InvalidInput, "gate sites must be consecutive");
  ChainEmbedding local = w.embedding(b.sites);
  AmbientSpace amb = local.ambient();
  if (b.unitary.rows() != amb.dim() || b.unitary.cols() != amb.dim())
    throw Error(Errc::DimensionMismatch, "gate unitary");
  if ((b.unitary.adjoint() * b.unitary - identity(amb.dim())).norm() > 1e-8 * std::sqrt(double(amb.dim())))
    throw Error(Errc::BlockUnitaryNotEquivariant, "gate is not unitary");
  if (parity_of(b.unitary, amb, 1e-8) != 0) throw Error(Errc::BlockUnitaryNotEquivariant, "gate is not even");
  for (int g = 0; g < w.group.order; ++g) {
    Mat v = block_rep(w, b.sites, g);
    try {
      cplx c = extract_scalar(v * b.unitary * v.adjoint(), b.unitary, 1e-8);
      if (std::abs(std::abs(c) - 1.0) > 1e-8) throw Error(Errc::ScalarExtractionFailure, "modulus");
    } catch (const Error&) {
      throw Error(Errc::BlockUnitaryNotEquivariant, "gate does not commute with the action of element " + std::to_string(g));
    }
  }
}

Mat random_invariant_unitary(const ChainWindow& w, const std::vector<Eigen::Index>& sites, Rng& rng) {
  AmbientSpace amb = w.embedding(sites).ambient();
  Mat h = random_hermitian(amb.dim(), rng);
  Mat avg = Mat::Zero(amb.dim(), amb.dim());
  for (int g = 0; g < w.group.order; ++g) {
    Mat v = block_rep(w, sites, g);
    avg += v * h * v.adjoint();
  }
  avg /= double(w.group.order);
  avg = (avg + amb.theta_conj(avg)) / 2.0;
  return expi_hermitian(avg);
}

std::vector<CircuitLayer> random_brickwork(const ChainWindow& w, Rng& rng) {
  const Eigen::Index s = w.size();
  std::vector<CircuitLayer> layers(2);
  for (Eigen::Index n = 0; 2 * n + 1 < s || (w.periodic && 2 * n < s); ++n) {
    auto sites = block_sites(w, 2 * n, 2);
    layers[0].push_back({sites, random_invariant_unitary(w, sites, rng)});
  }
  for (Eigen::Index n = 1; 2 * n < s || (w.periodic && 2 * n - 1 < s); ++n) {
    auto sites = block_sites(w, 2 * n - 1, 2);
    layers[1].push_back({sites, random_invariant_unitary(w, sites, rng)});
  }
  return layers;
}

QcaRealization circuit_from_layers(const ChainWindow& w, const std::vector<CircuitLayer>& layers) {
  validate_window(w);
  for (const auto& layer : layers) {
    std::set<Eigen::Index> used;
    for (const auto& b : layer) {
      check_gate(w, b);
      for (auto j : b.sites)
        if (!used.insert(j).second) throw Error(Errc::InvalidInput, "gates of one layer overlap");
    }
  }
  QcaRealization q;
  q.window = w;
  q.provenance = "circuit";
  const Eigen::Index s = w.size();
  if (w.periodic) {
    if (w.total_dim() > config().max_ambient)
      throw Error(Errc::AmbientTooLarge, "ring of dimension " + std::to_string(w.total_dim()));
    q.kind = RealizationKind::GlobalUnitary;
    Mat u = identity(w.total_dim());
    const auto grads = w.embedding().site_gradings;
    for (const auto& layer : layers)
      for (const auto& b : layer) u = embed_gate(grads, b.sites, b.unitary) * u;
    q.unitary = u;
    return q;
  }
  q.kind = RealizationKind::BlockMaps;
  q.patches.resize(std::size_t(s));
  for (Eigen::Index n = 1; 2 * n + 2 <= s - 1; ++n) {
    std::set<Eigen::Index> cone{2 * n, 2 * n + 1};
    std::vector<const GateBlock*> hit;
    for (const auto& layer : layers) {
      std::vector<const GateBlock*> now;
      for (const auto& b : layer)
        for (auto j : b.sites)
          if (cone.count(j)) {
            now.push_back(&b);
            break;
          }
      for (const auto* b : now) {
        cone.insert(b->sites.begin(), b->sites.end());
        hit.push_back(b);
      }
    }
    if (*cone.begin() < 2 * n - 1 || *cone.rbegin() > 2 * n + 2)
      throw Error(Errc::FactorizationHypothesisViolated,
                  "light cone of B_" + std::to_string(n) + " leaves the patch; coarse-grain first");
    auto patch = w.embedding({2 * n - 1, 2 * n, 2 * n + 1, 2 * n + 2});
    Mat u = identity(patch.total_dim());
    for (const auto* b : hit) {
      std::vector<Eigen::Index> pos;
      for (auto j : b->sites) pos.push_back(j - (2 * n - 1));
      u = embed_gate(patch.site_gradings, pos, b->unitary) * u;
    }
    q.patches[std::size_t(n)] = u;
  }
  return q;
}

namespace {

// matrix units of a simple superalgebra with the parity of f_a0
struct UnitFrame {
  MatrixUnits f;
  std::vector<int> label;
  double k = 1.0;

  Eigen::Index dim() const { return Eigen::Index(f.size()); }
  Mat coords(const Mat& y) const {
    const Eigen::Index d = dim();
    Mat c(d, d);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) c(a, b) = (f[std::size_t(b)][std::size_t(a)] * y).trace() / k;
    return c;
  }
  Mat element(const Mat& c, const std::vector<Eigen::Index>& sigma) const {
    Mat y = Mat::Zero(f[0][0].rows(), f[0][0].cols());
    for (Eigen::Index a = 0; a < c.rows(); ++a)
      for (Eigen::Index b = 0; b < c.cols(); ++b)
        if (c(a, b) != cplx(0)) y += c(a, b) * f[std::size_t(sigma[std::size_t(a)])][std::size_t(sigma[std::size_t(b)])];
    return y;
  }
};

UnitFrame site_frame(const ChainEmbedding& chain, Eigen::Index j) {
  const Eigen::Index d = chain.site_dim(j);
  const auto& gr = chain.site_gradings[std::size_t(j)];
  UnitFrame u;
  u.f.assign(std::size_t(d), std::vector<Mat>(std::size_t(d)));
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      Mat e = Mat::Zero(d, d);
      e(a, b) = 1.0;
      u.f[std::size_t(a)][std::size_t(b)] = jw_embed(chain, j, e);
    }
    u.label.push_back((gr(a) < 0) != (gr(0) < 0));
  }
  u.k = double(chain.total_dim() / d);
  return u;
}

UnitFrame overlap_frame(const GradedSubalgebra& x, Rng& rng) {
  UnitFrame u;
  u.f = matrix_units(x, true, rng);
  for (const auto& row : u.f) {
    int p = parity_of(row[0], x.ambient, 1e-7);
    if (p < 0) throw Error(Errc::ParityMismatch, "matrix units are not homogeneous");
    u.label.push_back(p);
  }
  u.k = std::real(u.f[0][0].trace());
  return u;
}

// Ad v on the frame, as Ad t in frame coordinates
Mat frame_action(const UnitFrame& fr, const Mat& v) {
  const Eigen::Index d = fr.dim();
  Mat p = fr.coords(v * fr.f[0][0] * v.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es((p + p.adjoint()) / 2.0);
  Vec t0 = es.eigenvectors().col(d - 1);
  Mat t(d, d);
  for (Eigen::Index a = 0; a < d; ++a) t.col(a) = fr.coords(v * fr.f[std::size_t(a)][0] * v.adjoint()) * t0;
  return t;
}

Cocycle2 frame_cocycle(const FiniteGroup& g, const std::vector<Mat>& t) {
  Cocycle2 nu{Mat(g.order, g.order)};
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      nu.phases(a, b) = extract_scalar(t[std::size_t(a)] * t[std::size_t(b)], t[std::size_t(g.mul(a, b))], 1e-7);
  return nu;
}

// even equivariant isomorphisms from the site algebra onto the overlap
using Iso = std::function<Mat(const Mat&)>;

std::vector<Iso> equivariant_isos(const FiniteGroup& g, const UnitFrame& site, const std::vector<Mat>& t_site,
                                  const UnitFrame& ov, const std::vector<Mat>& t_ov) {
  std::vector<Iso> out;
  const Eigen::Index d = site.dim();
  if (ov.dim() != d) return out;
  Cocycle2 nu_site = frame_cocycle(g, t_site);
  auto chars = enumerate_characters(g);
  for (int o = 0; o < 2; ++o) {
    std::vector<Eigen::Index> sigma(static_cast<std::size_t>(d));
    std::array<std::vector<Eigen::Index>, 2> pool;
    for (Eigen::Index a = d; a-- > 0;) pool[std::size_t(ov.label[std::size_t(a)])].push_back(a);
    bool ok = true;
    for (Eigen::Index a = 0; a < d && ok; ++a) {
      auto& p = pool[std::size_t(site.label[std::size_t(a)] ^ o)];
      if (p.empty()) {
        ok = false;
        break;
      }
      sigma[std::size_t(a)] = p.back();
      p.pop_back();
    }
    if (!ok) continue;
    std::vector<Mat> t(static_cast<std::size_t>(g.order));
    for (int h = 0; h < g.order; ++h) {
      Mat m(d, d);
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) m(a, b) = t_ov[std::size_t(h)](sigma[std::size_t(a)], sigma[std::size_t(b)]);
      t[std::size_t(h)] = m;
    }
    auto mu = cohomologous(g, frame_cocycle(g, t), nu_site);
    if (!mu) continue;
    for (const auto& chi : chars) {
      Mat sys(d * d * g.order, d * d);
      for (int h = 0; h < g.order; ++h) {
        cplx lam = (*mu)(h) * chi(h);
        // S t_site - lam t S = 0 with column-major vec
        sys.middleRows(h * d * d, d * d) =
            kron(t_site[std::size_t(h)].transpose(), identity(d)) - lam * kron(identity(d), t[std::size_t(h)]);
      }
      Mat ker = kernel(sys, 1e-8);
      if (ker.cols() == 0) continue;
      Rng rng(17 + std::uint64_t(ker.cols()));
      Vec c = random_complex(ker.cols(), 1, rng);
      Mat s0 = unvec(ker * c, d);
      for (int par = 0; par < 2; ++par) {
        Mat s = s0;
        for (Eigen::Index a = 0; a < d; ++a)
          for (Eigen::Index b = 0; b < d; ++b)
            if ((site.label[std::size_t(a)] ^ site.label[std::size_t(b)]) != par) s(a, b) = 0.0;
        if (s.norm() < 1e-6 * s0.norm()) continue;
        Eigen::JacobiSVD<Mat> svd(s);
        const auto& sv = svd.singularValues();
        if (sv(d - 1) < 1e-8 * sv(0)) continue;
        Mat u = polar_unitary(s);
        double res = 0.0;
        for (int h = 0; h < g.order; ++h) {
          cplx lam = (*mu)(h) * chi(h);
          res = std::max(res, (u * t_site[std::size_t(h)] - lam * t[std::size_t(h)] * u).norm());
        }
        if (res > 1e-7) continue;
        const UnitFrame* fr = &ov;
        out.push_back([fr, u, sigma](const Mat& x) { return fr->element(u * x * u.adjoint(), sigma); });
      }
    }
  }
  return out;
}

// candidates for W_n on sites (2n-1, 2n), all even
std::vector<Mat> cell_candidates(const QcaRealization& q, Eigen::Index n, Rng& rng) {
  const ChainWindow& w = q.window;
  CellMap prev(q, n - 1), cur(q, n);
  GradedSubalgebra rp = prev.right_overlap();
  GradedSubalgebra l = cur.left_overlap();
  ChainEmbedding chain = w.embedding({2 * n - 1, 2 * n});
  std::vector<Mat> vg;
  for (int g = 0; g < w.group.order; ++g) vg.push_back(block_rep(w, {2 * n - 1, 2 * n}, g));
  std::array<std::vector<Iso>, 2> isos;
  std::array<const GradedSubalgebra*, 2> ovs{&rp, &l};
  std::array<UnitFrame, 2> ovf;
  for (int side = 0; side < 2; ++side) {
    if (classify_central_simple(*ovs[std::size_t(side)]).is_radical()) return {};
    UnitFrame sf = site_frame(chain, side);
    ovf[std::size_t(side)] = overlap_frame(*ovs[std::size_t(side)], rng);
    std::vector<Mat> ts, to;
    for (const auto& v : vg) {
      ts.push_back(frame_action(sf, v));
      to.push_back(frame_action(ovf[std::size_t(side)], v));
    }
    isos[std::size_t(side)] = equivariant_isos(w.group, sf, ts, ovf[std::size_t(side)], to);
    if (isos[std::size_t(side)].empty()) return {};
  }
  auto pair_for = [&](Eigen::Index j, const Iso& iso) {
    const Eigen::Index d = chain.site_dim(j);
    std::vector<Mat> emb, img;
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        Mat e = Mat::Zero(d, d);
        e(a, b) = 1.0;
        emb.push_back(jw_embed(chain, j, e));
        img.push_back(iso(e));
      }
    LinearMap phi = [emb, img](const Mat& x) {
      Mat r = Mat::Zero(x.rows(), x.cols());
      for (std::size_t k = 0; k < emb.size(); ++k) r += (hs_inner(emb[k], x) / hs_inner(emb[k], emb[k])) * img[k];
      return r;
    };
    return ImplementerPair{region_algebra(chain, {j}), phi};
  };
  std::vector<Mat> out;
  for (const auto& ir : isos[0])
    for (const auto& il : isos[1]) {
      try {
        out.push_back(inner_implementer({pair_for(0, ir), pair_for(1, il)}, vg).u);
      } catch (const Error&) {
        // invariant only up to a character
        try {
          Mat v = implement_on_region(chain, {0, 1}, [&](Eigen::Index j, const Mat& x) { return j == 0 ? ir(x) : il(x); });
          if (parity_of(v, chain.ambient(), 1e-8) != 0) continue;
          out.push_back(v.adjoint());
        } catch (const Error&) {
        }
      }
      if (out.size() >= 8) return out;
    }
  return out;
}

// Y_n with Ad(W_n W_{n+1}) alpha = Ad Y_n on B_n; nullopt when not even
std::optional<Mat> residual_block(const QcaRealization& q, Eigen::Index n, const Mat& wl, const Mat& wr) {
  CellMap cm(q, n);
  const auto& patch = cm.patch_chain();
  Mat wf = embed_block(patch, 0, wl) * embed_block(patch, 2, wr);
  ChainEmbedding blk = cm.block_chain();
  const Eigen::Index d12 = cm.dim(1) * cm.dim(2), d3 = cm.dim(3);
  const double th0 = patch.site_gradings[0](0) < 0 ? -1.0 : 1.0;
  AmbientSpace bamb = blk.ambient();
  auto beta = [&](Eigen::Index j, const Mat& xl) -> Mat {
    Mat xb = jw_embed(blk, j, xl);
    int par = parity_of(xb, bamb, 1e-12);
    Mat z = wf * cm(xb) * wf.adjoint();
    Mat y(d12, d12);
    for (Eigen::Index r = 0; r < d12; ++r)
      for (Eigen::Index c = 0; c < d12; ++c) y(r, c) = z(r * d3, c * d3);
    if (par == 1) y *= th0;
    if ((z - embed_block(patch, 1, y)).norm() > 1e-7 * std::max(1.0, z.norm()))
      throw Error(Errc::FactorizationHypothesisViolated, "residual map leaves B_" + std::to_string(n));
    return y;
  };
  Mat y = implement_on_region(blk, {0, 1}, beta);
  if (parity_of(y, bamb, 1e-8) != 0) return std::nullopt;
  return y;
}

double roundtrip(const QcaRealization& q, Eigen::Index n, const Mat& wl, const Mat& wr, const Mat& y) {
  CellMap cm(q, n);
  const auto& patch = cm.patch_chain();
  Mat wf = embed_block(patch, 0, wl) * embed_block(patch, 2, wr);
  Mat yf = embed_block(patch, 1, y);
  const Eigen::Index db = cm.dim(1) * cm.dim(2);
  double worst = 0.0;
  for (Eigen::Index a = 0; a < db; ++a)
    for (Eigen::Index b = 0; b < db; ++b) {
      Mat e = Mat::Zero(db, db);
      e(a, b) = 1.0;
      Mat want = cm(e);
      Mat got = wf.adjoint() * yf * embed_block(patch, 1, e) * yf.adjoint() * wf;
      worst = std::max(worst, (want - got).norm() / std::max(1e-300, want.norm()));
    }
  return worst;
}

Decoupling decouple_once(const QcaRealization& q) {
  const ChainWindow& w = q.window;
  if (w.periodic) throw Error(Errc::Unsupported, "decoupling on periodic windows");
  auto cells = admissible_cells(q);
  auto has = [&](Eigen::Index m) { return std::find(cells.begin(), cells.end(), m) != cells.end(); };
  std::vector<Eigen::Index> phi_cells;
  for (auto n : cells)
    if (has(n - 1)) phi_cells.push_back(n);
  bool any_psi = false;
  for (auto n : phi_cells) any_psi = any_psi || std::count(phi_cells.begin(), phi_cells.end(), n + 1);
  if (!any_psi) throw Error(Errc::WindowTooSmall, "decoupling needs two neighbouring cells with both overlaps");
  Rng rng(2024);
  std::vector<std::vector<Mat>> cand;
  for (auto n : phi_cells) {
    cand.push_back(cell_candidates(q, n, rng));
    if (cand.back().empty())
      throw Error(Errc::IsomorphismNotFound, "no even equivariant isomorphism onto the overlaps at cell " + std::to_string(n));
  }
  const std::size_t m = phi_cells.size();
  std::vector<std::size_t> pick(m, 0);
  std::vector<std::optional<Mat>> ys(m);
  std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
    if (k == m) return true;
    for (std::size_t c = 0; c < cand[k].size(); ++c) {
      pick[k] = c;
      ys[k].reset();
      if (k > 0 && phi_cells[k] == phi_cells[k - 1] + 1) {
        auto y = residual_block(q, phi_cells[k - 1], cand[k - 1][pick[k - 1]], cand[k][c]);
        if (!y) continue;
        ys[k - 1] = y;
      }
      if (dfs(k + 1)) return true;
    }
    return false;
  };
  if (!dfs(0)) throw Error(Errc::IsomorphismNotFound, "no choice of isomorphisms leaves even residual blocks");
  Decoupling out;
  std::vector<GateBlock> phi_dag;
  for (std::size_t k = 0; k < m; ++k) {
    const Eigen::Index n = phi_cells[k];
    const Mat& wn = cand[k][pick[k]];
    out.phi.push_back({{2 * n - 1, 2 * n}, wn});
    phi_dag.push_back({{2 * n - 1, 2 * n}, wn.adjoint()});
    if (ys[k]) {
      out.psi.push_back({{2 * n, 2 * n + 1}, *ys[k]});
      out.roundtrip_error = std::max(out.roundtrip_error, roundtrip(q, n, wn, cand[k + 1][pick[k + 1]], *ys[k]));
    }
  }
  out.decoupled = circuit_from_layers(w, {out.psi, phi_dag});
  out.decoupled.provenance = "decoupled(" + q.provenance + ")";
  return out;
}

ChainWindow auxiliary_window(const ChainWindow& w, const std::string& kind) {
  ChainWindow a;
  a.group = w.group;
  a.periodic = w.periodic;
  Site s;
  if (kind == "fermion") {
    Eigen::VectorXi gr(2);
    gr << 1, -1;
    s = graded_site(w.group, gr);
  } else if (kind == "regular") {
    s = regular_site(w.group);
  } else {
    Eigen::VectorXi gr(2);
    gr << 1, -1;
    s = site_tensor(graded_site(w.group, gr), regular_site(w.group));
  }
  a.sites.assign(w.sites.size(), s);
  return a;
}

}  // namespace

Decoupling decouple_trivial(const QcaRealization& q, bool auto_stack) {
  IndexTriple ind = qca_index(q);
  if (!ind.is_trivial()) throw Error(Errc::IndexNotTrivial, "index " + ind.str());
  try {
    return decouple_once(q);
  } catch (const Error& e) {
    if (!auto_stack || e.code() != Errc::IsomorphismNotFound) throw;
  }
  for (const std::string kind : {"fermion", "regular", "fermion+regular"}) {
    try {
      Decoupling d = decouple_once(stack_qca(q, identity_qca(auxiliary_window(q.window, kind))));
      d.auxiliaries.push_back(kind);
      return d;
    } catch (const Error& e) {
      if (e.code() != Errc::IsomorphismNotFound && e.code() != Errc::AmbientTooLarge) throw;
    }
  }
  throw Error(Errc::IsomorphismNotFound, "no auxiliary chain makes the overlaps isomorphic to the sites");
}

}  // namespace sqca
