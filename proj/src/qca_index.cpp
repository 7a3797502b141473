#include "sqca/qca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sqca {

namespace {

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

Mat chain_rep(const ChainWindow& w, const std::vector<Eigen::Index>& sites, int g) {
  Mat u = identity(1);
  AmbientSpace acc(Eigen::VectorXi::Ones(1));
  int xacc = 0;
  for (auto j : sites) {
    const Site& s = w.sites[std::size_t(w.wrap(j))];
    const Mat& v = s.rep[std::size_t(g)];
    int x = parity_of(v, s.space(), 1e-9);
    if (x < 0) throw Error(Errc::ParityMismatch, "site representation is not homogeneous");
    u = graded_tensor_autom(u, xacc, v, x, acc, s.space());
    acc = graded_tensor(acc, s.space());
    xacc ^= x;
  }
  return u;
}

GSystem site_system(const ChainWindow& w, Eigen::Index j) {
  const Site& s = w.sites[std::size_t(w.wrap(j))];
  return GSystem{w.group, full_algebra(s.space()), s.rep};
}

GSystem local_system(const ChainWindow& w, const GradedSubalgebra& a, const std::vector<Eigen::Index>& sites) {
  GSystem s{w.group, a, {}};
  for (int g = 0; g < w.group.order; ++g) s.action.push_back(chain_rep(w, sites, g));
  return s;
}

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

Mat generic_element(const GradedSubalgebra& a) {
  Rng rng(0x9e37 + std::uint64_t(a.dim()));
  std::normal_distribution<double> nd;
  const Eigen::Index n = a.ambient.dim();
  Mat x = Mat::Zero(n, n);
  for (const auto& b : a.basis) x += cplx(nd(rng), nd(rng)) * b;
  return x;
}

}  // namespace

Mat block_rep(const ChainWindow& w, const std::vector<Eigen::Index>& sites, int g) { return chain_rep(w, sites, g); }

std::vector<Eigen::Index> admissible_cells(const QcaRealization& q) {
  const Eigen::Index s = q.window.size();
  std::vector<Eigen::Index> out;
  if (q.window.periodic) {
    if (s < 4 || s % 2) return out;
    for (Eigen::Index n = 0; n < s / 2; ++n)
      if (q.kind == RealizationKind::GlobalUnitary || (std::size_t(n) < q.patches.size() && q.patches[std::size_t(n)].size() > 0))
        out.push_back(n);
    return out;
  }
  for (Eigen::Index n = 1; 2 * n + 2 <= s - 1; ++n) {
    if (q.kind == RealizationKind::BlockMaps &&
        (std::size_t(n) >= q.patches.size() || q.patches[std::size_t(n)].size() == 0))
      continue;
    out.push_back(n);
  }
  return out;
}

Eigen::Index default_cell(const QcaRealization& q) {
  auto cells = admissible_cells(q);
  if (cells.empty()) throw Error(Errc::WindowTooSmall, "no admissible cell");
  return cells[cells.size() / 2];
}

std::vector<Eigen::Index> factorization_cells(const QcaRealization& q) {
  auto cells = admissible_cells(q);
  std::vector<Eigen::Index> out;
  for (auto n : cells)
    if (std::find(cells.begin(), cells.end(), n - 1) != cells.end()) out.push_back(n);
  return out;
}

CellMap::CellMap(const QcaRealization& q, Eigen::Index n) : n_(n) {
  const ChainWindow& w = q.window;
  auto cells = admissible_cells(q);
  if (std::find(cells.begin(), cells.end(), n) == cells.end())
    throw Error(Errc::RegionOutOfRange, "cell " + std::to_string(n) + " is not admissible");
  for (Eigen::Index k = -1; k <= 2; ++k) sites_.push_back(w.wrap(2 * n + k));
  patch_ = w.embedding(sites_);
  for (int k = 0; k < 4; ++k) d_[std::size_t(k)] = patch_.site_dim(k);
  const Eigen::Index p = patch_.total_dim();
  db_ = d_[1] * d_[2];
  const auto& g1 = patch_.site_gradings[1];
  const auto& g2 = patch_.site_gradings[2];
  for (Eigen::Index i1 = 0; i1 < d_[1]; ++i1)
    for (Eigen::Index i2 = 0; i2 < d_[2]; ++i2) block_parity_.push_back((g1(i1) < 0) != (g2(i2) < 0));
  const auto& g0 = patch_.site_gradings[0];

  const Mat* u = nullptr;
  GradedPermutation rot;
  bool rotate = false;
  if (q.kind == RealizationKind::BlockMaps) {
    u = &q.patches[std::size_t(n)];
    if (u->rows() != p) throw Error(Errc::DimensionMismatch, "patch unitary");
    denv_ = 1;
  } else {
    u = &q.unitary;
    const Eigen::Index s = w.size();
    const Eigen::Index nn = q.unitary.rows();
    if (nn % p) throw Error(Errc::DimensionMismatch, "global unitary");
    denv_ = nn / p;
    std::vector<Eigen::Index> sigma(static_cast<std::size_t>(s));
    for (Eigen::Index j = 0; j < s; ++j) sigma[std::size_t(j)] = ((j - (2 * n - 1)) % s + s) % s;
    rot = graded_permutation(w.embedding().site_gradings, sigma);
    rotate = true;
  }
  const Eigen::Index nn = p * denv_;
  const Eigen::Index dc = d_[3] * denv_;
  const Eigen::Index k = d_[0] * dc;
  m_ = denv_ * k;
  std::vector<Eigen::Index> from;
  if (rotate) {
    from.resize(std::size_t(nn));
    for (Eigen::Index b = 0; b < nn; ++b) from[std::size_t(rot.to[std::size_t(b)])] = b;
  }
  z_.resize(p, db_ * m_);
  for (Eigen::Index i = 0; i < db_; ++i)
    for (Eigen::Index a = 0; a < d_[0]; ++a) {
      double th = (g0(a) < 0 && block_parity_[std::size_t(i)]) ? -1.0 : 1.0;
      for (Eigen::Index c = 0; c < dc; ++c) {
        const Eigen::Index col = (a * db_ + i) * dc + c;
        const Eigen::Index kk = a * dc + c;
        if (!rotate) {
          for (Eigen::Index r = 0; r < p; ++r) z_(r, i * m_ + kk) = th * (*u)(r, col);
        } else {
          const Eigen::Index c0 = from[std::size_t(col)];
          const double sc = th * rot.sign[std::size_t(c0)];
          for (Eigen::Index r = 0; r < nn; ++r) {
            const Eigen::Index rr = rot.to[std::size_t(r)];
            const Eigen::Index pp = rr / denv_, e = rr % denv_;
            z_(pp, i * m_ + e + denv_ * kk) = sc * rot.sign[std::size_t(r)] * (*u)(r, c0);
          }
        }
      }
    }
  if (denv_ > 1) {
    double worst = 0.0;
    const double full = double(k * denv_);
    for (Eigen::Index i = 0; i < db_; ++i) {
      auto zi = z_.middleCols(i * m_, m_);
      auto z0 = z_.middleCols(0, m_);
      worst = std::max(worst, (full - (zi * zi.adjoint()).squaredNorm()) / full);
      worst = std::max(worst, (full - (z0 * zi.adjoint()).squaredNorm()) / full);
    }
    containment_ = std::sqrt(std::max(0.0, worst));
  }
}

ChainEmbedding CellMap::block_chain() const { return {{patch_.site_gradings[1], patch_.site_gradings[2]}}; }
ChainEmbedding CellMap::left_chain() const { return {{patch_.site_gradings[0], patch_.site_gradings[1]}}; }
ChainEmbedding CellMap::right_chain() const { return {{patch_.site_gradings[2], patch_.site_gradings[3]}}; }

Mat CellMap::operator()(const Mat& x) const {
  if (x.rows() != db_ || x.cols() != db_) throw Error(Errc::DimensionMismatch, "block operator");
  const Eigen::Index p = z_.rows();
  Mat t = Mat::Zero(p, db_ * m_);
  for (Eigen::Index j = 0; j < db_; ++j)
    for (Eigen::Index i = 0; i < db_; ++i)
      if (x(i, j) != cplx(0)) t.middleCols(j * m_, m_) += x(i, j) * z_.middleCols(i * m_, m_);
  return t * z_.adjoint() / double(denv_);
}

GradedSubalgebra CellMap::overlap(bool left) const {
  const Eigen::Index d01 = d_[0] * d_[1], d23 = d_[2] * d_[3];
  const Eigen::Index dl = left ? d01 : d23;
  const Eigen::Index other = left ? d23 : d01;
  const Eigen::Index cols = other * m_;
  std::vector<Mat> x(static_cast<std::size_t>(db_)), xt(static_cast<std::size_t>(db_));
  AmbientSpace amb01 = ChainEmbedding{{patch_.site_gradings[0], patch_.site_gradings[1]}}.ambient();
  for (Eigen::Index i = 0; i < db_; ++i) {
    Mat xi(dl, cols);
    auto zi = z_.middleCols(i * m_, m_);
    for (Eigen::Index mm = 0; mm < m_; ++mm)
      for (Eigen::Index r01 = 0; r01 < d01; ++r01)
        for (Eigen::Index r23 = 0; r23 < d23; ++r23) {
          cplx val = zi(r01 * d23 + r23, mm);
          if (left)
            xi(r01, r23 + d23 * mm) = val;
          else
            xi(r23, r01 + d01 * mm) = val;
        }
    x[std::size_t(i)] = xi;
    if (!left) {
      Mat s = xi;
      for (Eigen::Index mm = 0; mm < m_; ++mm)
        for (Eigen::Index r01 = 0; r01 < d01; ++r01)
          if (amb01.grading(r01) < 0) s.col(r01 + d01 * mm) *= -1.0;
      xt[std::size_t(i)] = s;
    }
  }
  const double norm = double(other * denv_);
  std::vector<Vec> ev, od;
  for (Eigen::Index i = 0; i < db_; ++i)
    for (Eigen::Index j = 0; j < db_; ++j) {
      int par = block_parity_[std::size_t(i)] ^ block_parity_[std::size_t(j)];
      const Mat& a = (!left && par) ? xt[std::size_t(i)] : x[std::size_t(i)];
      Mat y = a * x[std::size_t(j)].adjoint() / norm;
      (par ? od : ev).push_back(vec_view(y));
    }
  auto pack = [&](const std::vector<Vec>& vs) {
    Mat m(dl * dl, Eigen::Index(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c) m.col(Eigen::Index(c)) = vs[c];
    return orth_span(m, 1e-9);
  };
  AmbientSpace amb = left ? amb01 : ChainEmbedding{{patch_.site_gradings[2], patch_.site_gradings[3]}}.ambient();
  GradedSubalgebra out = subalgebra_from_frames(amb, pack(ev), pack(od));
  return out;
}

GradedSubalgebra CellMap::left_overlap() const { return overlap(true); }
GradedSubalgebra CellMap::right_overlap() const { return overlap(false); }

double CellMap::membership(const Mat& z) const {
  const double k = double(m_ / denv_);
  Mat zz = z * z_;
  Mat c(db_, db_);
  for (Eigen::Index i = 0; i < db_; ++i)
    for (Eigen::Index j = 0; j < db_; ++j)
      c(i, j) = (z_.middleCols(i * m_, m_).adjoint() * zz.middleCols(j * m_, m_)).trace() / k;
  Mat t = Mat::Zero(z_.rows(), db_ * m_);
  for (Eigen::Index j = 0; j < db_; ++j)
    for (Eigen::Index i = 0; i < db_; ++i)
      if (c(i, j) != cplx(0)) t.middleCols(j * m_, m_) += c(i, j) * z_.middleCols(i * m_, m_);
  Mat proj = t * z_.adjoint() / double(denv_);
  return (z - proj).norm() / std::max(z.norm(), 1e-300);
}

double CellMap::membership_defect_left(const Mat& l) const {
  return membership(kron(l, identity(d_[2] * d_[3])));
}

double CellMap::membership_defect_right(const Mat& r) const {
  AmbientSpace amb23 = right_chain().ambient();
  AmbientSpace amb01 = left_chain().ambient();
  auto [e, o] = parity_split(r, amb23);
  Mat z = kron(identity(d_[0] * d_[1]), e) + kron(amb01.theta(), o);
  return membership(z);
}

OverlapPair overlap_algebras(const QcaRealization& q, Eigen::Index n) {
  CellMap cm(q, n);
  if (cm.containment_defect() > kContainmentTol)
    throw Error(Errc::FactorizationHypothesisViolated,
                "image of B_" + std::to_string(n) + " leaves C_n C_{n+1}, defect " + sci(cm.containment_defect()));
  OverlapPair out{cm.left_overlap(), cm.right_overlap(), n};
  // one generic element per overlap detects a proper excess with probability one
  if (cm.membership_defect_left(generic_element(out.L)) > 1e-8)
    throw Error(Errc::FactorizationHypothesisViolated, "left overlap is not contained in the image");
  if (cm.membership_defect_right(generic_element(out.R)) > 1e-8)
    throw Error(Errc::FactorizationHypothesisViolated, "right overlap is not contained in the image");
  return out;
}

std::string shape_name(const CentralSimpleShape& s) {
  if (s.is_radical()) return "M" + std::to_string(s.radical().n) + "(x)K";
  return "M" + std::to_string(s.rational().p) + "|" + std::to_string(s.rational().q);
}

QcaIndexReport qca_index_report(const QcaRealization& q, Eigen::Index n) {
  const ChainWindow& w = q.window;
  auto ov = overlap_algebras(q, n);
  QcaIndexReport rep;
  rep.cell = n;
  rep.dim_l = ov.L.dim();
  rep.dim_r = ov.R.dim();
  GSystem r = local_system(w, ov.R, {2 * n + 1, 2 * n + 2});
  GSystem l = local_system(w, ov.L, {2 * n - 1, 2 * n});
  auto rd = gsystem_index_data(r);
  auto ld = gsystem_index_data(l);
  rep.shape_r = shape_name(rd.shape);
  rep.shape_l = shape_name(ld.shape);
  rep.index = triple_mul(rd.index, triple_inv(gsystem_index(site_system(w, 2 * n + 1))));
  rep.left_route = triple_mul(gsystem_index(site_system(w, 2 * n)), triple_inv(ld.index));
  if (!(rep.index == rep.left_route))
    throw Error(Errc::InconsistentIndex, "right route " + rep.index.str() + " vs left route " + rep.left_route.str());
  return rep;
}

IndexTriple qca_index(const QcaRealization& q, Eigen::Index n) { return qca_index_report(q, n).index; }
IndexTriple qca_index(const QcaRealization& q) { return qca_index(q, default_cell(q)); }

FactorizationReport verify_factorization(const QcaRealization& q, Eigen::Index n) {
  FactorizationReport rep;
  rep.cell = n;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  CellMap prev(q, n - 1), cur(q, n);
  if (std::max(prev.containment_defect(), cur.containment_defect()) > kContainmentTol)
    throw Error(Errc::FactorizationHypothesisViolated, "nearest neighbour containment fails");
  GradedSubalgebra rp = prev.right_overlap();
  GradedSubalgebra l = cur.left_overlap(), r = cur.right_overlap();
  const Eigen::Index dc = cur.dim(0) * cur.dim(1), db = cur.dim(1) * cur.dim(2);
  rep.dim_c = dc * dc;
  rep.dim_b = db * db;
  rep.dim_l = l.dim();
  rep.dim_r = r.dim();
  rep.dim_r_prev = rp.dim();
  if (rep.dim_r_prev * rep.dim_l != rep.dim_c) fail("dim C_n != dim R_{n-1} * dim L_n");
  if (rep.dim_l * rep.dim_r != rep.dim_b) fail("dim B_n != dim L_n * dim R_n");
  const AmbientSpace& amb = l.ambient;
  double sc = 0.0;
  for (const auto& x : rp.generators(12))
    for (const auto& y : l.generators(12))
      sc = std::max(sc, op_norm(supercommutator(x, y, amb)) / std::max(1e-300, op_norm(x) * op_norm(y)));
  rep.supercommutation = sc;
  if (sc > 1e-8) fail("R_{n-1} and L_n do not supercommute");
  if (rep.dim_c <= 1296) {
    std::vector<Mat> gens = rp.generators(8);
    for (const auto& y : l.generators(8)) gens.push_back(y);
    if (close_algebra(gens, amb).dim() != rep.dim_c) fail("R_{n-1} and L_n do not generate C_n");
  }
  try {
    rep.shape_l = shape_name(classify_central_simple(l));
    rep.shape_r = shape_name(classify_central_simple(r));
    classify_central_simple(rp);
  } catch (const Error& e) {
    fail(std::string("overlap factor is not central simple: ") + e.what());
  }
  double gap = std::max(cur.membership_defect_left(generic_element(l)), cur.membership_defect_right(generic_element(r)));
  const Eigen::Index p = cur.patch_chain().total_dim();
  if (p <= 64) {
    std::vector<Mat> img;
    const Eigen::Index dbl = cur.dim(1) * cur.dim(2);
    for (Eigen::Index i = 0; i < dbl; ++i)
      for (Eigen::Index j = 0; j < dbl; ++j) {
        Mat e = Mat::Zero(dbl, dbl);
        e(i, j) = 1.0;
        img.push_back(cur(e));
      }
    AmbientSpace pa = cur.patch_chain().ambient();
    GradedSubalgebra image = close_algebra(img, pa);
    GradedSubalgebra cl = intersect(image, region_algebra(cur.patch_chain(), {0, 1}));
    GradedSubalgebra cr = intersect(image, region_algebra(cur.patch_chain(), {2, 3}));
    if (cl.dim() != l.dim() || cr.dim() != r.dim()) fail("intersection route disagrees in dimension");
    const Eigen::Index d23 = cur.dim(2) * cur.dim(3);
    AmbientSpace a01 = cur.left_chain().ambient(), a23 = cur.right_chain().ambient();
    auto rel = [&](const GradedSubalgebra& a, const Mat& z) {
      return a.distance(z) / (z.norm() / std::sqrt(double(z.rows())));
    };
    for (const auto& x : l.basis) gap = std::max(gap, rel(cl, kron(x, identity(d23))));
    for (const auto& x : r.basis) {
      auto [e, o] = parity_split(x, a23);
      Mat z = kron(identity(dc), e) + kron(a01.theta(), o);
      gap = std::max(gap, rel(cr, z));
    }
  }
  rep.intersection_gap = gap;
  if (gap > 1e-8) fail("overlap algebras are not contained in the image");
  return rep;
}

void validate_realization(const QcaRealization& q, std::uint64_t seed) {
  Rng rng(seed);
  const ChainWindow& w = q.window;
  for (auto n : admissible_cells(q)) {
    CellMap cm(q, n);
    if (cm.containment_defect() > kContainmentTol)
      throw Error(Errc::FactorizationHypothesisViolated, "cell " + std::to_string(n) + " leaves its patch");
    AmbientSpace blk = cm.block_chain().ambient();
    AmbientSpace pa = cm.patch_chain().ambient();
    const Eigen::Index db = blk.dim();
    Mat x = random_complex(db, db, rng), y = random_complex(db, db, rng);
    auto [xe, xo] = parity_split(x, blk);
    Mat ax = cm(xe), ao = cm(xo);
    double scale = std::max(1.0, ax.norm());
    if ((pa.theta_conj(ax) - ax).norm() > 1e-8 * scale || (pa.theta_conj(ao) + ao).norm() > 1e-8 * scale)
      throw Error(Errc::ParityMismatch, "automorphism is not even on cell " + std::to_string(n));
    Mat lhs = cm(x * y), rhs = cm(x) * cm(y);
    if ((lhs - rhs).norm() > 1e-8 * std::max(1.0, lhs.norm()))
      throw Error(Errc::InvalidInput, "realization is not multiplicative on cell " + std::to_string(n));
    for (int g = 0; g < w.group.order; ++g) {
      Mat ub = chain_rep(w, {2 * n, 2 * n + 1}, g);
      Mat up = chain_rep(w, {2 * n - 1, 2 * n, 2 * n + 1, 2 * n + 2}, g);
      Mat a1 = cm(ub * x * ub.adjoint());
      Mat a2 = up * cm(x) * up.adjoint();
      if ((a1 - a2).norm() > 1e-8 * std::max(1.0, a1.norm()))
        throw Error(Errc::NotEquivariant, "automorphism does not commute with the symmetry on cell " + std::to_string(n));
    }
  }
}

}  // namespace sqca
