#include "sqca/superalg.hpp"

#include <algorithm>
#include <cmath>

namespace sqca {

namespace {

void check_dim(const Mat& x, const AmbientSpace& amb) {
  if (x.rows() != amb.dim() || x.cols() != amb.dim())
    throw Error(Errc::DimensionMismatch,
                "matrix " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " vs ambient " +
                    std::to_string(amb.dim()));
}

// incremental orthonormal span of vectorized matrices
class SpanBuilder {
 public:
  SpanBuilder(Eigen::Index rows, Eigen::Index cap) : f_(rows, std::max<Eigen::Index>(cap, 1)), cap_(cap) {}

  bool add(const Vec& v) {
    if (k_ >= cap_) return false;
    double nv = v.norm();
    if (nv < 1e-12) return false;
    Vec r = v;
    for (int pass = 0; pass < 2; ++pass) {
      if (k_ == 0) break;
      auto f = f_.leftCols(k_);
      r -= f * (f.adjoint() * r);
    }
    double nr = r.norm();
    if (nr < 1e-8 * nv) return false;
    f_.col(k_++) = r / nr;
    return true;
  }
  Eigen::Index size() const { return k_; }
  bool full() const { return k_ >= cap_; }
  Mat frame() const { return f_.leftCols(k_); }

 private:
  Mat f_;
  Eigen::Index cap_;
  Eigen::Index k_ = 0;
};

Eigen::Index parity_coord_count(const AmbientSpace& amb, int parity) {
  Eigen::Index plus = (amb.grading.array() > 0).count();
  Eigen::Index minus = amb.dim() - plus;
  return parity == 0 ? plus * plus + minus * minus : 2 * plus * minus;
}

std::vector<Eigen::Index> parity_coords(const AmbientSpace& amb, int parity) {
  const Eigen::Index n = amb.dim();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if ((amb.grading(i) * amb.grading(j) > 0) == (parity == 0)) idx.push_back(j * n + i);
  return idx;
}

Mat to_matrix(const Eigen::Ref<const Vec>& col, Eigen::Index n) {
  return unvec(col, n) * std::sqrt(double(n));
}

// solve x s = eps(s) s x on the given parity sector for all constraints
Mat commutant_sector(const AmbientSpace& amb, const std::vector<Mat>& cons, const std::vector<int>& cons_par,
                     int parity, bool graded) {
  const Eigen::Index n = amb.dim();
  auto idx = parity_coords(amb, parity);
  const Eigen::Index k = Eigen::Index(idx.size());
  Mat out(n * n, 0);
  if (k == 0) return out;
  Mat g = Mat::Zero(k, k);
  Mat id = Mat::Identity(n, n);
  for (std::size_t c = 0; c < cons.size(); ++c) {
    const Mat& s = cons[c];
    double eps = (graded && parity == 1 && cons_par[c] == 1) ? -1.0 : 1.0;
    Mat m = kron(Mat(s.transpose()), id) - eps * kron(id, s);
    Mat mr(n * n, k);
    for (Eigen::Index j = 0; j < k; ++j) mr.col(j) = m.col(idx[std::size_t(j)]);
    g.noalias() += mr.adjoint() * mr;
  }
  Mat ker = kernel_psd(g);
  out = Mat::Zero(n * n, ker.cols());
  for (Eigen::Index j = 0; j < k; ++j) out.row(idx[std::size_t(j)]) = ker.row(j);
  return out;
}

}  // namespace

Mat GradedSubalgebra::frame() const {
  const Eigen::Index n = ambient.dim();
  Mat f(n * n, dim());
  for (Eigen::Index j = 0; j < dim(); ++j) f.col(j) = vec_view(basis[std::size_t(j)]) / std::sqrt(double(n));
  return f;
}

Mat GradedSubalgebra::frame_even() const { return frame().leftCols(n_even); }
Mat GradedSubalgebra::frame_odd() const { return frame().rightCols(dim() - n_even); }

Mat GradedSubalgebra::project(const Mat& x) const {
  check_dim(x, ambient);
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const auto& b : basis) out += hs_inner(b, x) * b;
  return out;
}

double GradedSubalgebra::distance(const Mat& x) const {
  return std::sqrt(std::max(0.0, (x - project(x)).squaredNorm() / double(ambient.dim())));
}

bool GradedSubalgebra::contains(const Mat& x, double tol) const {
  if (tol < 0) tol = config().tol_alg;
  double nx = std::sqrt(x.squaredNorm() / double(ambient.dim()));
  return distance(x) <= tol * std::max(1.0, nx);
}

std::vector<Mat> GradedSubalgebra::generators(std::size_t small) const {
  if (basis.size() <= small) return basis;
  Rng rng(0x5eed + std::uint64_t(basis.size()));
  std::normal_distribution<double> nd;
  std::vector<Mat> out;
  const Eigen::Index n = ambient.dim();
  auto combo = [&](Eigen::Index from, Eigen::Index to) {
    Mat x = Mat::Zero(n, n);
    for (Eigen::Index i = from; i < to; ++i) x += cplx(nd(rng), nd(rng)) * basis[std::size_t(i)];
    return x;
  };
  for (int r = 0; r < 2; ++r) {
    if (n_even > 0) out.push_back(combo(0, n_even));
    if (dim() > n_even) out.push_back(combo(n_even, dim()));
  }
  return out;
}

GradedSubalgebra subalgebra_from_frames(const AmbientSpace& amb, const Mat& fe, const Mat& fo) {
  GradedSubalgebra s;
  s.ambient = amb;
  const Eigen::Index n = amb.dim();
  for (Eigen::Index j = 0; j < fe.cols(); ++j) s.basis.push_back(to_matrix(fe.col(j), n));
  for (Eigen::Index j = 0; j < fo.cols(); ++j) s.basis.push_back(to_matrix(fo.col(j), n));
  s.n_even = fe.cols();
  s.contains_identity = s.dim() > 0 && s.contains(Mat::Identity(n, n));
  return s;
}

GradedSubalgebra scalars(const AmbientSpace& amb) {
  GradedSubalgebra s;
  s.ambient = amb;
  s.basis = {Mat::Identity(amb.dim(), amb.dim())};
  s.n_even = 1;
  s.contains_identity = true;
  return s;
}

GradedSubalgebra full_algebra(const AmbientSpace& amb) {
  GradedSubalgebra s;
  s.ambient = amb;
  const Eigen::Index n = amb.dim();
  std::vector<Mat> odd;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = std::sqrt(double(n));
      if (amb.grading(i) == amb.grading(j))
        s.basis.push_back(e);
      else
        odd.push_back(e);
    }
  s.n_even = Eigen::Index(s.basis.size());
  s.basis.insert(s.basis.end(), odd.begin(), odd.end());
  s.contains_identity = true;
  return s;
}

Eigen::Index ChainEmbedding::total_dim() const {
  Eigen::Index d = 1;
  for (const auto& g : site_gradings) d *= g.size();
  return d;
}

AmbientSpace ChainEmbedding::ambient() const {
  Eigen::VectorXi g = Eigen::VectorXi::Ones(1);
  for (const auto& s : site_gradings) {
    Eigen::VectorXi next(g.size() * s.size());
    for (Eigen::Index i = 0; i < g.size(); ++i)
      for (Eigen::Index j = 0; j < s.size(); ++j) next(i * s.size() + j) = g(i) * s(j);
    g = next;
  }
  return AmbientSpace(g);
}

std::pair<Mat, Mat> parity_split(const Mat& x, const AmbientSpace& amb) {
  check_dim(x, amb);
  Mat t = amb.theta_conj(x);
  return {(x + t) / 2.0, (x - t) / 2.0};
}

int parity_of(const Mat& x, const AmbientSpace& amb, double tol) {
  auto [e, o] = parity_split(x, amb);
  double scale = std::max(x.norm(), 1e-300);
  if (o.norm() <= tol * scale) return 0;
  if (e.norm() <= tol * scale) return 1;
  return -1;
}

Mat supercommutator(const Mat& x, const Mat& y, const AmbientSpace& amb) {
  auto [xe, xo] = parity_split(x, amb);
  auto [ye, yo] = parity_split(y, amb);
  return x * y - y * x + 2.0 * (yo * xo);
}

GradedSubalgebra close_algebra(const std::vector<Mat>& gens_in, const AmbientSpace& amb) {
  if (gens_in.empty()) throw Error(Errc::InvalidInput, "no generators");
  const Eigen::Index n = amb.dim();
  std::vector<Mat> gens;
  for (const auto& g : gens_in) {
    check_dim(g, amb);
    for (const Mat& h : {g, Mat(g.adjoint())}) {
      auto [e, o] = parity_split(h, amb);
      if (e.norm() > 1e-12 * std::max(1.0, h.norm())) gens.push_back(e);
      if (o.norm() > 1e-12 * std::max(1.0, h.norm())) gens.push_back(o);
    }
  }
  SpanBuilder even(n * n, parity_coord_count(amb, 0)), odd(n * n, parity_coord_count(amb, 1));
  std::vector<Mat> queue;
  auto push = [&](const Mat& x) {
    auto [e, o] = parity_split(x, amb);
    if (even.add(vec_view(e))) queue.push_back(to_matrix(even.frame().rightCols(1), n));
    if (odd.add(vec_view(o))) queue.push_back(to_matrix(odd.frame().rightCols(1), n));
  };
  for (const auto& g : gens) push(g);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (even.full() && odd.full()) break;
    if (even.size() + odd.size() > n * n) throw Error(Errc::NoConvergence, "span exceeds ambient");
    Mat b = queue[i];
    for (const auto& g : gens) push(b * g);
  }
  return subalgebra_from_frames(amb, even.frame(), odd.frame());
}

namespace {

GradedSubalgebra commutant_impl(const GradedSubalgebra& s, bool graded) {
  const AmbientSpace& amb = s.ambient;
  std::vector<Mat> cons;
  std::vector<int> par;
  for (const auto& g : s.generators(12)) {
    int p = parity_of(g, amb);
    if (p < 0) {
      auto [e, o] = parity_split(g, amb);
      cons.push_back(e);
      par.push_back(0);
      cons.push_back(o);
      par.push_back(1);
    } else {
      cons.push_back(g);
      par.push_back(p);
    }
  }
  Mat fe = commutant_sector(amb, cons, par, 0, graded);
  Mat fo = commutant_sector(amb, cons, par, 1, graded);
  GradedSubalgebra out = subalgebra_from_frames(amb, fe, fo);
  out.contains_identity = true;
  return out;
}

}  // namespace

GradedSubalgebra supercommutant(const GradedSubalgebra& s) { return commutant_impl(s, true); }
GradedSubalgebra commutant(const GradedSubalgebra& s) { return commutant_impl(s, false); }

GradedSubalgebra double_supercommutant(const GradedSubalgebra& s) { return supercommutant(supercommutant(s)); }

GradedSubalgebra intersect(const GradedSubalgebra& a, const GradedSubalgebra& b) {
  if (a.ambient.dim() != b.ambient.dim()) throw Error(Errc::DimensionMismatch, "intersect");
  auto part = [](const Mat& fa, const Mat& fb) -> Mat {
    if (fa.cols() == 0) return fa;
    if (fb.cols() == 0) return Mat(fa.rows(), 0);
    Mat r = fa - fb * (fb.adjoint() * fa);
    Mat k = kernel_psd(r.adjoint() * r, 1e-14);
    return orth_span(fa * k);
  };
  return subalgebra_from_frames(a.ambient, part(a.frame_even(), b.frame_even()), part(a.frame_odd(), b.frame_odd()));
}

GradedSubalgebra center(const GradedSubalgebra& s) {
  const Eigen::Index n = s.ambient.dim();
  auto gens = s.generators(12);
  auto sector = [&](Eigen::Index from, Eigen::Index to) -> Mat {
    const Eigen::Index m = to - from;
    Mat g = Mat::Zero(m, m);
    for (const auto& x : gens) {
      Mat c(n * n, m);
      for (Eigen::Index j = 0; j < m; ++j) {
        const Mat& b = s.basis[std::size_t(from + j)];
        Mat comm = b * x - x * b;
        c.col(j) = vec_view(comm);
      }
      g.noalias() += c.adjoint() * c;
    }
    Mat k = kernel_psd(g);
    Mat f(n * n, k.cols());
    Mat fr = s.frame().middleCols(from, m);
    f = fr * k;
    return f;
  };
  return subalgebra_from_frames(s.ambient, sector(0, s.n_even), sector(s.n_even, s.dim()));
}

double closure_defect(const GradedSubalgebra& s) {
  double worst = 0.0;
  auto gens = s.generators(8);
  for (const auto& a : gens) {
    worst = std::max(worst, s.distance(a.adjoint()));
    worst = std::max(worst, s.distance(s.ambient.theta_conj(a)));
    for (const auto& b : gens) worst = std::max(worst, s.distance(a * b) / std::max(1.0, op_norm(a) * op_norm(b)));
  }
  return worst;
}

double span_distance(const GradedSubalgebra& a, const GradedSubalgebra& b) {
  if (a.ambient.dim() != b.ambient.dim()) return 1e300;
  if (a.dim() != b.dim()) return 1.0;
  Mat fa = a.frame(), fb = b.frame();
  if (fa.cols() == 0) return 0.0;
  Mat r = fa - fb * (fb.adjoint() * fa);
  return op_norm(r);
}

Mat jw_embed(const ChainEmbedding& chain, Eigen::Index site, const Mat& x) {
  if (site < 0 || site >= chain.site_count()) throw Error(Errc::SiteOutOfRange, std::to_string(site));
  AmbientSpace local(chain.site_gradings[std::size_t(site)]);
  check_dim(x, local);
  auto [xe, xo] = parity_split(x, local);
  Mat out = Mat::Zero(chain.total_dim(), chain.total_dim());
  for (int tau = 0; tau < 2; ++tau) {
    const Mat& part = tau == 0 ? xe : xo;
    if (part.norm() == 0) continue;
    std::vector<Mat> f;
    for (Eigen::Index j = 0; j < chain.site_count(); ++j) {
      Eigen::Index d = chain.site_dim(j);
      if (j < site)
        f.push_back(tau ? AmbientSpace(chain.site_gradings[std::size_t(j)]).theta() : Mat(Mat::Identity(d, d)));
      else if (j == site)
        f.push_back(part);
      else
        f.push_back(Mat::Identity(d, d));
    }
    out += kron_all(f);
  }
  return out;
}

GradedSubalgebra region_algebra(const ChainEmbedding& chain, const std::vector<Eigen::Index>& sites_in) {
  std::vector<Eigen::Index> sites = sites_in;
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  for (auto s : sites)
    if (s < 0 || s >= chain.site_count()) throw Error(Errc::RegionOutOfRange, std::to_string(s));
  AmbientSpace amb = chain.ambient();
  const Eigen::Index n = amb.dim();
  std::vector<Mat> even{Mat::Identity(n, n)}, odd;
  double scale = 1.0;
  for (auto s : sites) {
    const auto& g = chain.site_gradings[std::size_t(s)];
    const Eigen::Index d = g.size();
    scale *= double(d);
    std::vector<Mat> ne, no;
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        Mat e = Mat::Zero(d, d);
        e(i, j) = 1.0;
        Mat emb = jw_embed(chain, s, e);
        bool odd_unit = g(i) != g(j);
        for (const auto& x : even) (odd_unit ? no : ne).push_back(x * emb);
        for (const auto& x : odd) (odd_unit ? ne : no).push_back(x * emb);
      }
    even = std::move(ne);
    odd = std::move(no);
  }
  GradedSubalgebra out;
  out.ambient = amb;
  double f = std::sqrt(scale);
  for (auto& x : even) out.basis.push_back(x * f);
  out.n_even = Eigen::Index(out.basis.size());
  for (auto& x : odd) out.basis.push_back(x * f);
  out.contains_identity = true;
  (void)n;
  return out;
}

AmbientSpace graded_tensor(const AmbientSpace& a, const AmbientSpace& b) {
  ChainEmbedding c{{a.grading, b.grading}};
  return c.ambient();
}

Mat graded_kron(const Mat& x, const Mat& y, const AmbientSpace& a, const AmbientSpace& b) {
  auto [ye, yo] = parity_split(y, b);
  Mat out = kron(x, ye);
  if (yo.norm() > 0) out += kron(Mat(x * a.theta()), yo);
  return out;
}

GradedSubalgebra graded_tensor(const GradedSubalgebra& a, const GradedSubalgebra& b) {
  GradedSubalgebra out;
  out.ambient = graded_tensor(a.ambient, b.ambient);
  std::vector<Mat> odd;
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j) {
      Mat x = graded_kron(a.basis[std::size_t(i)], b.basis[std::size_t(j)], a.ambient, b.ambient);
      bool o = (i >= a.n_even) != (j >= b.n_even);
      (o ? odd : out.basis).push_back(x);
    }
  out.n_even = Eigen::Index(out.basis.size());
  out.basis.insert(out.basis.end(), odd.begin(), odd.end());
  out.contains_identity = a.contains_identity && b.contains_identity;
  return out;
}

Mat graded_tensor_autom(const Mat& u1, int xi1, const Mat& u2, int xi2, const AmbientSpace& g1,
                        const AmbientSpace& g2) {
  check_dim(u1, g1);
  check_dim(u2, g2);
  double tol = 1e-9;
  if ((g1.theta_conj(u1) - (xi1 ? -1.0 : 1.0) * u1).norm() > tol * std::max(1.0, u1.norm()))
    throw Error(Errc::ParityMismatch, "first unitary");
  if ((g2.theta_conj(u2) - (xi2 ? -1.0 : 1.0) * u2).norm() > tol * std::max(1.0, u2.norm()))
    throw Error(Errc::ParityMismatch, "second unitary");
  Mat second = xi1 ? Mat(u2 * g2.theta()) : u2;
  return kron(u1, second);
}

}  // namespace sqca
