#include "sqca/qca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sqca {

namespace {

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

double unitary_defect(const Mat& u) {
  return (u.adjoint() * u - identity(u.rows())).norm() / std::sqrt(double(u.rows()));
}

}  // namespace

Site plain_site(const FiniteGroup& g, Eigen::Index d) {
  return graded_site(g, Eigen::VectorXi::Ones(d));
}

Site graded_site(const FiniteGroup& g, const Eigen::VectorXi& grading) {
  Site s;
  s.grading = grading;
  s.rep.assign(std::size_t(g.order), identity(grading.size()));
  return s;
}

Site regular_site(const FiniteGroup& g) {
  Site s;
  s.grading = Eigen::VectorXi::Ones(g.order);
  for (int a = 0; a < g.order; ++a) {
    Mat u = Mat::Zero(g.order, g.order);
    for (int h = 0; h < g.order; ++h) u(g.mul(a, h), h) = 1.0;
    s.rep.push_back(u);
  }
  return s;
}

Site site_tensor(const Site& a, const Site& b) {
  if (a.rep.size() != b.rep.size()) throw Error(Errc::DimensionMismatch, "sites over different groups");
  Site s;
  AmbientSpace sa = a.space(), sb = b.space();
  s.grading = graded_tensor(sa, sb).grading;
  for (std::size_t g = 0; g < a.rep.size(); ++g) {
    int x1 = parity_of(a.rep[g], sa, 1e-9), x2 = parity_of(b.rep[g], sb, 1e-9);
    if (x1 < 0 || x2 < 0) throw Error(Errc::ParityMismatch, "site representation is not homogeneous");
    s.rep.push_back(graded_tensor_autom(a.rep[g], x1, b.rep[g], x2, sa, sb));
  }
  return s;
}

Site conjugate_site(const Site& s) {
  Site c = s;
  for (auto& u : c.rep) u = u.conjugate().eval();
  return c;
}

Eigen::Index ChainWindow::wrap(Eigen::Index j) const {
  const Eigen::Index s = size();
  if (periodic) return ((j % s) + s) % s;
  if (j < 0 || j >= s) throw Error(Errc::SiteOutOfRange, std::to_string(j));
  return j;
}

Eigen::Index ChainWindow::total_dim() const {
  Eigen::Index n = 1;
  for (const auto& s : sites) {
    if (n > config().max_ambient * 64) break;
    n *= s.dim();
  }
  return n;
}

ChainEmbedding ChainWindow::embedding() const {
  ChainEmbedding c;
  for (const auto& s : sites) c.site_gradings.push_back(s.grading);
  return c;
}

ChainEmbedding ChainWindow::embedding(const std::vector<Eigen::Index>& list) const {
  ChainEmbedding c;
  for (auto j : list) c.site_gradings.push_back(sites[std::size_t(wrap(j))].grading);
  return c;
}

ChainWindow uniform_window(const FiniteGroup& g, const Site& s, Eigen::Index count, bool periodic) {
  ChainWindow w;
  w.group = g;
  w.sites.assign(std::size_t(count), s);
  w.periodic = periodic;
  return w;
}

void validate_window(const ChainWindow& w) {
  const FiniteGroup& g = w.group;
  for (std::size_t j = 0; j < w.sites.size(); ++j) {
    const Site& s = w.sites[j];
    const std::string where = "site " + std::to_string(j);
    if (s.dim() == 0) throw Error(Errc::InvalidInput, where + " has dimension 0");
    for (Eigen::Index i = 0; i < s.dim(); ++i)
      if (std::abs(s.grading(i)) != 1) throw Error(Errc::InvalidInput, where + " grading entries must be +1 or -1");
    if (int(s.rep.size()) != g.order) throw Error(Errc::InvalidInput, where + " needs one unitary per group element");
    AmbientSpace amb = s.space();
    for (const auto& u : s.rep) {
      if (u.rows() != s.dim() || u.cols() != s.dim()) throw Error(Errc::DimensionMismatch, where);
      if (unitary_defect(u) > 1e-9) throw Error(Errc::InvalidInput, where + " representation is not unitary");
      if (parity_of(u, amb, 1e-9) < 0) throw Error(Errc::ParityMismatch, where + " representation is not homogeneous");
    }
    for (int a = 0; a < g.order; ++a)
      for (int b = 0; b < g.order; ++b) {
        try {
          extract_scalar(s.rep[std::size_t(a)] * s.rep[std::size_t(b)], s.rep[std::size_t(g.mul(a, b))], 1e-9);
        } catch (const Error&) {
          throw Error(Errc::NotProjective, where + " representation is not projective");
        }
      }
  }
}

bool same_window(const ChainWindow& a, const ChainWindow& b) {
  if (a.group.order != b.group.order || a.group.table != b.group.table) return false;
  if (a.periodic != b.periodic || a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.sites.size(); ++j) {
    const Site &x = a.sites[j], &y = b.sites[j];
    if (x.grading != y.grading) return false;
    for (std::size_t g = 0; g < x.rep.size(); ++g)
      if ((x.rep[g] - y.rep[g]).norm() > 1e-9) return false;
  }
  return true;
}

Mat GradedPermutation::matrix() const {
  const Eigen::Index n = Eigen::Index(to.size());
  Mat p = Mat::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) p(to[std::size_t(b)], b) = sign[std::size_t(b)];
  return p;
}

Mat GradedPermutation::conjugate(const Mat& x) const {
  const Eigen::Index n = Eigen::Index(to.size());
  Mat y(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      y(to[std::size_t(r)], to[std::size_t(c)]) = sign[std::size_t(r)] * sign[std::size_t(c)] * x(r, c);
  return y;
}

GradedPermutation graded_permutation(const std::vector<Eigen::VectorXi>& gradings,
                                     const std::vector<Eigen::Index>& sigma) {
  const std::size_t s = gradings.size();
  if (sigma.size() != s) throw Error(Errc::DimensionMismatch, "permutation length");
  std::vector<Eigen::Index> check = sigma;
  std::sort(check.begin(), check.end());
  for (std::size_t j = 0; j < s; ++j)
    if (check[j] != Eigen::Index(j)) throw Error(Errc::InvalidInput, "not a permutation");
  std::vector<Eigen::Index> dims(s), new_dims(s);
  Eigen::Index n = 1;
  for (std::size_t j = 0; j < s; ++j) {
    dims[j] = gradings[j].size();
    new_dims[std::size_t(sigma[j])] = dims[j];
    n *= dims[j];
  }
  if (n > config().max_ambient * 16) throw Error(Errc::AmbientTooLarge, std::to_string(n));
  GradedPermutation p;
  p.to.resize(std::size_t(n));
  p.sign.resize(std::size_t(n));
  std::vector<Eigen::Index> digit(s), moved(s);
  std::vector<int> odd(s);
  for (Eigen::Index b = 0; b < n; ++b) {
    Eigen::Index rest = b;
    for (std::size_t j = s; j-- > 0;) {
      digit[j] = rest % dims[j];
      rest /= dims[j];
      odd[j] = gradings[j](digit[j]) < 0;
      moved[std::size_t(sigma[j])] = digit[j];
    }
    int flips = 0;
    for (std::size_t i = 0; i < s; ++i)
      if (odd[i])
        for (std::size_t j = i + 1; j < s; ++j)
          if (odd[j] && sigma[i] > sigma[j]) ++flips;
    Eigen::Index t = 0;
    for (std::size_t j = 0; j < s; ++j) t = t * new_dims[j] + moved[j];
    p.to[std::size_t(b)] = t;
    p.sign[std::size_t(b)] = flips % 2 ? -1.0 : 1.0;
  }
  return p;
}

Mat embed_block(const ChainEmbedding& chain, Eigen::Index first, const Mat& x) {
  Eigen::Index last = first, d = 1;
  while (d < x.rows() && last < chain.site_count()) d *= chain.site_dim(last++);
  if (d != x.rows() || x.cols() != x.rows()) throw Error(Errc::DimensionMismatch, "block does not fit the chain");
  std::vector<Eigen::VectorXi> block(chain.site_gradings.begin() + first, chain.site_gradings.begin() + last);
  AmbientSpace local = ChainEmbedding{block}.ambient();
  int tau = parity_of(x, local, 1e-9);
  if (tau < 0) {
    auto [e, o] = parity_split(x, local);
    return embed_block(chain, first, e) + embed_block(chain, first, o);
  }
  Eigen::Index before = 1, after = 1;
  for (Eigen::Index j = 0; j < first; ++j) before *= chain.site_dim(j);
  for (Eigen::Index j = last; j < chain.site_count(); ++j) after *= chain.site_dim(j);
  Mat left = identity(before);
  if (tau) {
    std::vector<Eigen::VectorXi> pre(chain.site_gradings.begin(), chain.site_gradings.begin() + first);
    left = ChainEmbedding{pre}.ambient().theta();
  }
  return kron(Mat(kron(left, x)), identity(after));
}

namespace {

struct RegionUnits {
  std::vector<Eigen::Index> region;
  std::vector<Eigen::Index> dims, strides;
  std::vector<Eigen::VectorXi> grads;
};

// E_{A0}|b> for b with zero digits on the region: returns index and sign
std::pair<Eigen::Index, double> apply_units(const RegionUnits& ru, Eigen::Index b, const std::vector<Eigen::Index>& a) {
  double sign = 1.0;
  for (std::size_t k = ru.region.size(); k-- > 0;) {
    const Eigen::Index j = ru.region[k];
    const auto& gj = ru.grads[std::size_t(j)];
    int tau = (gj(a[k]) < 0) != (gj(0) < 0);
    if (tau) {
      int par = 0;
      for (Eigen::Index i = 0; i < j; ++i) {
        Eigen::Index digit = (b / ru.strides[std::size_t(i)]) % ru.dims[std::size_t(i)];
        par ^= ru.grads[std::size_t(i)](digit) < 0;
      }
      if (par) sign = -sign;
    }
    b += a[k] * ru.strides[std::size_t(j)];
  }
  return {b, sign};
}

}  // namespace

Mat implement_on_region(const ChainEmbedding& chain, const std::vector<Eigen::Index>& region_in, const SiteMap& phi) {
  std::vector<Eigen::Index> region = region_in;
  std::sort(region.begin(), region.end());
  AmbientSpace amb = chain.ambient();
  const Eigen::Index n = amb.dim();
  if (n > config().max_ambient) throw Error(Errc::AmbientTooLarge, std::to_string(n));
  RegionUnits ru;
  ru.region = region;
  const Eigen::Index s = chain.site_count();
  ru.dims.resize(std::size_t(s));
  ru.strides.resize(std::size_t(s));
  ru.grads = chain.site_gradings;
  Eigen::Index stride = 1;
  for (Eigen::Index j = s; j-- > 0;) {
    ru.dims[std::size_t(j)] = chain.site_dim(j);
    ru.strides[std::size_t(j)] = stride;
    stride *= chain.site_dim(j);
  }
  // images of e_{a0} at every region site
  std::vector<std::vector<Mat>> img(region.size());
  for (std::size_t k = 0; k < region.size(); ++k) {
    const Eigen::Index d = chain.site_dim(region[k]);
    for (Eigen::Index a = 0; a < d; ++a) {
      Mat e = Mat::Zero(d, d);
      e(a, 0) = 1.0;
      img[k].push_back(phi(region[k], e));
    }
  }
  Mat f00 = identity(n);
  for (std::size_t k = 0; k < region.size(); ++k) f00 = f00 * img[k][0];
  // homogeneous basis of the range of phi(E_00)
  std::vector<Mat> q1(2);
  for (int par = 0; par < 2; ++par) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if ((amb.grading(i) < 0) == bool(par)) idx.push_back(i);
    if (idx.empty()) {
      q1[std::size_t(par)] = Mat::Zero(n, 0);
      continue;
    }
    Mat sub(Eigen::Index(idx.size()), Eigen::Index(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(Eigen::Index(r), Eigen::Index(c)) = f00(idx[r], idx[c]);
    Mat h = (sub + sub.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
    q1[std::size_t(par)] = Mat::Zero(n, Eigen::Index(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
      for (std::size_t r = 0; r < idx.size(); ++r)
        q1[std::size_t(par)](idx[r], Eigen::Index(c)) = es.eigenvectors()(Eigen::Index(r), keep[c]);
  }
  // basis vectors with zero region digits
  std::vector<Eigen::Index> q0;
  for (Eigen::Index b = 0; b < n; ++b) {
    bool zero = true;
    for (auto j : region) zero = zero && (b / ru.strides[std::size_t(j)]) % ru.dims[std::size_t(j)] == 0;
    if (zero) q0.push_back(b);
  }
  Eigen::Index e0 = 0;
  for (auto b : q0) e0 += amb.grading(b) > 0;
  const Eigen::Index o0 = Eigen::Index(q0.size()) - e0;
  int xi;
  if (q1[0].cols() == e0 && q1[1].cols() == o0)
    xi = 0;
  else if (q1[1].cols() == e0 && q1[0].cols() == o0)
    xi = 1;
  else
    throw Error(Errc::NoIntertwiner, "ranges of the vacuum projections do not match");
  const Eigen::Index r = Eigen::Index(q0.size());
  Mat z(n, r);
  std::array<Eigen::Index, 2> used{0, 0};
  for (Eigen::Index c = 0; c < r; ++c) {
    int par = (amb.grading(q0[std::size_t(c)]) < 0) ^ xi;
    z.col(c) = q1[std::size_t(par)].col(used[std::size_t(par)]++);
  }
  Mat v = Mat::Zero(n, n);
  std::vector<Eigen::Index> a(region.size(), 0);
  // depth-first over the region digits, last site innermost
  std::function<void(std::size_t, const Mat&)> dfs = [&](std::size_t level, const Mat& cur) {
    if (level == 0) {
      for (Eigen::Index c = 0; c < r; ++c) {
        auto [b, sg] = apply_units(ru, q0[std::size_t(c)], a);
        v.col(b) += sg * cur.col(c);
      }
      return;
    }
    const std::size_t k = level - 1;
    for (Eigen::Index x = 0; x < Eigen::Index(img[k].size()); ++x) {
      a[k] = x;
      dfs(k, img[k][std::size_t(x)] * cur);
    }
    a[k] = 0;
  };
  // V E_{A0}|q0_c> = F_{A0} Z|c>
  dfs(region.size(), z);
  double tol = 1e-8;
  if (unitary_defect(v) > tol) throw Error(Errc::NoIntertwiner, "implementing operator is not unitary");
  int par = parity_of(v, amb, 1e-8);
  if (par < 0) throw Error(Errc::ParityMismatch, "implementing unitary is not homogeneous");
  for (std::size_t k = 0; k < region.size(); ++k)
    for (std::size_t x = 0; x < img[k].size(); ++x) {
      const Eigen::Index d = chain.site_dim(region[k]);
      Mat e = Mat::Zero(d, d);
      e(Eigen::Index(x), 0) = 1.0;
      Mat lhs = v * jw_embed(chain, region[k], e) * v.adjoint();
      if ((lhs - img[k][x]).norm() > tol * std::sqrt(double(n)))
        throw Error(Errc::NoIntertwiner, "map is not a graded homomorphism on the region");
    }
  return v;
}

}  // namespace sqca
