#include "sqca/superalg.hpp"

#include <algorithm>
#include <cmath>

namespace sqca {

namespace {

Eigen::Index first_largest(const Mat& v) {
  double m = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v.data()[i]) >= m * (1 - 1e-9)) return i;
  return 0;
}

void fix_sign(Mat& v) {
  cplx z = v.data()[first_largest(v)];
  double s = std::abs(z.real()) > 1e-9 * std::abs(z) ? z.real() : z.imag();
  if (s < 0) v = -v;
}

Mat random_element(const GradedSubalgebra& b, Eigen::Index from, Eigen::Index to, Rng& rng) {
  std::normal_distribution<double> nd;
  const Eigen::Index n = b.ambient.dim();
  Mat x = Mat::Zero(n, n);
  for (Eigen::Index i = from; i < to; ++i) x += cplx(nd(rng), nd(rng)) * b.basis[std::size_t(i)];
  return x;
}

}  // namespace

void fix_phase(Mat& v) {
  cplx z = v.data()[first_largest(v)];
  if (std::abs(z) > 0) v *= std::conj(z) / std::abs(z);
}

MatrixUnits matrix_units(const GradedSubalgebra& b, bool homogeneous, Rng& rng) {
  const Eigen::Index n = b.ambient.dim();
  if (!b.contains_identity) throw Error(Errc::NotCentralSimple, "algebra is not unital");
  Mat y = homogeneous ? random_element(b, 0, b.n_even, rng) : random_element(b, 0, b.dim(), rng);
  Mat h = y + y.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const RVec& l = es.eigenvalues();
  double range = l(n - 1) - l(0);
  double gap_tol = 1e-7 * (1.0 + range);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i)
    if (i == n || l(i) - l(i - 1) > gap_tol) {
      clusters.push_back({start, i - start});
      start = i;
    }
  const Eigen::Index k = Eigen::Index(clusters.size());
  const Eigen::Index r = n / k;
  bool ok = k * k == b.dim() && k * r == n;
  for (auto& c : clusters) ok = ok && c.second == r;
  if (!ok) throw Error(Errc::NotCentralSimple, "not a simple matrix algebra (spectral multiplicities)");
  std::vector<Mat> p;
  for (auto& c : clusters) {
    Mat v = es.eigenvectors().middleCols(c.first, c.second);
    p.push_back(v * v.adjoint());
  }
  Mat x = random_element(b, 0, b.dim(), rng);
  auto [xe, xo] = parity_split(x, b.ambient);
  MatrixUnits f(static_cast<std::size_t>(k), std::vector<Mat>(static_cast<std::size_t>(k)));
  f[0][0] = p[0];
  for (Eigen::Index i = 1; i < k; ++i) {
    Mat c;
    if (homogeneous) {
      Mat ce = p[std::size_t(i)] * xe * p[0];
      Mat co = p[std::size_t(i)] * xo * p[0];
      c = ce.norm() >= co.norm() ? ce : co;
    } else {
      c = p[std::size_t(i)] * x * p[0];
    }
    double s = (c.adjoint() * c).trace().real() / double(r);
    if (s <= 1e-20) throw Error(Errc::NotCentralSimple, "degenerate matrix unit");
    c /= std::sqrt(s);
    if ((c.adjoint() * c - p[0]).norm() > 1e-7 * std::sqrt(double(n)))
      throw Error(Errc::NotCentralSimple, "corner is not one-dimensional");
    f[std::size_t(i)][0] = c;
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      if (j != 0) f[std::size_t(i)][std::size_t(j)] = f[std::size_t(i)][0] * f[std::size_t(j)][0].adjoint();
  return f;
}

Mat inner_intertwiner(const GradedSubalgebra& b, const LinearMap& phi, bool involution) {
  const Eigen::Index n = b.ambient.dim();
  if (b.dim() == 1) return Mat::Identity(n, n);
  Rng rng(0x1a7e + std::uint64_t(b.dim()));
  MatrixUnits f;
  try {
    f = matrix_units(b, false, rng);
  } catch (const Error& e) {
    throw Error(Errc::AmbiguousKernel, std::string("intertwiner space is not one-dimensional: ") + e.what());
  }
  const std::size_t k = f.size();
  std::vector<Mat> col;
  for (std::size_t i = 0; i < k; ++i) col.push_back(phi(f[i][0]));
  Mat v;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Mat z = random_element(b, 0, b.dim(), rng);
    v = Mat::Zero(n, n);
    for (std::size_t i = 0; i < k; ++i) v += col[i] * z * f[i][0].adjoint();
    if (v.norm() > 1e-6 * z.norm()) break;
  }
  double c = (v.adjoint() * v).trace().real() / double(n);
  if (!(c > 1e-24)) throw Error(Errc::NoIntertwiner, "zero intertwiner");
  v /= std::sqrt(c);
  double tol = 1e-7 * std::sqrt(double(n));
  if ((v.adjoint() * v - Mat::Identity(n, n)).norm() > tol)
    throw Error(Errc::NoIntertwiner, "intertwiner is not unitary");
  for (const auto& x : b.generators(8))
    if ((v * x - phi(x) * v).norm() > tol * std::max(1.0, x.norm()))
      throw Error(Errc::NoIntertwiner, "map is not inner on the algebra");
  if (involution) {
    Mat v2 = v * v;
    cplx lam = v2.trace() / double(n);
    if ((v2 - lam * Mat::Identity(n, n)).norm() > tol) throw Error(Errc::NoIntertwiner, "not an involution");
    v /= std::sqrt(lam);
    fix_sign(v);
  } else {
    fix_phase(v);
  }
  return v;
}

CentralSimpleShape classify_central_simple(const GradedSubalgebra& b) {
  const Eigen::Index n = b.ambient.dim();
  if (!b.contains_identity) throw Error(Errc::NotCentralSimple, "algebra is not unital");
  if (closure_defect(b) > 1e-8) throw Error(Errc::NotSemisimple, "span is not closed");
  CentralSimpleShape shape;
  if (b.dim() == 1) {
    shape.kind = RationalShape{1, 0, Mat::Identity(n, n)};
    return shape;
  }
  GradedSubalgebra z = center(b);
  if (z.dim() == 1) {
    Eigen::Index k = Eigen::Index(std::llround(std::sqrt(double(b.dim()))));
    if (k * k != b.dim() || n % k != 0) throw Error(Errc::NotCentralSimple, "dimension is not a square");
    const AmbientSpace& amb = b.ambient;
    Mat theta_b = inner_intertwiner(b, [&](const Mat& x) { return amb.theta_conj(x); }, true);
    double t = theta_b.trace().real() / double(n / k);
    int p = int(std::llround((double(k) + t) / 2.0));
    shape.kind = RationalShape{p, int(k) - p, theta_b};
    return shape;
  }
  if (z.dim() == 2 && z.n_even == 1) {
    Mat zo = z.basis[1];
    Mat a = zo + zo.adjoint();
    if (a.norm() < 1e-6 * zo.norm()) a = cplx(0, 1) * (zo - zo.adjoint());
    Mat a2 = a * a;
    double s = a2.trace().real() / double(n);
    Mat eps = a / std::sqrt(s);
    if ((eps * eps - Mat::Identity(n, n)).norm() > 1e-7 * std::sqrt(double(n)))
      throw Error(Errc::NotCentralSimple, "odd central element is not a scalar multiple of a unitary");
    fix_sign(eps);
    Eigen::Index k = Eigen::Index(std::llround(std::sqrt(double(b.dim()) / 2.0)));
    if (2 * k * k != b.dim()) throw Error(Errc::NotCentralSimple, "dimension is not twice a square");
    shape.kind = RadicalShape{int(k), eps};
    return shape;
  }
  throw Error(Errc::NotCentralSimple, "center has dimension " + std::to_string(z.dim()));
}

}  // namespace sqca
