#include "sqca/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sqca {

Mat kron_all(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Mat kernel(const Mat& a, double rel_tol) {
  const Eigen::Index c = a.cols();
  if (c == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(c, c);
  Mat r;
  if (a.rows() > c) {
    Eigen::HouseholderQR<Mat> qr(a);
    r = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
  } else {
    r = a;
  }
  Eigen::BDCSVD<Mat> svd(r, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  double cut = rel_tol * std::max(1.0, smax);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return svd.matrixV().rightCols(c - rank);
}

Mat orth_span(const Mat& m, double rel_tol) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Mat cur = m;
  for (int pass = 0; pass < 2; ++pass) {
    Mat g = cur.adjoint() * cur;
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    const RVec& lam = es.eigenvalues();
    double lmax = std::max(lam.maxCoeff(), 0.0);
    double cut = (pass == 0 ? rel_tol * rel_tol : 1e-3) * std::max(lmax, 1e-300);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = lam.size() - 1; i >= 0; --i)
      if (lam(i) > cut) keep.push_back(i);
    Mat b(cur.rows(), Eigen::Index(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
      b.col(Eigen::Index(k)) = cur * es.eigenvectors().col(keep[k]) / std::sqrt(lam(keep[k]));
    cur = b;
    if (cur.cols() == 0) break;
  }
  return cur;
}

Mat sqrt_psd(const Mat& p) {
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  RVec l = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

Mat inv_sqrt_psd(const Mat& p, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  RVec l = es.eigenvalues();
  double cut = rel_tol * std::max(l.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = l(i) > cut ? 1.0 / std::sqrt(l(i)) : 0.0;
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

Mat polar_unitary(const Mat& y) {
  Eigen::JacobiSVD<Mat> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Mat expi_hermitian(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec d(h.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, es.eigenvalues()(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Mat log_unitary(const Mat& u, double* branch) {
  const Eigen::Index n = u.rows();
  Eigen::ComplexSchur<Mat> schur(u);
  const Mat& q = schur.matrixU();
  const Mat& t = schur.matrixT();
  std::vector<double> s(n);
  for (Eigen::Index i = 0; i < n; ++i) s[i] = std::arg(t(i, i));
  std::vector<double> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  double cut = kPi;
  if (n > 0) {
    double best = sorted.front() + 2 * kPi - sorted.back();
    cut = sorted.back() + best / 2;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      double gap = sorted[i + 1] - sorted[i];
      if (gap > best) {
        best = gap;
        cut = sorted[i] + gap / 2;
      }
    }
  }
  RVec h(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double a = s[i];
    while (a > cut) a -= 2 * kPi;
    while (a <= cut - 2 * kPi) a += 2 * kPi;
    h(i) = a;
  }
  if (branch) *branch = cut;
  Mat out = q * h.asDiagonal() * q.adjoint();
  return (out + out.adjoint()) / 2.0;
}

Mat random_complex(Eigen::Index r, Eigen::Index c, Rng& rng) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

Mat random_hermitian(Eigen::Index n, Rng& rng) {
  Mat m = random_complex(n, n, rng);
  return (m + m.adjoint()) / 2.0;
}

Mat random_unitary(Eigen::Index n, Rng& rng) {
  Mat m = random_complex(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Mat diag_signs(const std::vector<int>& s) {
  Mat d = Mat::Zero(Eigen::Index(s.size()), Eigen::Index(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) d(Eigen::Index(i), Eigen::Index(i)) = double(s[i]);
  return d;
}

}  // namespace sqca

namespace sqca {

Mat kernel_psd(const Mat& g, double rel_tol) {
  const Eigen::Index n = g.rows();
  if (n == 0) return Mat(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const RVec& l = es.eigenvalues();
  double cut = rel_tol * std::max(1.0, l(n - 1));
  Eigen::Index k = 0;
  while (k < n && l(k) <= cut) ++k;
  return es.eigenvectors().leftCols(k);
}

}  // namespace sqca
