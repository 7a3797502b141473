#pragma once

#include "sqca/linalg.hpp"
#include "sqca/superalg.hpp"

namespace tu {

using namespace sqca;

inline Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat sy() {
  Mat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Mat id(Eigen::Index n) { return Mat::Identity(n, n); }

inline AmbientSpace qubit() {
  Eigen::VectorXi g(2);
  g << 1, -1;
  return AmbientSpace(g);
}

inline GradedSubalgebra span_of(const AmbientSpace& amb, const std::vector<Mat>& xs) {
  return close_algebra(xs, amb);
}

inline Mat random_even_unitary(const AmbientSpace& amb, Rng& rng) {
  const Eigen::Index n = amb.dim();
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index i = 0; i < n; ++i) (amb.grading(i) > 0 ? plus : minus).push_back(i);
  Mat u = Mat::Zero(n, n);
  for (const auto* part : {&plus, &minus}) {
    const Eigen::Index k = Eigen::Index(part->size());
    if (k == 0) continue;
    Mat v = random_unitary(k, rng);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) u((*part)[std::size_t(i)], (*part)[std::size_t(j)]) = v(i, j);
  }
  return u;
}

inline Mat random_member_of(const GradedSubalgebra& s, Rng& rng) {
  std::normal_distribution<double> nd;
  Mat x = Mat::Zero(s.ambient.dim(), s.ambient.dim());
  for (const auto& b : s.basis) x += cplx(nd(rng), nd(rng)) * b;
  return x;
}

inline GradedSubalgebra conjugate(const GradedSubalgebra& s, const Mat& u) {
  GradedSubalgebra out = s;
  for (auto& b : out.basis) b = u * b * u.adjoint();
  return out;
}

// brute-force supercommutant: dense SVD of the full constraint map over every basis element
inline Mat brute_supercommutant_frame(const GradedSubalgebra& s) {
  const AmbientSpace& amb = s.ambient;
  const Eigen::Index n = amb.dim();
  Mat big(n * n * s.dim(), n * n);
  for (Eigen::Index c = 0; c < n * n; ++c) {
    Mat e = Mat::Zero(n, n);
    e(c % n, c / n) = 1.0;
    auto [ee, eo] = parity_split(e, amb);
    for (Eigen::Index k = 0; k < s.dim(); ++k) {
      const Mat& b = s.basis[std::size_t(k)];
      auto [be, bo] = parity_split(b, amb);
      Mat r = e * b - b * e + 2.0 * (bo * eo);
      big.block(k * n * n, c, n * n, 1) = Eigen::Map<const Vec>(r.data(), n * n);
    }
  }
  Eigen::JacobiSVD<Mat> svd(big, Eigen::ComputeFullV);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  return svd.matrixV().rightCols(n * n - rank);
}

inline double frame_distance(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  return op_norm(Mat(a - b * (b.adjoint() * a)));
}

}  // namespace tu
