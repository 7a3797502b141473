#pragma once

#include "sqca/common.hpp"

namespace sqca {

inline Eigen::Map<const Vec> vec_view(const Mat& x) { return {x.data(), x.size()}; }

inline Mat unvec(const Eigen::Ref<const Vec>& v, Eigen::Index n) {
  return Eigen::Map<const Mat>(v.data(), n, v.size() / n);
}

template <typename Derived>
double op_norm(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) return 0.0;
  using Plain = typename Derived::PlainObject;
  Plain g = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<Plain> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

template <typename DA, typename DB>
cplx hs_inner(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  return (x.adjoint() * y).trace() / double(x.rows());
}

template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename DA::Scalar;
  Dense<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat kron_all(const std::vector<Mat>& factors);

// orthonormal columns spanning ker(a)
Mat kernel(const Mat& a, double rel_tol = 1e-8);

// orthonormal (Euclidean) basis for the column span of m
Mat orth_span(const Mat& m, double rel_tol = 1e-9);

Mat polar_unitary(const Mat& y);
Mat sqrt_psd(const Mat& p);
Mat inv_sqrt_psd(const Mat& p, double rel_tol = 1e-12);

// exp(i h) for self-adjoint h
Mat expi_hermitian(const Mat& h);
// self-adjoint h with exp(i h) = u and spectrum in (a-2pi, a], a chosen at the widest spectral gap
Mat log_unitary(const Mat& u, double* branch = nullptr);

Mat random_complex(Eigen::Index r, Eigen::Index c, Rng& rng);
Mat random_hermitian(Eigen::Index n, Rng& rng);
Mat random_unitary(Eigen::Index n, Rng& rng);

Mat diag_signs(const std::vector<int>& s);

}  // namespace sqca

namespace sqca {

// eigenvectors of a PSD Gram matrix with eigenvalue <= rel_tol * max(1, lambda_max)
Mat kernel_psd(const Mat& g, double rel_tol = 1e-11);

}  // namespace sqca
