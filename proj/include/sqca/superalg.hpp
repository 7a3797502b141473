#pragma once

#include "sqca/common.hpp"
#include "sqca/linalg.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace sqca {

struct AmbientSpace {
  Eigen::VectorXi grading;

  AmbientSpace() = default;
  explicit AmbientSpace(Eigen::VectorXi g) : grading(std::move(g)) {}
  static AmbientSpace trivial(Eigen::Index n) { return AmbientSpace(Eigen::VectorXi::Ones(n)); }

  Eigen::Index dim() const { return grading.size(); }
  Mat theta() const { return grading.cast<cplx>().asDiagonal(); }
  Mat theta_conj(const Mat& x) const {
    Eigen::VectorXd g = grading.cast<double>();
    return g.asDiagonal() * x * g.asDiagonal();
  }
};

// basis orthonormal under tr(x*y)/N; the first n_even elements are even, the rest odd
struct GradedSubalgebra {
  AmbientSpace ambient;
  std::vector<Mat> basis;
  Eigen::Index n_even = 0;
  bool contains_identity = false;

  Eigen::Index dim() const { return Eigen::Index(basis.size()); }
  // N^2 x dim, Euclidean-orthonormal columns
  Mat frame() const;
  Mat frame_even() const;
  Mat frame_odd() const;
  Mat project(const Mat& x) const;
  double distance(const Mat& x) const;
  bool contains(const Mat& x, double tol = -1) const;
  std::vector<Mat> even_basis() const { return {basis.begin(), basis.begin() + n_even}; }
  std::vector<Mat> odd_basis() const { return {basis.begin() + n_even, basis.end()}; }
  // a few random elements generating the algebra (all of the basis when small)
  std::vector<Mat> generators(std::size_t small = 16) const;
};

GradedSubalgebra subalgebra_from_frames(const AmbientSpace& amb, const Mat& even_frame, const Mat& odd_frame);
GradedSubalgebra scalars(const AmbientSpace& amb);
GradedSubalgebra full_algebra(const AmbientSpace& amb);

struct ChainEmbedding {
  std::vector<Eigen::VectorXi> site_gradings;

  Eigen::Index site_count() const { return Eigen::Index(site_gradings.size()); }
  Eigen::Index site_dim(Eigen::Index n) const { return site_gradings[std::size_t(n)].size(); }
  Eigen::Index total_dim() const;
  AmbientSpace ambient() const;
};

struct RationalShape {
  int p = 1, q = 0;
  Mat grading_operator;
};
struct RadicalShape {
  int n = 1;
  Mat epsilon;
};
struct CentralSimpleShape {
  std::variant<RationalShape, RadicalShape> kind;
  bool is_radical() const { return std::holds_alternative<RadicalShape>(kind); }
  const RationalShape& rational() const { return std::get<RationalShape>(kind); }
  const RadicalShape& radical() const { return std::get<RadicalShape>(kind); }
};

std::pair<Mat, Mat> parity_split(const Mat& x, const AmbientSpace& amb);
// 0 even, 1 odd, -1 inhomogeneous
int parity_of(const Mat& x, const AmbientSpace& amb, double tol = 1e-10);
Mat supercommutator(const Mat& x, const Mat& y, const AmbientSpace& amb);

GradedSubalgebra close_algebra(const std::vector<Mat>& generators, const AmbientSpace& amb);
GradedSubalgebra supercommutant(const GradedSubalgebra& s);
GradedSubalgebra commutant(const GradedSubalgebra& s);
GradedSubalgebra double_supercommutant(const GradedSubalgebra& s);
GradedSubalgebra intersect(const GradedSubalgebra& a, const GradedSubalgebra& b);
GradedSubalgebra center(const GradedSubalgebra& s);
double closure_defect(const GradedSubalgebra& s);
double span_distance(const GradedSubalgebra& a, const GradedSubalgebra& b);

Mat jw_embed(const ChainEmbedding& chain, Eigen::Index site, const Mat& x);
// embedded algebra of a set of sites
GradedSubalgebra region_algebra(const ChainEmbedding& chain, const std::vector<Eigen::Index>& sites);

CentralSimpleShape classify_central_simple(const GradedSubalgebra& b);

using LinearMap = std::function<Mat(const Mat&)>;

// f[i][j] with f_ij f_kl = delta_jk f_il and sum_i f_ii = I, for B simple as an ungraded algebra
using MatrixUnits = std::vector<std::vector<Mat>>;
MatrixUnits matrix_units(const GradedSubalgebra& b, bool homogeneous, Rng& rng);

// unitary V in B with V x V* = phi(x) for x in B
Mat inner_intertwiner(const GradedSubalgebra& b, const LinearMap& phi, bool involution = false);

Mat graded_tensor_autom(const Mat& u1, int xi1, const Mat& u2, int xi2, const AmbientSpace& g1,
                        const AmbientSpace& g2);

AmbientSpace graded_tensor(const AmbientSpace& a, const AmbientSpace& b);
// x (x) y embedded by b1 Theta1^{tau(b2)} (x) b2 for homogeneous y
Mat graded_kron(const Mat& x, const Mat& y, const AmbientSpace& a, const AmbientSpace& b);
GradedSubalgebra graded_tensor(const GradedSubalgebra& a, const GradedSubalgebra& b);

void fix_phase(Mat& v);

}  // namespace sqca
