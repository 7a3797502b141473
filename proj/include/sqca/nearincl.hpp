#pragma once

#include "sqca/superalg.hpp"

#include <string>
#include <vector>

namespace sqca {

// A~ = (A#)', built as {a+ + a- Theta_A Theta} when A has inner grading
GradedSubalgebra tilde_algebra(const GradedSubalgebra& a);

// trace-preserving expectation onto A#, the HS projection onto the commutant of A~
class SharpExpectation {
 public:
  explicit SharpExpectation(const GradedSubalgebra& a);
  Mat operator()(const Mat& x) const { return range_.project(x); }
  const GradedSubalgebra& tilde() const { return tilde_; }
  const GradedSubalgebra& range() const { return range_; }

 private:
  GradedSubalgebra tilde_;
  GradedSubalgebra range_;
};

Mat cond_expect_supercommutant(const Mat& x, const GradedSubalgebra& a);

struct BoundCheck {
  std::string tag;
  double constant = 0.0;
  double bound = 0.0;
  double observed = 0.0;
  bool applicable = true;
  bool pass = true;
};

struct NearInclusionReport {
  double epsilon_hs = 0.0;  // exact
  double epsilon_op = 0.0;  // estimate from samples
  std::vector<BoundCheck> bound_checks;
  bool ok() const;
};

// how nearly A sits inside B#, with the supercommutator bounds checked on samples
NearInclusionReport near_inclusion_report(const GradedSubalgebra& a, const GradedSubalgebra& b, Rng& rng,
                                          int samples = 12);

struct ImplementerPair {
  GradedSubalgebra domain;
  LinearMap phi;
  double gamma = -1.0;  // known bound on ||phi(a) - a|| / ||a||; estimated on the basis when negative
};

struct Implementer {
  Mat u;                   // u* a u = phi(a)
  double epsilon = 0.0;    // sum of the gammas
  double distance = 0.0;   // ||u - I||
  double bound = 0.0;      // sqrt(2) eps (1 + (1 - eps^2)^(1/2))^(-1/2), for eps < 1
  double defect = 0.0;
  Eigen::Index kernel_dim = 0;
  bool bound_applicable() const { return epsilon < 1.0; }
};

// symmetry: unitaries on the ambient space whose adjoint action u must commute with
Implementer inner_implementer(const std::vector<ImplementerPair>& pairs, const std::vector<Mat>& symmetry = {});

// A = w B w* with w = exp(i delta h), phi = Ad w* : A -> B
struct PerturbedPair {
  GradedSubalgebra a, b;
  Mat w;
  LinearMap phi;
  double epsilon = 0.0;  // 2 ||w - I||, bounds both ||phi(a) - a|| / ||a|| and the near inclusion
};
PerturbedPair perturbed_pair(const GradedSubalgebra& b, const Mat& h, double delta);

struct NearInclusionTheoremReport {
  double epsilon = 0.0;
  bool precondition = false;
  Mat u;  // u A u* in B
  double distance = 0.0;
  double containment_defect = 0.0;
  std::vector<BoundCheck> bound_checks;
  bool ok() const;
};

NearInclusionTheoremReport verify_near_inclusion_theorem(const GradedSubalgebra& a, const GradedSubalgebra& b,
                                                         const LinearMap& phi, const std::vector<Mat>& symmetry,
                                                         int trials, Rng& rng, double epsilon = -1.0,
                                                         double gamma = -1.0);
NearInclusionTheoremReport verify_near_inclusion_theorem(const PerturbedPair& p, const std::vector<Mat>& symmetry,
                                                         int trials, Rng& rng);

}  // namespace sqca
