#pragma once

#include "sqca/group.hpp"
#include "sqca/superalg.hpp"

#include <optional>
#include <string>

namespace sqca {

struct GSystem {
  FiniteGroup group;
  GradedSubalgebra algebra;
  std::vector<Mat> action;

  Mat rho(int g, const Mat& x) const { return action[std::size_t(g)] * x * action[std::size_t(g)].adjoint(); }
};

// q * sqrt(2)^radical with q = num/den > 0
struct IndexValue {
  std::int64_t num = 1, den = 1;
  int radical = 0;

  static IndexValue make(std::int64_t num, std::int64_t den, int radical);
  double value() const;
  std::string str() const;
  bool operator==(const IndexValue&) const = default;
};

IndexValue operator*(const IndexValue& a, const IndexValue& b);
IndexValue inverse(const IndexValue& a);

struct IndexTriple {
  FiniteGroup group;
  IndexValue d;
  Z2Hom zeta;
  Cocycle2 nu_rep;
  CohomClass nu;

  bool operator==(const IndexTriple& o) const { return d == o.d && zeta == o.zeta && nu == o.nu; }
  bool is_trivial() const;
  std::string str() const;
};

IndexTriple neutral_triple(const FiniteGroup& g);
IndexTriple make_triple(const FiniteGroup& g, IndexValue d, Z2Hom zeta, const Cocycle2& nu);
IndexTriple triple_mul(const IndexTriple& a, const IndexTriple& b);
IndexTriple triple_inv(const IndexTriple& a);

struct GSystemIndexData {
  IndexTriple index;
  CentralSimpleShape shape;
  // V(g) in B for rational systems, V0(g) in the even part for radical ones
  std::vector<Mat> v;
};

// tr(W* Z)/tr(W* W), verified
cplx extract_scalar(const Mat& z, const Mat& w, double tol = 1e-9);

void validate_gsystem(const GSystem& s);
GSystemIndexData gsystem_index_data(const GSystem& s);
IndexTriple gsystem_index(const GSystem& s);
IndexTriple relative_index(const GSystem& a, const GSystem& b);
GSystem stack_gsystems(const GSystem& a, const GSystem& b);

// character on Z2 x G, indexed as in parity_extend
Vec first_cohomology_index(const GSystem& s, const Mat& u);
std::optional<Mat> deform_to_identity_witness(const GSystem& s, const Mat& u);

}  // namespace sqca
