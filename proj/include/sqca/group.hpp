#pragma once

#include "sqca/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sqca {

struct FiniteGroup {
  int order = 1;
  std::vector<int> table{0};
  int identity = 0;
  std::vector<int> inverses{0};
  std::string name;

  int mul(int g, int h) const { return table[std::size_t(g * order + h)]; }
  int inv(int g) const { return inverses[std::size_t(g)]; }
};

struct ParityExtension {
  FiniteGroup group;
  std::vector<int> embed;
  int theta = 1;
};

struct Z2Hom {
  std::vector<int> values;
  bool operator==(const Z2Hom&) const = default;
};

// phases(g, h) = nu(g, h)
struct Cocycle2 {
  Mat phases;
};

struct CohomClass {
  std::int64_t modulus = 1;
  IMat canonical;
  bool operator==(const CohomClass& o) const {
    return modulus == o.modulus && canonical == o.canonical;
  }
  bool is_trivial() const { return canonical.isZero(); }
};

struct CocycleReport {
  bool ok = true;
  double worst = 0.0;
  int g = -1, h = -1, k = -1;
};

FiniteGroup group_from_table(const std::vector<std::vector<int>>& table, std::string name = {});
FiniteGroup group_preset(const std::string& name);
FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
std::vector<std::string> group_preset_names();

ParityExtension parity_extend(const FiniteGroup& g);

bool is_z2_hom(const FiniteGroup& g, const Z2Hom& z);
std::vector<Z2Hom> enumerate_z2_homs(const FiniteGroup& g);
// one-dimensional characters G -> U(1)
std::vector<Vec> enumerate_characters(const FiniteGroup& g);

Cocycle2 trivial_cocycle(const FiniteGroup& g);
Cocycle2 coboundary(const FiniteGroup& g, const Vec& mu);
Cocycle2 cocycle_mul(const Cocycle2& a, const Cocycle2& b);
Cocycle2 cocycle_inv(const Cocycle2& a);
Cocycle2 cocycle_from_exponents(const IMat& k, std::int64_t m);

CocycleReport is_cocycle(const FiniteGroup& g, const Cocycle2& nu);
IMat snap_cocycle(const FiniteGroup& g, const Cocycle2& nu, std::int64_t m);
std::optional<Vec> cohomologous(const FiniteGroup& g, const Cocycle2& nu1, const Cocycle2& nu2);
Cocycle2 twist_class(const FiniteGroup& g, const Z2Hom& z1, const Z2Hom& z2);
CohomClass canonical_class(const FiniteGroup& g, const Cocycle2& nu);
std::vector<CohomClass> h2_enumerate(const FiniteGroup& g, std::int64_t m);
// a representative cocycle for each class returned by h2_enumerate
std::vector<Cocycle2> h2_representatives(const FiniteGroup& g, std::int64_t m);

}  // namespace sqca
