#pragma once

#include "sqca/gsystem.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace sqca {

struct Site {
  Eigen::VectorXi grading;
  // one homogeneous unitary per group element, projective
  std::vector<Mat> rep;

  Eigen::Index dim() const { return grading.size(); }
  AmbientSpace space() const { return AmbientSpace(grading); }
};

Site plain_site(const FiniteGroup& g, Eigen::Index d);
Site graded_site(const FiniteGroup& g, const Eigen::VectorXi& grading);
Site regular_site(const FiniteGroup& g);
Site site_tensor(const Site& a, const Site& b);
// the same Hilbert space with complex-conjugated representation
Site conjugate_site(const Site& s);

struct ChainWindow {
  FiniteGroup group;
  std::vector<Site> sites;
  bool periodic = false;

  Eigen::Index size() const { return Eigen::Index(sites.size()); }
  Eigen::Index wrap(Eigen::Index j) const;
  Eigen::Index total_dim() const;
  ChainEmbedding embedding() const;
  // the listed sites as a chain of their own, in the given order
  ChainEmbedding embedding(const std::vector<Eigen::Index>& sites) const;
};

ChainWindow uniform_window(const FiniteGroup& g, const Site& s, Eigen::Index count, bool periodic = false);
void validate_window(const ChainWindow& w);
bool same_window(const ChainWindow& a, const ChainWindow& b);

// P|b> = sign(b) |to(b)>, implementing the graded reordering of tensor factors
struct GradedPermutation {
  std::vector<Eigen::Index> to;
  std::vector<double> sign;

  Mat matrix() const;
  // P x P*
  Mat conjugate(const Mat& x) const;
};

// site j moves to position sigma[j]
GradedPermutation graded_permutation(const std::vector<Eigen::VectorXi>& gradings,
                                     const std::vector<Eigen::Index>& sigma);

// homogeneous operator on consecutive sites [first, first + k) embedded with its Jordan-Wigner string
Mat embed_block(const ChainEmbedding& chain, Eigen::Index first, const Mat& x);

// homogeneous unitary V with V x V* = phi(site, x) for x in the algebra of the region sites
using SiteMap = std::function<Mat(Eigen::Index site, const Mat& local)>;
Mat implement_on_region(const ChainEmbedding& chain, const std::vector<Eigen::Index>& region, const SiteMap& phi);

enum class RealizationKind { GlobalUnitary, BlockMaps };

struct QcaRealization {
  ChainWindow window;
  RealizationKind kind = RealizationKind::BlockMaps;
  Mat unitary;
  // patches[n] acts on sites 2n-1 .. 2n+2 and implements the automorphism on B_n
  std::vector<Mat> patches;
  int block_size = 1;
  std::string provenance;
};

std::vector<Eigen::Index> admissible_cells(const QcaRealization& q);

// the containment defect is computed from squared norms, so its floor is about 1e-8
inline constexpr double kContainmentTol = 1e-6;
Eigen::Index default_cell(const QcaRealization& q);
// admissible cells whose left neighbour is admissible too
std::vector<Eigen::Index> factorization_cells(const QcaRealization& q);

// the automorphism on B_n = A_{2n} A_{2n+1}, in the local frame of the patch 2n-1 .. 2n+2
class CellMap {
 public:
  CellMap(const QcaRealization& q, Eigen::Index n);

  Eigen::Index cell() const { return n_; }
  const std::vector<Eigen::Index>& patch_sites() const { return sites_; }
  const ChainEmbedding& patch_chain() const { return patch_; }
  ChainEmbedding block_chain() const;
  ChainEmbedding left_chain() const;
  ChainEmbedding right_chain() const;
  Eigen::Index dim(int k) const { return d_[std::size_t(k)]; }

  // x on H_{2n} (x) H_{2n+1}
  Mat operator()(const Mat& x) const;
  // relative defect of the inclusion alpha(B_n) in the patch algebra
  double containment_defect() const { return containment_; }

  GradedSubalgebra left_overlap() const;
  GradedSubalgebra right_overlap() const;
  // relative distance of l (x) 1 and (Theta^tau) (x) r from alpha(B_n)
  double membership_defect_left(const Mat& l) const;
  double membership_defect_right(const Mat& r) const;

 private:
  Eigen::Index n_;
  std::vector<Eigen::Index> sites_;
  ChainEmbedding patch_;
  std::array<Eigen::Index, 4> d_{};
  Eigen::Index denv_ = 1, m_ = 1, db_ = 1;
  std::vector<int> block_parity_;
  // column block i of z_ is Z_i with alpha(E_ij) = Z_i Z_j^* / denv
  Mat z_;
  double containment_ = 0.0;

  GradedSubalgebra overlap(bool left) const;
  double membership(const Mat& z) const;
};

struct OverlapPair {
  GradedSubalgebra L, R;
  Eigen::Index at = 0;
};

OverlapPair overlap_algebras(const QcaRealization& q, Eigen::Index n);

struct FactorizationReport {
  Eigen::Index cell = 0;
  Eigen::Index dim_c = 0, dim_b = 0, dim_l = 0, dim_r = 0, dim_r_prev = 0;
  std::string shape_l, shape_r;
  double supercommutation = 0.0;
  double intersection_gap = 0.0;
  bool ok = true;
  std::vector<std::string> failures;
};

FactorizationReport verify_factorization(const QcaRealization& q, Eigen::Index n);

struct QcaIndexReport {
  Eigen::Index cell = 0;
  IndexTriple index;
  IndexTriple left_route;
  Eigen::Index dim_l = 0, dim_r = 0;
  std::string shape_l, shape_r;
};

std::string shape_name(const CentralSimpleShape& s);

QcaIndexReport qca_index_report(const QcaRealization& q, Eigen::Index n);
IndexTriple qca_index(const QcaRealization& q, Eigen::Index n);
IndexTriple qca_index(const QcaRealization& q);

// evenness and equivariance on random elements of every admissible cell
void validate_realization(const QcaRealization& q, std::uint64_t seed = 7);

QcaRealization identity_qca(const ChainWindow& w);
QcaRealization compose_qca(const QcaRealization& a, const QcaRealization& b);
QcaRealization stack_qca(const QcaRealization& a, const QcaRealization& b);
QcaRealization coarse_grain(const QcaRealization& q, int factor);
QcaRealization inverse_qca(const QcaRealization& q);

// graded translation of identical sites by one step
QcaRealization preset_site_shift(const ChainWindow& w, bool left = false);
QcaRealization preset_shift(int d, Eigen::Index sites, bool left = false, bool periodic = false);
QcaRealization preset_majorana_shift(Eigen::Index sites, bool left = false, bool periodic = false,
                                     bool swap_order = false);
// half_sites: return the chain of A_{n,L}, A_{n,R} before grouping them in pairs
QcaRealization preset_zeta_example(const FiniteGroup& g, const std::vector<Mat>& v, const Z2Hom& zeta,
                                   Eigen::Index sites, bool half_sites = false);
QcaRealization preset_cocycle_example(const FiniteGroup& g, const std::vector<Mat>& v, Eigen::Index sites,
                                      bool half_sites = false);

struct GateBlock {
  std::vector<Eigen::Index> sites;
  Mat unitary;
};
using CircuitLayer = std::vector<GateBlock>;

Mat block_rep(const ChainWindow& w, const std::vector<Eigen::Index>& sites, int g);
void check_gate(const ChainWindow& w, const GateBlock& b);
Mat random_invariant_unitary(const ChainWindow& w, const std::vector<Eigen::Index>& sites, Rng& rng);
// layer 1 on the blocks (2n, 2n+1), layer 2 on the blocks (2n-1, 2n)
std::vector<CircuitLayer> random_brickwork(const ChainWindow& w, Rng& rng);
// the first layer acts first
QcaRealization circuit_from_layers(const ChainWindow& w, const std::vector<CircuitLayer>& layers);

struct Decoupling {
  // alpha = Ad(phi layer)^{-1} o Ad(psi layer); phi blocks on (2n-1, 2n), psi blocks on (2n, 2n+1)
  std::vector<GateBlock> phi;
  std::vector<GateBlock> psi;
  std::vector<std::string> auxiliaries;
  QcaRealization decoupled;
  double roundtrip_error = 0.0;
};

Decoupling decouple_trivial(const QcaRealization& q, bool auto_stack = false);

}  // namespace sqca
