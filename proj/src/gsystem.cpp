#include "sqca/gsystem.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace sqca {

IndexValue IndexValue::make(std::int64_t num, std::int64_t den, int radical) {
  if (num <= 0 || den <= 0) throw Error(Errc::InvalidInput, "index value must be positive");
  std::int64_t g = std::gcd(num, den);
  return {num / g, den / g, radical & 1};
}

double IndexValue::value() const { return double(num) / double(den) * (radical ? std::sqrt(2.0) : 1.0); }

std::string IndexValue::str() const {
  std::ostringstream o;
  if (radical) o << "sqrt2*";
  o << num;
  if (den != 1) o << "/" << den;
  return o.str();
}

IndexValue operator*(const IndexValue& a, const IndexValue& b) {
  std::int64_t extra = (a.radical && b.radical) ? 2 : 1;
  return IndexValue::make(a.num * b.num * extra, a.den * b.den, a.radical ^ b.radical);
}

IndexValue inverse(const IndexValue& a) {
  if (a.radical) return IndexValue::make(a.den, 2 * a.num, 1);
  return IndexValue::make(a.den, a.num, 0);
}

bool IndexTriple::is_trivial() const {
  if (!(d == IndexValue{})) return false;
  for (int z : zeta.values)
    if (z) return false;
  return nu.is_trivial();
}

std::string IndexTriple::str() const {
  std::ostringstream o;
  o << "(" << d.str() << ", [";
  for (std::size_t i = 0; i < zeta.values.size(); ++i) o << (i ? "," : "") << zeta.values[i];
  o << "], " << (nu.is_trivial() ? "e" : "nontrivial") << ")";
  return o.str();
}

IndexTriple make_triple(const FiniteGroup& g, IndexValue d, Z2Hom zeta, const Cocycle2& nu) {
  IndexTriple t;
  t.group = g;
  t.d = d;
  t.zeta = std::move(zeta);
  t.nu_rep = nu;
  t.nu = canonical_class(g, nu);
  return t;
}

IndexTriple neutral_triple(const FiniteGroup& g) {
  return make_triple(g, IndexValue{}, Z2Hom{std::vector<int>(std::size_t(g.order), 0)}, trivial_cocycle(g));
}

IndexTriple triple_mul(const IndexTriple& a, const IndexTriple& b) {
  if (a.group.order != b.group.order) throw Error(Errc::DimensionMismatch, "index triples over different groups");
  Z2Hom z;
  for (std::size_t i = 0; i < a.zeta.values.size(); ++i) z.values.push_back((a.zeta.values[i] + b.zeta.values[i]) % 2);
  Cocycle2 nu = cocycle_mul(cocycle_mul(a.nu_rep, b.nu_rep), twist_class(a.group, a.zeta, b.zeta));
  return make_triple(a.group, a.d * b.d, z, nu);
}

IndexTriple triple_inv(const IndexTriple& a) { return make_triple(a.group, inverse(a.d), a.zeta, cocycle_inv(a.nu_rep)); }

cplx extract_scalar(const Mat& z, const Mat& w, double tol) {
  cplx den = (w.adjoint() * w).trace();
  if (std::abs(den) == 0) throw Error(Errc::ScalarExtractionFailure, "zero reference");
  cplx s = (w.adjoint() * z).trace() / den;
  double scale = std::max({1.0, z.norm(), w.norm()});
  if ((z - s * w).norm() > tol * scale)
    throw Error(Errc::ScalarExtractionFailure,
                "not proportional, defect " + std::to_string((z - s * w).norm() / scale));
  return s;
}

void validate_gsystem(const GSystem& s) {
  if (int(s.action.size()) != s.group.order) throw Error(Errc::InvalidInput, "action size differs from group order");
  const Eigen::Index n = s.algebra.ambient.dim();
  for (int g = 0; g < s.group.order; ++g) {
    const Mat& u = s.action[std::size_t(g)];
    if (u.rows() != n || u.cols() != n) throw Error(Errc::DimensionMismatch, "action unitary");
    if ((u.adjoint() * u - Mat::Identity(n, n)).norm() > 1e-8 * std::sqrt(double(n)))
      throw Error(Errc::NotEquivariant, "action is not unitary");
    for (const auto& b : s.algebra.generators(8)) {
      Mat r = s.rho(g, b);
      if (!s.algebra.contains(r, 1e-8)) throw Error(Errc::NotEquivariant, "action leaves the algebra");
      if ((s.algebra.ambient.theta_conj(r) - s.rho(g, s.algebra.ambient.theta_conj(b))).norm() >
          1e-8 * std::max(1.0, b.norm()))
        throw Error(Errc::NotEquivariant, "action is not even");
    }
  }
}

namespace {

GradedSubalgebra even_part(const GradedSubalgebra& b) {
  GradedSubalgebra e;
  e.ambient = b.ambient;
  e.basis = b.even_basis();
  e.n_even = e.dim();
  e.contains_identity = b.contains_identity;
  return e;
}

int sign_bit(cplx s) { return s.real() < 0 ? 1 : 0; }

Cocycle2 cocycle_of(const FiniteGroup& g, const std::vector<Mat>& v) {
  Cocycle2 nu{Mat(g.order, g.order)};
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      nu.phases(a, b) = extract_scalar(v[std::size_t(a)] * v[std::size_t(b)], v[std::size_t(g.mul(a, b))]);
  return nu;
}

}  // namespace

GSystemIndexData gsystem_index_data(const GSystem& s) {
  validate_gsystem(s);
  GSystemIndexData out;
  out.shape = classify_central_simple(s.algebra);
  const FiniteGroup& g = s.group;
  Z2Hom zeta{std::vector<int>(std::size_t(g.order), 0)};
  IndexValue d;
  const GradedSubalgebra* target = &s.algebra;
  GradedSubalgebra even;
  Mat marker;
  if (out.shape.is_radical()) {
    d = IndexValue::make(out.shape.radical().n, 1, 1);
    marker = out.shape.radical().epsilon;
    even = even_part(s.algebra);
    target = &even;
  } else {
    std::int64_t k = out.shape.rational().p + out.shape.rational().q;
    d = IndexValue::make(k, 1, 0);
    marker = out.shape.rational().grading_operator;
  }
  for (int a = 0; a < g.order; ++a) {
    cplx sgn = extract_scalar(s.rho(a, marker), marker);
    if (std::abs(std::abs(sgn.real()) - 1.0) > 1e-9 || std::abs(sgn.imag()) > 1e-9)
      throw Error(Errc::ScalarExtractionFailure, "grading marker not mapped to plus or minus itself");
    zeta.values[std::size_t(a)] = sign_bit(sgn);
    out.v.push_back(inner_intertwiner(*target, [&](const Mat& x) { return s.rho(a, x); }));
  }
  if (!is_z2_hom(g, zeta)) throw Error(Errc::ScalarExtractionFailure, "zeta is not a homomorphism");
  Cocycle2 nu = cocycle_of(g, out.v);
  auto rep = is_cocycle(g, nu);
  if (rep.worst > 1e-7) throw Error(Errc::ScalarExtractionFailure, "extracted phases violate the cocycle identity");
  out.index = make_triple(g, d, zeta, nu);
  return out;
}

IndexTriple gsystem_index(const GSystem& s) { return gsystem_index_data(s).index; }

IndexTriple relative_index(const GSystem& a, const GSystem& b) {
  return triple_mul(gsystem_index(a), triple_inv(gsystem_index(b)));
}

GSystem stack_gsystems(const GSystem& a, const GSystem& b) {
  if (a.group.order != b.group.order) throw Error(Errc::DimensionMismatch, "stacking systems over different groups");
  GSystem out;
  out.group = a.group;
  out.algebra = graded_tensor(a.algebra, b.algebra);
  for (int g = 0; g < a.group.order; ++g) {
    const Mat& u1 = a.action[std::size_t(g)];
    const Mat& u2 = b.action[std::size_t(g)];
    int x1 = parity_of(u1, a.algebra.ambient, 1e-9), x2 = parity_of(u2, b.algebra.ambient, 1e-9);
    if (x1 < 0 || x2 < 0) throw Error(Errc::ParityMismatch, "action unitary is not homogeneous");
    out.action.push_back(graded_tensor_autom(u1, x1, u2, x2, a.algebra.ambient, b.algebra.ambient));
  }
  return out;
}

Vec first_cohomology_index(const GSystem& s, const Mat& u) {
  auto data = gsystem_index_data(s);
  if (data.shape.is_radical()) throw Error(Errc::Unsupported, "first cohomology index needs a rational system");
  const Mat& theta_b = data.shape.rational().grading_operator;
  const AmbientSpace& amb = s.algebra.ambient;
  auto alpha = [&](const Mat& x) { Mat r = u * x * u.adjoint(); return r; };
  for (const auto& b : s.algebra.generators(8)) {
    Mat r = alpha(b);
    if (!s.algebra.contains(r, 1e-8)) throw Error(Errc::NotEquivariant, "automorphism leaves the algebra");
    if ((amb.theta_conj(r) - alpha(amb.theta_conj(b))).norm() > 1e-8 * std::max(1.0, b.norm()))
      throw Error(Errc::NotEquivariant, "automorphism is not even");
    for (int g = 0; g < s.group.order; ++g)
      if ((s.rho(g, r) - alpha(s.rho(g, b))).norm() > 1e-8 * std::max(1.0, b.norm()))
        throw Error(Errc::NotEquivariant, "automorphism does not commute with the action");
  }
  const int n = s.group.order;
  auto ext = parity_extend(s.group);
  Vec mu(2 * n);
  std::vector<Mat> v(std::size_t(2 * n));
  for (int g = 0; g < n; ++g) {
    v[std::size_t(g)] = data.v[std::size_t(g)];
    v[std::size_t(n + g)] = theta_b * data.v[std::size_t(g)];
  }
  for (int a = 0; a < 2 * n; ++a) mu(a) = extract_scalar(alpha(v[std::size_t(a)]), v[std::size_t(a)]);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b)
      if (std::abs(mu(a) * mu(b) - mu(ext.group.mul(a, b))) > 1e-9)
        throw Error(Errc::ScalarExtractionFailure, "first cohomology index is not a character");
  return mu;
}

std::optional<Mat> deform_to_identity_witness(const GSystem& s, const Mat& u) {
  Vec mu = first_cohomology_index(s, u);
  if ((mu - Vec::Ones(mu.size())).cwiseAbs().maxCoeff() > 1e-9) return std::nullopt;
  Mat w = inner_intertwiner(s.algebra, [&](const Mat& x) { return Mat(u * x * u.adjoint()); });
  Mat h = log_unitary(w);
  const AmbientSpace& amb = s.algebra.ambient;
  double scale = std::max(1.0, h.norm());
  if ((amb.theta_conj(h) - h).norm() > 1e-9 * scale) throw Error(Errc::NotEquivariant, "logarithm is not even");
  for (int g = 0; g < s.group.order; ++g)
    if ((s.rho(g, h) - h).norm() > 1e-9 * scale) throw Error(Errc::NotEquivariant, "logarithm is not invariant");
  return h;
}

}  // namespace sqca
