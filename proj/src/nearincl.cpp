#include "sqca/nearincl.hpp"

#include <algorithm>
#include <cmath>

namespace sqca {

namespace {

constexpr double kSpanTol = 1e-8;

Mat random_member(const GradedSubalgebra& s, Rng& rng, int parity = -1) {
  std::normal_distribution<double> nd;
  const Eigen::Index n = s.ambient.dim();
  Eigen::Index from = parity == 1 ? s.n_even : 0;
  Eigen::Index to = parity == 0 ? s.n_even : s.dim();
  Mat x = Mat::Zero(n, n);
  for (Eigen::Index i = from; i < to; ++i) x += cplx(nd(rng), nd(rng)) * s.basis[std::size_t(i)];
  return x;
}

std::vector<Mat> samples_of(const GradedSubalgebra& s, Rng& rng, int extra) {
  std::vector<Mat> out;
  for (std::size_t i = 0; i < std::min<std::size_t>(s.basis.size(), 16); ++i) out.push_back(s.basis[i]);
  for (int k = 0; k < extra; ++k) out.push_back(random_member(s, rng, k % 3 == 2 ? -1 : k % 3));
  out.erase(std::remove_if(out.begin(), out.end(), [](const Mat& x) { return x.norm() < 1e-12; }), out.end());
  return out;
}

// operator-norm distance to s through the HS projection; an upper bound on the true distance
double op_distance(const GradedSubalgebra& s, const Mat& x) { return op_norm(x - s.project(x)); }

BoundCheck make_check(std::string tag, double constant, double eps, double observed, bool applicable) {
  BoundCheck c;
  c.tag = std::move(tag);
  c.constant = constant;
  c.bound = constant * eps;
  c.observed = observed;
  c.applicable = applicable;
  c.pass = !applicable || observed <= c.bound + 1e-10;
  return c;
}

}  // namespace

GradedSubalgebra tilde_algebra(const GradedSubalgebra& a) {
  const AmbientSpace& amb = a.ambient;
  CentralSimpleShape shape;
  try {
    shape = classify_central_simple(a);
  } catch (const Error& e) {
    throw Error(Errc::NotInnerSuper, e.what());
  }
  GradedSubalgebra sharp = supercommutant(a);
  GradedSubalgebra out;
  if (shape.is_radical()) {
    out = commutant(sharp);
  } else {
    const Eigen::Index n = amb.dim();
    Mat t = shape.rational().grading_operator * amb.theta();
    Mat fe(n * n, a.n_even), fo(n * n, a.dim() - a.n_even);
    const double s = std::sqrt(double(n));
    for (Eigen::Index j = 0; j < a.n_even; ++j) fe.col(j) = vec_view(a.basis[std::size_t(j)]) / s;
    for (Eigen::Index j = a.n_even; j < a.dim(); ++j) {
      Mat b = a.basis[std::size_t(j)] * t;
      fo.col(j - a.n_even) = vec_view(b) / s;
    }
    out = subalgebra_from_frames(amb, fe, fo);
    if (span_distance(commutant(sharp), out) > kSpanTol)
      throw Error(Errc::NotInnerSuper, "(A#)' differs from {a+ + a- Theta_A Theta}");
  }
  if (span_distance(commutant(out), sharp) > kSpanTol) throw Error(Errc::NotInnerSuper, "commutant of A~ is not A#");
  return out;
}

SharpExpectation::SharpExpectation(const GradedSubalgebra& a) : tilde_(tilde_algebra(a)), range_(commutant(tilde_)) {}

Mat cond_expect_supercommutant(const Mat& x, const GradedSubalgebra& a) { return SharpExpectation(a)(x); }

bool NearInclusionReport::ok() const {
  return std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.pass; });
}

NearInclusionReport near_inclusion_report(const GradedSubalgebra& a, const GradedSubalgebra& b, Rng& rng,
                                          int samples) {
  if (a.ambient.dim() != b.ambient.dim()) throw Error(Errc::DimensionMismatch, "near_inclusion_report");
  const AmbientSpace& amb = a.ambient;
  std::optional<SharpExpectation> ex;
  try {
    ex.emplace(b);
  } catch (const Error&) {
  }
  GradedSubalgebra target = ex ? ex->range() : supercommutant(b);

  NearInclusionReport r;
  for (const auto& x : a.basis) r.epsilon_hs = std::max(r.epsilon_hs, target.distance(x));

  auto as = samples_of(a, rng, samples);
  auto bs = samples_of(b, rng, samples);
  double comm = 0.0;
  for (const auto& x : as) {
    const double nx = op_norm(x);
    r.epsilon_op = std::max(r.epsilon_op, op_distance(target, x) / nx);
    for (const auto& y : bs) comm = std::max(comm, op_norm(supercommutator(x, y, amb)) / (nx * op_norm(y)));
  }
  r.bound_checks.push_back(make_check("supercommutator", 4.0, r.epsilon_op, comm, 4.0 * r.epsilon_op < 1.0));

  double moved = 0.0;
  if (ex)
    for (const auto& x : as) moved = std::max(moved, op_norm((*ex)(x) - x) / op_norm(x));
  r.bound_checks.push_back(make_check("expectation", 3.0, comm, moved, ex.has_value() && 3.0 * comm < 1.0));
  return r;
}

Implementer inner_implementer(const std::vector<ImplementerPair>& pairs, const std::vector<Mat>& symmetry) {
  if (pairs.empty()) throw Error(Errc::InvalidInput, "inner_implementer needs at least one pair");
  const AmbientSpace& amb = pairs.front().domain.ambient;
  const Eigen::Index n = amb.dim(), nn = n * n;
  const Mat id = Mat::Identity(n, n);
  Mat gram = Mat::Zero(nn, nn);
  auto add = [&](const Mat& m) { gram.noalias() += m.adjoint() * m; };

  Implementer out;
  std::vector<std::pair<Mat, Mat>> checks;
  for (const auto& p : pairs) {
    if (p.domain.ambient.dim() != n) throw Error(Errc::DimensionMismatch, "inner_implementer");
    double gamma = 0.0;
    std::vector<Mat> gens = p.domain.basis.size() <= 36 ? p.domain.basis : p.domain.generators();
    for (const auto& a : gens) {
      Mat fa = p.phi(a);
      gamma = std::max(gamma, op_norm(fa - a) / op_norm(a));
      add(kron(id, a) - kron(Mat(fa.transpose()), id));
      checks.emplace_back(a, fa);
    }
    if (p.gamma >= 0.0) {
      if (gamma > p.gamma * (1.0 + 1e-9) + 1e-12)
        throw Error(Errc::InvalidInput, "phi moves a basis element by " + std::to_string(gamma) + " > gamma");
      gamma = p.gamma;
    }
    out.epsilon += gamma;
  }
  Mat th = amb.theta();
  add(kron(th.conjugate(), th) - Mat::Identity(nn, nn));
  for (const auto& v : symmetry) add(kron(Mat(v.conjugate()), v) - Mat::Identity(nn, nn));

  Mat ker = kernel_psd(gram);
  out.kernel_dim = ker.cols();
  if (ker.cols() == 0) throw Error(Errc::EmptyIntertwinerSpace, "no even invariant intertwiner");
  Mat eye = id;
  Vec c = ker.adjoint() * vec_view(eye);
  Vec yv = c.norm() > 1e-9 ? Vec(ker * c) : Vec(ker.col(0));
  Mat y = unvec(yv, n);
  Eigen::JacobiSVD<Mat> svd(y);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-8 * sv(0)) throw Error(Errc::SingularY, "intertwiner is not invertible");
  out.u = polar_unitary(y);
  for (const auto& [a, fa] : checks)
    out.defect = std::max(out.defect, op_norm(out.u.adjoint() * a * out.u - fa) / std::max(1.0, op_norm(a)));
  if (out.defect > 1e-9) throw Error(Errc::NoIntertwiner, "u* a u differs from phi(a) by " + std::to_string(out.defect));
  out.distance = op_norm(out.u - id);
  if (out.bound_applicable())
    out.bound = std::sqrt(2.0) * out.epsilon / std::sqrt(1.0 + std::sqrt(1.0 - out.epsilon * out.epsilon));
  return out;
}

PerturbedPair perturbed_pair(const GradedSubalgebra& b, const Mat& h, double delta) {
  PerturbedPair p;
  p.b = b;
  p.w = expi_hermitian(delta * h);
  GradedSubalgebra a = b;
  for (auto& x : a.basis) x = p.w * x * p.w.adjoint();
  p.a = a;
  p.epsilon = 2.0 * op_norm(Mat(p.w - Mat::Identity(p.w.rows(), p.w.cols())));
  Mat w = p.w;
  p.phi = [w](const Mat& x) -> Mat { return w.adjoint() * x * w; };
  return p;
}

bool NearInclusionTheoremReport::ok() const {
  return std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.pass; });
}

NearInclusionTheoremReport verify_near_inclusion_theorem(const GradedSubalgebra& a, const GradedSubalgebra& b,
                                                         const LinearMap& phi, const std::vector<Mat>& symmetry,
                                                         int trials, Rng& rng, double epsilon, double gamma) {
  NearInclusionTheoremReport r;
  auto as = samples_of(a, rng, trials);
  for (const auto& x : as) r.epsilon = std::max(r.epsilon, op_distance(b, x) / op_norm(x));
  if (epsilon >= 0.0) {
    if (r.epsilon > epsilon * (1.0 + 1e-9) + 1e-12)
      throw Error(Errc::InvalidInput, "sampled near inclusion " + std::to_string(r.epsilon) + " exceeds epsilon");
    r.epsilon = epsilon;
  }
  r.precondition = r.epsilon < 1.0 / 8.0;
  if (!r.precondition) return r;

  Implementer imp = inner_implementer({{a, phi, gamma}}, symmetry);
  r.u = imp.u.adjoint();
  const Eigen::Index n = a.ambient.dim();
  r.distance = op_norm(r.u - Mat::Identity(n, n));
  for (const auto& x : a.basis) r.containment_defect = std::max(r.containment_defect, b.distance(r.u * x * r.u.adjoint()));
  BoundCheck contain = make_check("containment", 1.0, config().tol_alg, r.containment_defect, true);
  r.bound_checks.push_back(contain);
  r.bound_checks.push_back(make_check("unitary", 12.0, r.epsilon, r.distance, true));
  r.bound_checks.push_back(make_check("implementer", 1.0, imp.bound + 1e-6, imp.distance, imp.bound_applicable()));

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat x = random_member(a, rng);
    Mat z = 0.5 * (x + phi(x));
    const double nz = op_norm(z);
    const double delta = std::max(op_distance(a, z), op_distance(b, z)) / nz;
    if (delta < 1e-14) continue;
    worst = std::max(worst, op_norm(r.u * z * r.u.adjoint() - z) / (delta * nz));
  }
  r.bound_checks.push_back(make_check("stability", 46.0, 1.0, worst, true));
  return r;
}

NearInclusionTheoremReport verify_near_inclusion_theorem(const PerturbedPair& p, const std::vector<Mat>& symmetry,
                                                         int trials, Rng& rng) {
  return verify_near_inclusion_theorem(p.a, p.b, p.phi, symmetry, trials, rng, p.epsilon, p.epsilon);
}

}  // namespace sqca
