#include "algscope/spectral.hpp"

#include "algscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace algscope {

namespace {

constexpr int kAlpha0Samples = 64;
// Shifts with σ_min/σ_max above this are accepted immediately.
constexpr double kGoodShiftRcond = 1e-6;
// Below this no sample is usable; matches the SingularShift guard with margin.
constexpr double kMinShiftRcond = 1e-11;
constexpr double kChiVanishTol = 1e-6;

// Row-action operator: L u ↔ F(x z).
Matrix row_operator(const ReducedPencil& rp) { return rp.at_tilde; }

Matrix point_operator(const ReducedPencil& rp, const ProjectivePoint& alpha) {
  const Matrix l = row_operator(rp);
  if (alpha.is_infinite()) return l.transpose();
  return l - alpha.value() * l.transpose();
}

// Scale of the pencil member at α; rank decisions are made against it.
double point_scale(double l_norm, const ProjectivePoint& alpha) {
  return alpha.is_infinite() ? l_norm : (1.0 + std::abs(alpha.value())) * l_norm;
}

double shift_rcond(const ReducedPencil& rp, Complex alpha0) {
  // a_tilde is Lᵀ for any pencil built by reduce(); using it directly keeps
  // hand-made pencils meaningful too
  const Matrix s = row_operator(rp) - alpha0 * rp.a_tilde;
  Eigen::BDCSVD<Matrix> svd(s);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

Subspace lift(const ReducedPencil& rp, const Subspace& quotient_part) {
  const auto n = static_cast<Eigen::Index>(rp.ambient_dim());
  const Eigen::Index q = static_cast<Eigen::Index>(quotient_part.dim());
  const Eigen::Index m = static_cast<Eigen::Index>(rp.nil.dim());
  Matrix frame(n, q + m);
  if (q > 0) frame.leftCols(q) = rp.quotient_frame * quotient_part.frame();
  if (m > 0) frame.rightCols(m) = rp.nil.frame();
  return Subspace(rp.ambient_dim(), std::move(frame), quotient_part.tol());
}

// Iterates V^{k+1} = {x : op·x ∈ span(rhs·V^k)} from V⁰ = ker(op).
std::vector<Subspace> grow_filtration(const ReducedPencil& rp, const Matrix& op, const Matrix& rhs, double scale,
                                      double tol) {
  Subspace current = nullspace_scaled(op, tol, scale);
  std::vector<Subspace> levels{lift(rp, current)};
  for (std::size_t step = 0; step < rp.k() && current.dim() > 0; ++step) {
    const Subspace image = Subspace::span(rhs * current.frame(), tol);
    const Matrix residual_op = op - image.frame() * (image.frame().adjoint() * op);
    Subspace next = nullspace_scaled(residual_op, tol, scale);
    if (next.dim() <= current.dim()) break;
    current = std::move(next);
    levels.push_back(lift(rp, current));
  }
  return levels;
}

}  // namespace

std::ptrdiff_t Decomposition::find(const ProjectivePoint& alpha) const {
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (points[p].alpha.near(alpha, options.cluster_tol)) return static_cast<std::ptrdiff_t>(p);
  }
  return -1;
}

HomogeneousPoly char_poly(const ReducedPencil& rp) { return det_poly(rp.a_tilde, rp.at_tilde); }

Complex choose_alpha0(const ReducedPencil& rp, std::uint64_t seed) {
  if (rp.k() == 0) throw Error(ErrorKind::BadParams, "choose_alpha0 needs a nonempty pencil");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.5, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Complex best{};
  double best_rcond = -1.0;
  for (int i = 0; i < kAlpha0Samples; ++i) {
    const double r = modulus(rng);
    const Complex candidate = std::polar(r, phase(rng));
    const double rc = shift_rcond(rp, candidate);
    if (rc >= kGoodShiftRcond) return candidate;
    if (rc > best_rcond) {
      best_rcond = rc;
      best = candidate;
    }
  }
  if (best_rcond >= kMinShiftRcond) return best;
  throw Error(ErrorKind::NoRegularValue,
              "no regular shift found in 64 samples; the reduced pencil looks identically singular");
}

std::vector<SpectrumPoint> spectrum(const ReducedPencil& rp, Complex alpha0, double cluster_tol) {
  const Matrix l = row_operator(rp);
  std::vector<SpectrumPoint> out;
  for (const auto& p : pencil_eigen(l, l.transpose(), alpha0, cluster_tol, kDefaultTol)) {
    SpectrumPoint sp;
    sp.alpha = p.alpha;
    sp.algebraic_mult = p.multiplicity;
    out.push_back(std::move(sp));
  }
  return out;
}

Subspace stab(const ReducedPencil& rp, const ProjectivePoint& alpha, double tol) {
  if (rp.k() == 0) return lift(rp, Subspace::zero(0, tol));
  return lift(rp, nullspace_scaled(point_operator(rp, alpha), tol, point_scale(rp.a_tilde.norm(), alpha)));
}

Subspace stab(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha, double tol) {
  return stab(reduce(alg, f, tol), alpha, tol);
}

Subspace stab_functional(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha, double tol) {
  const GramData g = gram(alg, f);
  // (aᵀx)_j = F(x e_j), (a x)_j = F(e_j x)
  const double scale = point_scale(g.a.norm(), alpha);
  if (alpha.is_infinite()) return nullspace_scaled(g.a, tol, scale);
  return nullspace_scaled(g.at - alpha.value() * g.a, tol, scale);
}

std::vector<Subspace> jordan_filtration(const ReducedPencil& rp, const ProjectivePoint& alpha, Complex alpha0,
                                        double tol) {
  if (rp.k() == 0) return {lift(rp, Subspace::zero(0, tol))};
  if (!alpha.is_infinite() && alpha.value() == alpha0) {
    throw Error(ErrorKind::SingularShift, "alpha0 must differ from the analysed point");
  }
  const Matrix l = row_operator(rp);
  // Guards the shift; the operator itself is not needed here.
  (void)shifted_operator(l, l.transpose(), alpha0);
  return grow_filtration(rp, point_operator(rp, alpha), l - alpha0 * l.transpose(),
                         point_scale(l.norm(), alpha), tol);
}

std::vector<Subspace> jordan_filtration(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha,
                                        Complex alpha0, double tol) {
  return jordan_filtration(reduce(alg, f, tol), alpha, alpha0, tol);
}

std::vector<Subspace> jordan_filtration_unshifted(const ReducedPencil& rp, Complex alpha, double tol) {
  if (rp.k() == 0) return {lift(rp, Subspace::zero(0, tol))};
  const Matrix l = row_operator(rp);
  return grow_filtration(rp, l - alpha * l.transpose(), l.transpose(), point_scale(l.norm(), ProjectivePoint::finite(alpha)),
                         tol);
}

Decomposition decompose(const Algebra& alg, const Functional& f, std::uint64_t seed, const SpectralOptions& options) {
  const ReducedPencil rp = reduce(alg, f, options.tol);
  Decomposition d;
  d.nil = rp.nil;
  d.k = rp.k();
  d.options = options;
  const std::size_t nil_dim = rp.nil.dim();
  if (d.k == 0) {
    d.chi = HomogeneousPoly{{Complex(1.0)}};
    return d;
  }

  d.alpha0_used = choose_alpha0(rp, seed);
  d.chi = char_poly(rp);
  d.points = spectrum(rp, d.alpha0_used, options.cluster_tol);
  for (auto& point : d.points) {
    auto levels = jordan_filtration(rp, point.alpha, d.alpha0_used, options.tol);
    for (const auto& v : levels) point.filtration_dims.push_back(v.dim());
    point.stab_dim = point.filtration_dims.front() - nil_dim;
    d.filtrations.push_back(std::move(levels));
  }

  auto report = [&](const std::string& s) { d.invariant_violations.push_back(s); };
  std::size_t total = 0;
  const double chi_norm = d.chi.norm();
  Subspace sum = d.nil;
  for (std::size_t p = 0; p < d.points.size(); ++p) {
    const auto& point = d.points[p];
    total += point.algebraic_mult;
    const std::size_t vdim = d.v_space(p).dim();
    if (vdim - nil_dim != point.algebraic_mult) {
      std::ostringstream os;
      os << "point " << p << ": dim V(alpha)/Nil = " << vdim - nil_dim << " but algebraic multiplicity is "
         << point.algebraic_mult;
      report(os.str());
    }
    Complex value;
    if (point.alpha.is_infinite()) {
      value = d.chi.evaluate(0.0, 1.0);
    } else {
      const double s = std::max(1.0, std::abs(point.alpha.value()));
      value = d.chi.evaluate(1.0 / s, -point.alpha.value() / s);
    }
    if (std::abs(value) > kChiVanishTol * chi_norm) {
      std::ostringstream os;
      os << "point " << p << ": characteristic polynomial does not vanish (|chi| = " << std::abs(value) << ")";
      report(os.str());
    }
    sum = subspace_sum(sum, d.v_space(p));
  }
  if (total != d.k) {
    report("algebraic multiplicities sum to " + std::to_string(total) + ", expected K = " + std::to_string(d.k));
  }
  if (sum.dim() != alg.dim()) {
    report("sum of V(alpha) has dimension " + std::to_string(sum.dim()) + ", expected " + std::to_string(alg.dim()));
  }
  return d;
}

IndependenceResult verify_alpha0_independence(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha,
                                              Complex alpha0_a, Complex alpha0_b, double tol) {
  const ReducedPencil rp = reduce(alg, f, kDefaultTol);
  const auto fa = jordan_filtration(rp, alpha, alpha0_a, kDefaultTol);
  const auto fb = jordan_filtration(rp, alpha, alpha0_b, kDefaultTol);
  IndependenceResult r;
  if (fa.size() != fb.size()) {
    r.max_distance = 1.0;
    return r;
  }
  r.equal = true;
  for (std::size_t k = 0; k < fa.size(); ++k) {
    const double dist = fa[k].dim() == fb[k].dim() ? projector_distance(fa[k], fb[k]) : 1.0;
    r.max_distance = std::max(r.max_distance, dist);
    if (fa[k].dim() != fb[k].dim() || dist >= tol) r.equal = false;
  }
  return r;
}

}  // namespace algscope
