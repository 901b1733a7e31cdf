#include "algscope/functional.hpp"

#include "algscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace algscope {

namespace {

void require_match(const Algebra& alg, const Functional& f) {
  if (static_cast<std::size_t>(f.coords.size()) != alg.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "functional has " + std::to_string(f.coords.size()) +
                                                  " coordinates, algebra has dim " + std::to_string(alg.dim()));
  }
}

}  // namespace

Complex apply(const Functional& f, const Element& x) {
  if (f.coords.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "functional/element length");
  return (f.coords.array() * x.array()).sum();
}

Functional trace_functional(const Matrix& fm) {
  if (fm.rows() != fm.cols()) throw Error(ErrorKind::DimensionMismatch, "trace functional needs a square matrix");
  const Eigen::Index n = fm.rows();
  Functional f{Vector(n * n)};
  // tr(F e_ij) = F_ji
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) f.coords(i * n + j) = fm(j, i);
  return f;
}

GramData gram(const Algebra& alg, const Functional& f) {
  require_match(alg, f);
  const std::size_t n = alg.dim();
  const auto N = static_cast<Eigen::Index>(n);
  GramData g{Matrix::Zero(N, N), Matrix()};
  const auto& c = alg.structure();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      const Complex* row = &c[(i * n + j) * n];
      for (std::size_t k = 0; k < n; ++k) s += row[k] * f.coords(static_cast<Eigen::Index>(k));
      g.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  }
  g.at = g.a.transpose();
  return g;
}

Kernels kernels(const Algebra& alg, const Functional& f, double tol) {
  const GramData g = gram(alg, f);
  // xᵀa = 0  <=>  aᵀx = 0
  Subspace left = nullspace(g.at, tol);
  Subspace right = nullspace(g.a, tol);
  Subspace nil = subspace_intersect(left, right, tol);
  return {std::move(left), std::move(right), std::move(nil)};
}

ReducedPencil reduce_with_frame(const Algebra& alg, const Functional& f, const Subspace& nil,
                                const Matrix& quotient_frame) {
  const GramData g = gram(alg, f);
  if (static_cast<std::size_t>(quotient_frame.rows()) != alg.dim() ||
      static_cast<std::size_t>(quotient_frame.cols()) + nil.dim() != alg.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "quotient frame does not complement Nil_F");
  }
  ReducedPencil rp;
  rp.nil = nil;
  rp.quotient_frame = quotient_frame;
  rp.a_tilde = quotient_frame.transpose() * g.a * quotient_frame;
  rp.at_tilde = rp.a_tilde.transpose();
  return rp;
}

ReducedPencil reduce(const Algebra& alg, const Functional& f, double tol) {
  Kernels ks = kernels(alg, f, tol);
  const Subspace complement = orthogonal_complement(ks.nil);
  return reduce_with_frame(alg, f, ks.nil, complement.frame());
}

MultiplicativeVerdict is_multiplicative(const Algebra& alg, const Functional& f, double tol) {
  const GramData g = gram(alg, f);
  MultiplicativeVerdict v;
  v.rank = numeric_rank(g.a, tol);
  v.f_unit = apply(f, alg.unit());
  if (v.rank != 1) {
    v.kind = MultiplicativeKind::NotRankOne;
    return v;
  }
  if (std::abs(v.f_unit - 1.0) >= tol) {
    v.kind = MultiplicativeKind::RankOneButNotUnit;
    return v;
  }
  v.kind = MultiplicativeKind::Multiplicative;
  const Eigen::Index n = g.a.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      v.max_residual = std::max(v.max_residual, std::abs(g.a(i, j) - f.coords(i) * f.coords(j)));
  const double scale = std::max(1.0, g.a.cwiseAbs().maxCoeff());
  v.theorem_violation = v.max_residual >= 1e3 * tol * scale;
  return v;
}

InclusionResult product_inclusion(const Algebra& alg, const Matrix& left, const Matrix& right,
                                  const Subspace& target) {
  InclusionResult r;
  for (Eigen::Index i = 0; i < left.cols(); ++i) {
    for (Eigen::Index j = 0; j < right.cols(); ++j) {
      const Element p = multiply(alg, left.col(i), right.col(j));
      const double res = target.distance(p) / std::max(1.0, p.norm());
      ++r.products;
      if (res > r.max_residual) {
        r.max_residual = res;
        r.worst_left = static_cast<std::size_t>(i);
        r.worst_right = static_cast<std::size_t>(j);
      }
    }
  }
  return r;
}

NilIdealVerdict nil_ideal_check(const Algebra& alg, const Functional& f, double tol) {
  const Kernels ks = kernels(alg, f, tol);
  NilIdealVerdict v;
  v.condition_holds = subspace_equal(ks.left, ks.nil, 1e-6) && subspace_equal(ks.right, ks.nil, 1e-6);
  if (!v.condition_holds) return v;
  const Matrix all = Matrix::Identity(static_cast<Eigen::Index>(alg.dim()), static_cast<Eigen::Index>(alg.dim()));
  const auto l = product_inclusion(alg, all, ks.nil.frame(), ks.nil);
  const auto r = product_inclusion(alg, ks.nil.frame(), all, ks.nil);
  v.max_residual = std::max(l.max_residual, r.max_residual);
  v.ideal = v.max_residual < kInclusionTol;
  return v;
}

}  // namespace algscope
