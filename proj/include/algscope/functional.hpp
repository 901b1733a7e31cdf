#pragma once

// The Gram form F(e_i e_j) of a functional, its kernels, and the reduced
// pencil on the complement of Nil_F.

#include "algscope/algebra.hpp"
#include "algscope/linalg.hpp"

#include <cstddef>

namespace algscope {

/// Coordinates f_i = F(e_i).
struct Functional {
  Vector coords;
};

/// F(x) = Σ f_i x_i.
Complex apply(const Functional& f, const Element& x);

/// F(X) = tr(F_m X) on Mat_n in the matrix-unit basis.
Functional trace_functional(const Matrix& fm);

struct GramData {
  Matrix a;   ///< a(i, j) = F(e_i e_j)
  Matrix at;  ///< transpose of a
};

GramData gram(const Algebra& alg, const Functional& f);

struct Kernels {
  Subspace left;   ///< {x : F(x y) = 0 ∀y}
  Subspace right;  ///< {x : F(y x) = 0 ∀y}
  Subspace nil;    ///< left ∩ right
};

Kernels kernels(const Algebra& alg, const Functional& f, double tol = kDefaultTol);

/// Compressed Gram form on an orthonormal complement Q of Nil_F:
/// a_tilde = Qᵀ a Q (plain transpose; the form is bilinear).
struct ReducedPencil {
  Subspace nil;
  Matrix quotient_frame;
  Matrix a_tilde;
  Matrix at_tilde;

  std::size_t k() const { return static_cast<std::size_t>(a_tilde.rows()); }
  std::size_t ambient_dim() const { return nil.ambient_dim(); }
};

ReducedPencil reduce(const Algebra& alg, const Functional& f, double tol = kDefaultTol);
/// Same as reduce() but with an explicit quotient frame (orthonormal columns
/// spanning the orthogonal complement of Nil_F).
ReducedPencil reduce_with_frame(const Algebra& alg, const Functional& f, const Subspace& nil,
                                const Matrix& quotient_frame);

enum class MultiplicativeKind { Multiplicative, RankOneButNotUnit, NotRankOne };

struct MultiplicativeVerdict {
  MultiplicativeKind kind = MultiplicativeKind::NotRankOne;
  std::size_t rank = 0;
  Complex f_unit{};
  /// max |F(e_i e_j) − F(e_i)F(e_j)|, only computed when rank = 1 and F(1) = 1.
  double max_residual = 0.0;
  /// Rank-1 with F(1) = 1 but F failed the direct multiplicativity check.
  bool theorem_violation = false;
};

MultiplicativeVerdict is_multiplicative(const Algebra& alg, const Functional& f, double tol = kDefaultTol);

struct NilIdealVerdict {
  bool condition_holds = false;  ///< ker^L = ker^R = Nil_F
  bool ideal = false;
  double max_residual = 0.0;
};

NilIdealVerdict nil_ideal_check(const Algebra& alg, const Functional& f, double tol = kDefaultTol);

inline constexpr double kInclusionTol = 1e-8;

struct InclusionResult {
  double max_residual = 0.0;
  std::size_t worst_left = 0;
  std::size_t worst_right = 0;
  std::size_t products = 0;
};

/// Worst ‖(I − P_target)(s t)‖ / max(1, ‖s t‖) over frame columns s of
/// `left` and t of `right`.
InclusionResult product_inclusion(const Algebra& alg, const Matrix& left, const Matrix& right,
                                  const Subspace& target);

}  // namespace algscope
