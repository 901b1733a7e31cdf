#pragma once

// Tolerance-aware dense linear algebra over complex doubles.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace algscope {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultClusterTol = 1e-6;

/// Throws Error{NonFinite} if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what = "matrix");

/// Orthonormal column frame of a subspace of C^n, tagged with the rank
/// tolerance it was built with.
class Subspace {
 public:
  Subspace() = default;
  /// `frame` must already have orthonormal columns.
  Subspace(std::size_t ambient_dim, Matrix frame, double tol);

  static Subspace zero(std::size_t ambient_dim, double tol = kDefaultTol);
  static Subspace full(std::size_t ambient_dim, double tol = kDefaultTol);
  /// Orthonormalizes the column span of `columns`.
  static Subspace span(const Matrix& columns, double tol = kDefaultTol);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return static_cast<std::size_t>(frame_.cols()); }
  const Matrix& frame() const { return frame_; }
  double tol() const { return tol_; }

  Matrix projector() const;
  /// ‖(I − P)v‖.
  double distance(const Vector& v) const;
  Vector project_out(const Vector& v) const;

 private:
  std::size_t ambient_ = 0;
  Matrix frame_ = Matrix(0, 0);
  double tol_ = kDefaultTol;
};

/// A point of the projective line in the (1, −α) chart, or ∞.
class ProjectivePoint {
 public:
  static ProjectivePoint finite(Complex value) { return ProjectivePoint(value, false); }
  static ProjectivePoint infinity() { return ProjectivePoint({}, true); }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  Complex value() const { return value_; }

  ProjectivePoint inverse() const;
  /// Relative closeness max(1,|α|)·tol on finite points; ∞ matches only ∞.
  bool near(const ProjectivePoint& other, double tol) const;

 private:
  ProjectivePoint(Complex v, bool inf) : value_(v), infinite_(inf) {}
  Complex value_{};
  bool infinite_ = false;
};

/// Presentation order: finite points by (|α|, arg α), ∞ last.
bool canonical_less(const ProjectivePoint& a, const ProjectivePoint& b);

/// Binary form Σ_d c_d λ^{degree−d} μ^d.
struct HomogeneousPoly {
  std::vector<Complex> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Complex evaluate(Complex lambda, Complex mu) const;
  /// Value at (λ, μ) = (1, −α); at ∞ the (0, 1) value.
  Complex evaluate_at(const ProjectivePoint& alpha) const;
  double norm() const;
};

struct PencilPoint {
  ProjectivePoint alpha;
  std::size_t multiplicity = 0;
};

/// Right-singular directions with σ < tol·σ_max (tol·1 when m = 0).
Subspace nullspace(const Matrix& m, double tol = kDefaultTol);
/// As above but σ is compared against tol·reference_norm, for operators whose
/// own σ_max may be roundoff (e.g. a pencil evaluated at an exact root).
Subspace nullspace_scaled(const Matrix& m, double tol, double reference_norm);
/// Number of singular values ≥ tol·σ_max.
std::size_t numeric_rank(const Matrix& m, double tol = kDefaultTol);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b, double tol = kDefaultTol);
/// Spectral norm of P_a − P_b (1 when dimensions differ).
double projector_distance(const Subspace& a, const Subspace& b);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol);
/// Orthonormal complement of `s` in its ambient space.
Subspace orthogonal_complement(const Subspace& s);

/// Eigen-analysis of the pencil through M = (a − α₀b)⁻¹b. Eigenvalue Λ maps
/// to α = α₀ + 1/Λ (Λ = 0 is ∞). Multiplicities sum to the pencil size.
///
/// Eigenvalues are linked when their mapped α agree to cluster_tol relative
/// to max(1, |α|). A cluster is complete when the generalized eigenspace of
/// M at its mean eigenvalue has dimension equal to its size; incomplete
/// clusters (the ε^{1/m} scatter of a defective eigenvalue) are merged
/// closest-first while within 2‖M‖·10^{-12/m}.
std::vector<PencilPoint> pencil_eigen(const Matrix& a, const Matrix& b, Complex alpha0,
                                      double cluster_tol = kDefaultClusterTol, double tol = kDefaultTol);

/// ker(M − ΛI) ⊆ ker(M − ΛI)² ⊆ … until the dimension stops growing.
std::vector<Subspace> generalized_eigenspace(const Matrix& m, Complex lambda, double tol = kDefaultTol);

/// The shifted operator (a − α₀b)⁻¹b; throws SingularShift when a − α₀b is
/// numerically singular.
Matrix shifted_operator(const Matrix& a, const Matrix& b, Complex alpha0);

/// Coefficients of det(λa + μb), by evaluation on a circle and DFT
/// interpolation. K = 0 gives the constant 1.
HomogeneousPoly det_poly(const Matrix& a, const Matrix& b);

}  // namespace algscope
