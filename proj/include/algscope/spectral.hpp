#pragma once

// Characteristic polynomial, spectrum, stabilizers and Jordan filtrations of
// the reduced pencil, lifted back into the algebra.
//
// Convention: Stab_F(α) = {x : F(xz) − αF(zx) = 0 ∀z}. With a(i, j) = F(e_i e_j)
// acting on column vectors this is ker(aᵀ − α a), so the quotient operator
// used below is L = ãᵀ and Stab = ker(L − αLᵀ), Stab(∞) = ker(Lᵀ).

#include "algscope/algebra.hpp"
#include "algscope/functional.hpp"
#include "algscope/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace algscope {

struct SpectralOptions {
  double tol = kDefaultTol;
  double cluster_tol = kDefaultClusterTol;
};

struct SpectrumPoint {
  ProjectivePoint alpha = ProjectivePoint::infinity();
  std::size_t algebraic_mult = 0;
  /// dim Stab_F(α)/Nil_F.
  std::size_t stab_dim = 0;
  /// dim V^k(α) in the algebra (Nil_F included), k = 0..depth; strictly increasing.
  std::vector<std::size_t> filtration_dims;

  std::size_t depth() const { return filtration_dims.empty() ? 0 : filtration_dims.size() - 1; }
};

struct Decomposition {
  Subspace nil;
  std::size_t k = 0;
  HomogeneousPoly chi;
  std::vector<SpectrumPoint> points;
  /// filtrations[p][k] = V^k(points[p].alpha); the last level is V(α).
  std::vector<std::vector<Subspace>> filtrations;
  Complex alpha0_used{};
  SpectralOptions options;
  /// Human-readable descriptions of violated structural invariants.
  std::vector<std::string> invariant_violations;

  const Subspace& v_space(std::size_t p) const { return filtrations[p].back(); }
  /// Index of the spectrum point within cluster_tol of `alpha`, or -1.
  std::ptrdiff_t find(const ProjectivePoint& alpha) const;
};

HomogeneousPoly char_poly(const ReducedPencil& rp);

/// Deterministic search for a regular shift: random modulus in [0.5, 2] and
/// random phase. Throws NoRegularValue after 64 failed samples.
Complex choose_alpha0(const ReducedPencil& rp, std::uint64_t seed);

/// Algebraic data only (stab_dim and filtration_dims left empty).
std::vector<SpectrumPoint> spectrum(const ReducedPencil& rp, Complex alpha0,
                                    double cluster_tol = kDefaultClusterTol);

/// Stab_F(α) as a subspace of the algebra, via the quotient pencil.
Subspace stab(const ReducedPencil& rp, const ProjectivePoint& alpha, double tol = kDefaultTol);
Subspace stab(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha, double tol = kDefaultTol);
/// {x : F(xz) − αF(zx) = 0 ∀ basis z} computed directly on the algebra.
Subspace stab_functional(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha,
                         double tol = kDefaultTol);

/// V⁰(α) ⊆ V¹(α) ⊆ … via (Ã−αÃᵀ)x = (Ã−α₀Ãᵀ)y, y ∈ previous level; stops
/// when the dimension stabilizes.
std::vector<Subspace> jordan_filtration(const ReducedPencil& rp, const ProjectivePoint& alpha, Complex alpha0,
                                        double tol = kDefaultTol);
std::vector<Subspace> jordan_filtration(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha,
                                        Complex alpha0, double tol = kDefaultTol);
/// Shift-free form (Ã−αÃᵀ)x = Ãᵀy, finite α only.
std::vector<Subspace> jordan_filtration_unshifted(const ReducedPencil& rp, Complex alpha, double tol = kDefaultTol);

Decomposition decompose(const Algebra& alg, const Functional& f, std::uint64_t seed = 0,
                        const SpectralOptions& options = {});

struct IndependenceResult {
  bool equal = false;
  double max_distance = 0.0;
};

IndependenceResult verify_alpha0_independence(const Algebra& alg, const Functional& f, const ProjectivePoint& alpha,
                                              Complex alpha0_a, Complex alpha0_b, double tol = 1e-8);

}  // namespace algscope
