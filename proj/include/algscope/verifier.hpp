#pragma once

// Executable checks of the structural theorems, each producing a Finding
// with its worst residual and a witness.

#include "algscope/algebra.hpp"
#include "algscope/functional.hpp"
#include "algscope/spectral.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace algscope {

enum class TheoremId {
  KernelRelations,
  Alpha0Independence,
  VMultFinite,
  VMultNonzero,
  DimSymmetryV,
  DimSymmetryStab,
  RankOneMultiplicative,
  NilIdeal,
  RegularPerturbation,
  Corollary1,
  Corollary2,
  Corollary3,
  StabTransversality,
};

const char* to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& name);

/// True for results proved unconditionally for every (algebra, functional);
/// StabTransversality is observation-grade.
bool is_proved_theorem(TheoremId id);

struct Finding {
  TheoremId theorem = TheoremId::KernelRelations;
  bool passed = true;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::optional<std::string> witness;
  std::optional<Vector> witness_functional;
  std::vector<std::string> notes;
  /// Negative control: `passed` means the check tripped as intended.
  bool control = false;
};

inline constexpr double kTheoremTol = 1e-7;
inline constexpr double kRegularTol = 1e-6;

Finding verify_kernel_relations(const Algebra& alg, const Functional& f, double tol = kInclusionTol);

/// Compares every filtration level at every spectrum point under two shifts.
Finding verify_alpha0_suite(const Algebra& alg, const Functional& f, const Decomposition& d, std::uint64_t seed,
                            double tol = 1e-8);

/// {VMultFinite, VMultNonzero}. The second is checked as the finite-pair
/// statement in the opposite algebra, together with V_op(1/α) = V(α).
std::vector<Finding> verify_v_mult(const Algebra& alg, const Functional& f, const Decomposition& d,
                                   double tol = kTheoremTol);
std::vector<Finding> verify_v_mult(const Algebra& alg, const Functional& f, double tol = kTheoremTol);

/// {DimSymmetryV, DimSymmetryStab}; exact integer equality under α ↦ 1/α.
std::vector<Finding> verify_dim_symmetry(const Decomposition& d);
std::vector<Finding> verify_dim_symmetry(const Algebra& alg, const Functional& f);

Finding verify_rank_one(const Algebra& alg, const Functional& f, double tol = kDefaultTol);
Finding verify_nil_ideal(const Algebra& alg, const Functional& f, double tol = kDefaultTol);

Finding verify_stab_transversality(const Decomposition& d);
Finding verify_stab_transversality(const Algebra& alg, const Functional& f);

struct StabMinimum {
  Functional f;
  std::size_t dim = 0;
};

/// dim ker(λ₀A|_F + μ₀A|_Fᵀ) in the functional convention
/// {x : λ₀F(xz) + μ₀F(zx) = 0 ∀z}.
std::size_t pencil_kernel_dim(const Algebra& alg, const Functional& f, Complex lambda0, Complex mu0,
                              double tol = kDefaultTol);
Subspace pencil_kernel(const Algebra& alg, const Functional& f, Complex lambda0, Complex mu0,
                       double tol = kDefaultTol);

/// Samples f_start + Σ ε_i g_i with |ε_i| ≤ 0.1 and keeps the first sample of
/// smallest kernel dimension. An empty `s_basis` returns f_start.
StabMinimum minimize_stab_dim(const Algebra& alg, Complex lambda0, Complex mu0, const std::vector<Functional>& s_basis,
                              const Functional& f_start, std::size_t samples, std::uint64_t seed,
                              double tol = kDefaultTol);

/// |G(λ₀xy + μ₀yx)| < tol·(1 + ‖G‖‖x‖‖y‖) for G ∈ S, x ∈ ker(λ₀A + μ₀Aᵀ),
/// y ∈ ker(μ₀A + λ₀Aᵀ).
Finding verify_regular_perturbation(const Algebra& alg, const Functional& f_min, Complex lambda0, Complex mu0,
                                    const std::vector<Functional>& s_basis, double tol = kRegularTol);

/// α = 0: Stab(0)·Stab(∞) = 0 and Nil·Nil = 0. α = 1: Stab(1) commutative.
/// Otherwise xy − αyx = 0 on Stab(α) × Stab(1/α).
Finding verify_corollaries(const Algebra& alg, const Functional& f_min, Complex alpha, double tol = kRegularTol);

/// Corollary 2 at the trace functional on Mat_2, where Stab(1) is all of Mat_2.
/// Passes when the commutativity check fails.
Finding corollary2_negative_control(double tol = kRegularTol);

/// Basis of the full dual space.
std::vector<Functional> dual_basis(std::size_t dim);
/// Independent standard complex-Gaussian coordinates.
Functional random_functional(std::size_t dim, std::mt19937_64& rng);

enum class Suite {
  Kernel,
  Alpha0,
  VMult,
  DimSymmetry,
  RankOne,
  NilIdeal,
  Transversality,
  Regular,
  Corollary1,
  Corollary2,
  Corollary3,
};

const char* to_string(Suite s);
std::optional<Suite> suite_from_string(const std::string& name);
std::vector<Suite> all_suites();

struct SuiteOptions {
  std::size_t functionals = 50;
  std::uint64_t seed = 0;
  std::vector<Suite> suites = all_suites();
  SpectralOptions spectral;
  std::size_t minimize_samples = 32;
  bool negative_control = false;
};

struct SuiteReport {
  std::vector<Finding> findings;
  /// Decomposition invariant violations and upstream errors, tagged with the
  /// functional index.
  std::vector<std::string> invariant_violations;
};

/// Runs the selected suites over random functionals and merges the findings
/// per theorem (worst residual wins, ties to the earlier functional).
SuiteReport run_suites(const Algebra& alg, const SuiteOptions& options);

/// The per-functional checks reported alongside a decomposition.
std::vector<Finding> analyze_findings(const Algebra& alg, const Functional& f, const Decomposition& d,
                                      std::uint64_t seed);

/// Merge findings with equal theorem ids, preserving first-seen order.
std::vector<Finding> merge_findings(const std::vector<Finding>& findings);

}  // namespace algscope
