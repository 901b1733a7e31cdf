#pragma once

// Finite-dimensional unital associative algebras given by structure constants.

#include "algscope/linalg.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace algscope {

using Element = Vector;

/// e_i·e_j = Σ_k c[i][j][k]·e_k, stored densely.
class Algebra {
 public:
  Algebra() = default;
  /// `structure` has dim³ entries in (i, j, k) row-major order.
  Algebra(std::size_t dim, std::vector<Complex> structure, Vector unit,
          std::vector<std::string> basis_labels = {});

  std::size_t dim() const { return dim_; }
  Complex c(std::size_t i, std::size_t j, std::size_t k) const { return structure_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<Complex>& structure() const { return structure_; }
  const Vector& unit() const { return unit_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  Element basis(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> structure_;
  Vector unit_ = Vector(0);
  std::vector<std::string> labels_;
};

inline constexpr double kDefaultAxiomTol = 1e-9;

struct ValidationReport {
  bool passed = false;
  double associativity_residual = 0.0;
  double unit_residual = 0.0;
  /// Basis triple (i, j, k) with the worst (e_i e_j)e_k − e_i(e_j e_k).
  std::array<std::size_t, 3> witness{};
};

ValidationReport validate(const Algebra& alg, double axiom_tol = kDefaultAxiomTol);

Element multiply(const Algebra& alg, const Element& x, const Element& y);

/// Mat_n(C) in the matrix-unit basis e_{ij}, row-major (index i·n + j).
Algebra mat_algebra(std::size_t n);
/// Basis {1, ε} with ε² = 0.
Algebra dual_numbers();
/// Upper-triangular n×n matrices, basis e_{ij} (i ≤ j) in row-major order.
Algebra upper_triangular(std::size_t n);
/// `table[g][h]` is the index of g·h.
Algebra group_algebra(const std::vector<std::vector<std::size_t>>& table,
                      std::vector<std::string> labels = {});
Algebra direct_sum(const Algebra& a, const Algebra& b);
/// Same space with a∗b := b·a.
Algebra opposite(const Algebra& alg);

std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n);
std::vector<std::vector<std::size_t>> product_group_table(const std::vector<std::vector<std::size_t>>& g,
                                                          const std::vector<std::vector<std::size_t>>& h);

}  // namespace algscope
