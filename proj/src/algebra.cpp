#include "algscope/algebra.hpp"

#include "algscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace algscope {

Algebra::Algebra(std::size_t dim, std::vector<Complex> structure, Vector unit,
                 std::vector<std::string> basis_labels)
    : dim_(dim), structure_(std::move(structure)), unit_(std::move(unit)), labels_(std::move(basis_labels)) {
  if (structure_.size() != dim_ * dim_ * dim_) {
    throw Error(ErrorKind::ShapeError, "structure tensor has " + std::to_string(structure_.size()) +
                                           " entries, expected dim^3 = " + std::to_string(dim_ * dim_ * dim_));
  }
  if (static_cast<std::size_t>(unit_.size()) != dim_) {
    throw Error(ErrorKind::ShapeError, "unit has length " + std::to_string(unit_.size()) + ", expected " +
                                           std::to_string(dim_));
  }
  if (!labels_.empty() && labels_.size() != dim_) {
    throw Error(ErrorKind::ShapeError, "basis label count does not match dim");
  }
  for (const auto& v : structure_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::NonFinite, "structure constant is NaN/Inf");
    }
  }
  require_finite(unit_, "unit");
}

Element Algebra::basis(std::size_t i) const {
  Element e = Element::Zero(static_cast<Eigen::Index>(dim_));
  e(static_cast<Eigen::Index>(i)) = 1.0;
  return e;
}

Element multiply(const Algebra& alg, const Element& x, const Element& y) {
  const std::size_t n = alg.dim();
  if (static_cast<std::size_t>(x.size()) != n || static_cast<std::size_t>(y.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "element length does not match algebra dim " + std::to_string(n));
  }
  Element out = Element::Zero(static_cast<Eigen::Index>(n));
  const auto& c = alg.structure();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex xi = x(static_cast<Eigen::Index>(i));
    if (xi == Complex(0.0)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex xy = xi * y(static_cast<Eigen::Index>(j));
      if (xy == Complex(0.0)) continue;
      const Complex* row = &c[(i * n + j) * n];
      for (std::size_t k = 0; k < n; ++k) out(static_cast<Eigen::Index>(k)) += xy * row[k];
    }
  }
  return out;
}

ValidationReport validate(const Algebra& alg, double axiom_tol) {
  const std::size_t n = alg.dim();
  ValidationReport report;
  std::vector<Element> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) basis.push_back(alg.basis(i));

  // products[i*n+j] = e_i e_j
  std::vector<Element> products(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Element p(static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k < n; ++k) p(static_cast<Eigen::Index>(k)) = alg.c(i, j, k);
      products[i * n + j] = std::move(p);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Element lhs = multiply(alg, products[i * n + j], basis[k]);
        const Element rhs = multiply(alg, basis[i], products[j * n + k]);
        const double r = (lhs - rhs).cwiseAbs().maxCoeff();
        if (r > report.associativity_residual) {
          report.associativity_residual = r;
          report.witness = {i, j, k};
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double l = (multiply(alg, alg.unit(), basis[i]) - basis[i]).cwiseAbs().maxCoeff();
    const double r = (multiply(alg, basis[i], alg.unit()) - basis[i]).cwiseAbs().maxCoeff();
    report.unit_residual = std::max({report.unit_residual, l, r});
  }
  report.passed = report.associativity_residual < axiom_tol && report.unit_residual < axiom_tol;
  return report;
}

Algebra mat_algebra(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "matrix algebra needs n >= 1");
  const std::size_t dim = n * n;
  std::vector<Complex> c(dim * dim * dim, 0.0);
  // e_{ij} e_{jm} = e_{im}
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        c[((i * n + j) * dim + (j * n + m)) * dim + (i * n + m)] = 1.0;
      }
    }
  }
  Vector unit = Vector::Zero(static_cast<Eigen::Index>(dim));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    unit(static_cast<Eigen::Index>(i * n + i)) = 1.0;
    for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  return Algebra(dim, std::move(c), std::move(unit), std::move(labels));
}

Algebra dual_numbers() {
  std::vector<Complex> c(8, 0.0);
  auto at = [](std::size_t i, std::size_t j, std::size_t k) { return (i * 2 + j) * 2 + k; };
  c[at(0, 0, 0)] = 1.0;
  c[at(0, 1, 1)] = 1.0;
  c[at(1, 0, 1)] = 1.0;
  Vector unit(2);
  unit << 1.0, 0.0;
  return Algebra(2, std::move(c), std::move(unit), {"1", "eps"});
}

Algebra upper_triangular(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "triangular algebra needs n >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) idx.emplace_back(i, j);
  }
  const std::size_t dim = idx.size();
  auto index_of = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), std::make_pair(i, j)) - idx.begin());
  };
  std::vector<Complex> c(dim * dim * dim, 0.0);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (idx[a].second == idx[b].first) {
        c[(a * dim + b) * dim + index_of(idx[a].first, idx[b].second)] = 1.0;
      }
    }
  }
  Vector unit = Vector::Zero(static_cast<Eigen::Index>(dim));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < dim; ++a) {
    if (idx[a].first == idx[a].second) unit(static_cast<Eigen::Index>(a)) = 1.0;
    labels.push_back("e" + std::to_string(idx[a].first + 1) + std::to_string(idx[a].second + 1));
  }
  return Algebra(dim, std::move(c), std::move(unit), std::move(labels));
}

namespace {

void check_group_table(const std::vector<std::vector<std::size_t>>& t) {
  const std::size_t n = t.size();
  if (n == 0) throw Error(ErrorKind::InvalidGroupTable, "empty table");
  for (const auto& row : t) {
    if (row.size() != n) throw Error(ErrorKind::InvalidGroupTable, "table is not square");
    std::vector<bool> seen(n, false);
    for (auto v : row) {
      if (v >= n || seen[v]) throw Error(ErrorKind::InvalidGroupTable, "row is not a permutation");
      seen[v] = true;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[t[i][j]]) throw Error(ErrorKind::InvalidGroupTable, "column is not a permutation");
      seen[t[i][j]] = true;
    }
  }
  bool has_identity = false;
  for (std::size_t e = 0; e < n && !has_identity; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = t[e][g] == g && t[g][e] == g;
    has_identity = ok;
  }
  if (!has_identity) throw Error(ErrorKind::InvalidGroupTable, "no identity element");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (t[t[a][b]][c] != t[a][t[b][c]]) throw Error(ErrorKind::InvalidGroupTable, "table is not associative");
      }
    }
  }
}

}  // namespace

Algebra group_algebra(const std::vector<std::vector<std::size_t>>& table, std::vector<std::string> labels) {
  check_group_table(table);
  const std::size_t n = table.size();
  std::vector<Complex> c(n * n * n, 0.0);
  std::size_t identity = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + table[i][j]] = 1.0;
  }
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = table[e][g] == g;
    if (ok) {
      identity = e;
      break;
    }
  }
  Vector unit = Vector::Zero(static_cast<Eigen::Index>(n));
  unit(static_cast<Eigen::Index>(identity)) = 1.0;
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  }
  return Algebra(n, std::move(c), std::move(unit), std::move(labels));
}

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
  std::vector<Complex> c(n * n * n, 0.0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) c[(i * n + j) * n + k] = a.c(i, j, k);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) c[((na + i) * n + (na + j)) * n + na + k] = b.c(i, j, k);
  Vector unit(static_cast<Eigen::Index>(n));
  unit << a.unit(), b.unit();
  std::vector<std::string> labels;
  if (!a.basis_labels().empty() && !b.basis_labels().empty()) {
    for (const auto& l : a.basis_labels()) labels.push_back("a." + l);
    for (const auto& l : b.basis_labels()) labels.push_back("b." + l);
  }
  return Algebra(n, std::move(c), std::move(unit), std::move(labels));
}

Algebra opposite(const Algebra& alg) {
  const std::size_t n = alg.dim();
  std::vector<Complex> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = alg.c(j, i, k);
  return Algebra(n, std::move(c), alg.unit(), alg.basis_labels());
}

std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "cyclic group order must be >= 1");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

std::vector<std::vector<std::size_t>> product_group_table(const std::vector<std::vector<std::size_t>>& g,
                                                          const std::vector<std::vector<std::size_t>>& h) {
  const std::size_t ng = g.size(), nh = h.size();
  std::vector<std::vector<std::size_t>> t(ng * nh, std::vector<std::size_t>(ng * nh));
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = 0; b < nh; ++b)
      for (std::size_t c = 0; c < ng; ++c)
        for (std::size_t d = 0; d < nh; ++d) t[a * nh + b][c * nh + d] = g[a][c] * nh + h[b][d];
  return t;
}

}  // namespace algscope
