#include "algscope/linalg.hpp"

#include "algscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace algscope {

namespace {

// Shifts with σ_min/σ_max below this are rejected as singular.
constexpr double kSingularShiftRcond = 1e-12;
// Scale of the eigenvalue scatter of an m-fold defective eigenvalue is
// ‖M‖·γ^{1/m}; γ covers roundoff times a modest eigenvector condition number.
constexpr double kDefectGamma = 1e-12;
constexpr double kInfinityRel = 1e-10;

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd(0);
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double threshold(const Eigen::VectorXd& sv, double tol) {
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  return tol * (smax > 0.0 ? smax : 1.0);
}

}  // namespace

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has NaN/Inf entries");
}

Subspace::Subspace(std::size_t ambient_dim, Matrix frame, double tol)
    : ambient_(ambient_dim), frame_(std::move(frame)), tol_(tol) {
  if (static_cast<std::size_t>(frame_.rows()) != ambient_ || frame_.cols() > frame_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "subspace frame shape does not fit ambient dimension");
  }
}

Subspace Subspace::zero(std::size_t n, double tol) { return Subspace(n, Matrix(n, 0), tol); }

Subspace Subspace::full(std::size_t n, double tol) {
  return Subspace(n, Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), tol);
}

Subspace Subspace::span(const Matrix& columns, double tol) {
  require_finite(columns, "span columns");
  const auto n = static_cast<std::size_t>(columns.rows());
  if (columns.cols() == 0 || n == 0) return zero(n, tol);
  Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return zero(n, tol);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) >= tol * sv(0)) ++rank;
  return Subspace(n, svd.matrixU().leftCols(rank), tol);
}

Matrix Subspace::projector() const { return frame_ * frame_.adjoint(); }

Vector Subspace::project_out(const Vector& v) const {
  if (dim() == 0) return v;
  return v - frame_ * (frame_.adjoint() * v);
}

double Subspace::distance(const Vector& v) const { return project_out(v).norm(); }

ProjectivePoint ProjectivePoint::inverse() const {
  if (infinite_) return finite(0.0);
  if (value_ == Complex(0.0)) return infinity();
  return finite(1.0 / value_);
}

bool ProjectivePoint::near(const ProjectivePoint& other, double tol) const {
  if (infinite_ || other.infinite_) return infinite_ && other.infinite_;
  const double scale = std::max({1.0, std::abs(value_), std::abs(other.value_)});
  return std::abs(value_ - other.value_) < tol * scale;
}

bool canonical_less(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
  if (a.is_infinite()) return false;
  const double ma = std::abs(a.value()), mb = std::abs(b.value());
  if (std::abs(ma - mb) > 1e-9 * std::max(1.0, std::max(ma, mb))) return ma < mb;
  return std::arg(a.value()) < std::arg(b.value());
}

Complex HomogeneousPoly::evaluate(Complex lambda, Complex mu) const {
  const std::size_t k = degree();
  Complex sum = 0.0;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    sum += coeffs[d] * std::pow(lambda, static_cast<int>(k - d)) * std::pow(mu, static_cast<int>(d));
  }
  return sum;
}

Complex HomogeneousPoly::evaluate_at(const ProjectivePoint& alpha) const {
  if (alpha.is_infinite()) return evaluate(0.0, 1.0);
  return evaluate(1.0, -alpha.value());
}

double HomogeneousPoly::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

namespace {

Subspace nullspace_impl(const Matrix& m, double tol, double reference_norm) {
  require_finite(m, "nullspace input");
  const auto n = static_cast<std::size_t>(m.cols());
  if (m.rows() == 0 || n == 0) return Subspace::full(n, tol);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = reference_norm > 0.0 ? tol * reference_norm : threshold(sv, tol);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) >= thr) ++rank;
  return Subspace(n, svd.matrixV().rightCols(static_cast<Eigen::Index>(n) - rank), tol);
}

}  // namespace

Subspace nullspace(const Matrix& m, double tol) { return nullspace_impl(m, tol, 0.0); }

Subspace nullspace_scaled(const Matrix& m, double tol, double reference_norm) {
  return nullspace_impl(m, tol, reference_norm);
}

std::size_t numeric_rank(const Matrix& m, double tol) {
  require_finite(m, "rank input");
  const auto sv = singular_values(m);
  const double thr = threshold(sv, tol);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= thr) ++rank;
  }
  return rank;
}

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in spaces of dimension " +
                                                  std::to_string(a.ambient_dim()) + " and " +
                                                  std::to_string(b.ambient_dim()));
  }
}

}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const double tol = std::max(a.tol(), b.tol());
  Matrix both(static_cast<Eigen::Index>(a.ambient_dim()), static_cast<Eigen::Index>(a.dim() + b.dim()));
  both << a.frame(), b.frame();
  return Subspace::span(both, tol);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, double tol) {
  require_same_ambient(a, b);
  const auto n = static_cast<Eigen::Index>(a.ambient_dim());
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim(), tol);
  const Matrix id = Matrix::Identity(n, n);
  Matrix stacked(2 * n, n);
  stacked << id - a.projector(), id - b.projector();
  return nullspace(stacked, tol);
}

double projector_distance(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (a.ambient_dim() == 0) return 0.0;
  const auto sv = singular_values(a.projector() - b.projector());
  return sv(0);
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  require_same_ambient(a, b);
  return a.dim() == b.dim() && projector_distance(a, b) < tol;
}

Subspace orthogonal_complement(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.ambient_dim(), s.tol());
  if (s.dim() == s.ambient_dim()) return Subspace::zero(s.ambient_dim(), s.tol());
  return nullspace(s.frame().adjoint(), s.tol());
}

Matrix shifted_operator(const Matrix& a, const Matrix& b, Complex alpha0) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "pencil matrices must be square and of equal size");
  }
  require_finite(a, "pencil a");
  require_finite(b, "pencil b");
  if (a.rows() == 0) return Matrix(0, 0);
  const Matrix shifted = a - alpha0 * b;
  const auto sv = singular_values(shifted);
  if (sv(0) == 0.0 || sv(sv.size() - 1) <= kSingularShiftRcond * sv(0)) {
    throw Error(ErrorKind::SingularShift, "a - alpha0*b is numerically singular");
  }
  return shifted.partialPivLu().solve(b);
}

std::vector<Subspace> generalized_eigenspace(const Matrix& m, Complex lambda, double tol) {
  const auto n = m.rows();
  const Matrix op = m - lambda * Matrix::Identity(n, n);
  const double ref = std::max(m.norm(), std::abs(lambda));
  std::vector<Subspace> levels{nullspace_scaled(op, tol, ref)};
  while (levels.back().dim() > 0 && levels.back().dim() < static_cast<std::size_t>(n)) {
    const Matrix& frame = levels.back().frame();
    Subspace next = nullspace_scaled(op - frame * (frame.adjoint() * op), tol, ref);
    if (next.dim() <= levels.back().dim()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

std::vector<PencilPoint> pencil_eigen(const Matrix& a, const Matrix& b, Complex alpha0, double cluster_tol,
                                      double tol) {
  const Matrix m = shifted_operator(a, b, alpha0);
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonFinite, "eigenvalue iteration did not converge");
  }
  const Vector eig = solver.eigenvalues();
  const double scale = m.norm();
  const double inf_thr = kInfinityRel * scale;

  struct Cluster {
    Complex sum;
    std::size_t size;
    bool complete = false;
    Complex mean() const { return sum / static_cast<double>(size); }
  };
  auto linked = [&](Complex x, Complex y) {
    if (std::abs(x) <= inf_thr || std::abs(y) <= inf_thr) return std::abs(x) <= inf_thr && std::abs(y) <= inf_thr;
    const Complex ax = alpha0 + 1.0 / x, ay = alpha0 + 1.0 / y;
    return std::abs(ax - ay) < cluster_tol * std::max({1.0, std::abs(ax), std::abs(ay)});
  };

  // Single-linkage on the mapped α values.
  const auto k = static_cast<std::size_t>(eig.size());
  std::vector<std::size_t> label(k);
  for (std::size_t i = 0; i < k; ++i) label[i] = i;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (label[i] != label[j] && linked(eig(static_cast<Eigen::Index>(i)), eig(static_cast<Eigen::Index>(j)))) {
          const std::size_t lo = std::min(label[i], label[j]), hi = std::max(label[i], label[j]);
          for (auto& l : label) {
            if (l == hi) l = lo;
          }
          changed = true;
        }
      }
    }
  }
  std::vector<Cluster> clusters;
  for (std::size_t root = 0; root < k; ++root) {
    Cluster c{0.0, 0};
    for (std::size_t i = 0; i < k; ++i) {
      if (label[i] == root) {
        c.sum += eig(static_cast<Eigen::Index>(i));
        ++c.size;
      }
    }
    if (c.size > 0) clusters.push_back(c);
  }

  auto check = [&](Cluster& c) { c.complete = generalized_eigenspace(m, c.mean(), tol).back().dim() == c.size; };
  for (auto& c : clusters) check(c);

  for (;;) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (clusters[i].complete) continue;
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        if (clusters[j].complete) continue;
        const double d = std::abs(clusters[i].mean() - clusters[j].mean());
        const auto merged = static_cast<double>(clusters[i].size + clusters[j].size);
        if (d <= 2.0 * scale * std::pow(kDefectGamma, 1.0 / merged) && d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (!std::isfinite(best)) break;
    clusters[bi].sum += clusters[bj].sum;
    clusters[bi].size += clusters[bj].size;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    check(clusters[bi]);
  }

  std::vector<PencilPoint> points;
  points.reserve(clusters.size());
  for (const auto& c : clusters) {
    const Complex lam = c.mean();
    if (std::abs(lam) <= inf_thr) {
      points.push_back({ProjectivePoint::infinity(), c.size});
      continue;
    }
    Complex value = alpha0 + 1.0 / lam;
    // roundoff leaves 0 as a tiny residue of alpha0 - alpha0; snap it so 1/0 = inf stays exact
    if (std::abs(value) <= 1e-10 * std::max(1.0, std::abs(alpha0))) value = 0.0;
    // same for roundoff-sized real or imaginary parts
    const double floor = 1e-13 * std::max(1.0, std::abs(value));
    if (std::abs(value.imag()) <= floor) value.imag(0.0);
    if (std::abs(value.real()) <= floor) value.real(0.0);
    points.push_back({ProjectivePoint::finite(value), c.size});
  }
  std::sort(points.begin(), points.end(),
            [](const PencilPoint& x, const PencilPoint& y) { return canonical_less(x.alpha, y.alpha); });
  return points;
}

namespace {

// log|det| via LU; -inf when singular.
double log_abs_det(const Matrix& m) {
  const Eigen::PartialPivLU<Matrix> lu(m);
  const Matrix& packed = lu.matrixLU();
  double s = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double v = std::abs(packed(i, i));
    if (v == 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log(v);
  }
  return s;
}

}  // namespace

HomogeneousPoly det_poly(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "det_poly needs square matrices of equal size");
  }
  require_finite(a, "det_poly a");
  require_finite(b, "det_poly b");
  const auto k = static_cast<std::size_t>(a.rows());
  if (k == 0) return HomogeneousPoly{{Complex(1.0)}};

  double radius = 1.0;
  const double la = log_abs_det(a), lb = log_abs_det(b);
  if (std::isfinite(la) && std::isfinite(lb)) radius = std::exp((la - lb) / static_cast<double>(k));

  const std::size_t n = k + 1;
  std::vector<Complex> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    values[j] = (a + (radius * w) * b).partialPivLu().determinant();
  }
  HomogeneousPoly poly;
  poly.coeffs.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * d) % n) / static_cast<double>(n);
      acc += values[j] * std::polar(1.0, angle);
    }
    poly.coeffs[d] = acc / static_cast<double>(n) / std::pow(radius, static_cast<double>(d));
  }
  return poly;
}

}  // namespace algscope
