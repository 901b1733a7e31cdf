#include "algscope/verifier.hpp"

#include "algscope/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace algscope {

namespace {

struct TheoremName {
  TheoremId id;
  const char* name;
};

constexpr std::array<TheoremName, 13> kTheoremNames{{
    {TheoremId::KernelRelations, "KernelRelations"},
    {TheoremId::Alpha0Independence, "Alpha0Independence"},
    {TheoremId::VMultFinite, "VMultFinite"},
    {TheoremId::VMultNonzero, "VMultNonzero"},
    {TheoremId::DimSymmetryV, "DimSymmetryV"},
    {TheoremId::DimSymmetryStab, "DimSymmetryStab"},
    {TheoremId::RankOneMultiplicative, "RankOneMultiplicative"},
    {TheoremId::NilIdeal, "NilIdeal"},
    {TheoremId::RegularPerturbation, "RegularPerturbation"},
    {TheoremId::Corollary1, "Corollary1"},
    {TheoremId::Corollary2, "Corollary2"},
    {TheoremId::Corollary3, "Corollary3"},
    {TheoremId::StabTransversality, "StabTransversality"},
}};

struct SuiteName {
  Suite suite;
  const char* name;
};

constexpr std::array<SuiteName, 11> kSuiteNames{{
    {Suite::Kernel, "kernel"},
    {Suite::Alpha0, "alpha0"},
    {Suite::VMult, "vmult"},
    {Suite::DimSymmetry, "dimsym"},
    {Suite::RankOne, "rank1"},
    {Suite::NilIdeal, "nilideal"},
    {Suite::Transversality, "transversality"},
    {Suite::Regular, "regular"},
    {Suite::Corollary1, "corollary1"},
    {Suite::Corollary2, "corollary2"},
    {Suite::Corollary3, "corollary3"},
}};

std::string point_name(const ProjectivePoint& p) {
  if (p.is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(6);
  const Complex v = p.value();
  os << v.real();
  if (std::abs(v.imag()) > 1e-12) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

void record(Finding& f, double residual, std::size_t count, const std::string& witness) {
  f.samples += count;
  if (residual > f.max_residual || (!f.witness && count > 0)) {
    if (residual >= f.max_residual) {
      f.max_residual = residual;
      f.witness = witness;
    }
  }
}

Matrix identity_frame(const Algebra& alg) {
  const auto n = static_cast<Eigen::Index>(alg.dim());
  return Matrix::Identity(n, n);
}

// Theorem-3 style inclusions V^k(α)·V^m(β) ⊆ V^{k+m}(αβ) over finite pairs.
void check_finite_products(const Algebra& alg, const Decomposition& d, Finding& finding, const std::string& tag) {
  for (std::size_t p = 0; p < d.points.size(); ++p) {
    if (d.points[p].alpha.is_infinite()) continue;
    for (std::size_t q = 0; q < d.points.size(); ++q) {
      if (d.points[q].alpha.is_infinite()) continue;
      const Complex gamma = d.points[p].alpha.value() * d.points[q].alpha.value();
      const auto target_idx = d.find(ProjectivePoint::finite(gamma));
      for (std::size_t k = 0; k < d.filtrations[p].size(); ++k) {
        for (std::size_t m = 0; m < d.filtrations[q].size(); ++m) {
          const Subspace* target = &d.nil;
          if (target_idx >= 0) {
            const auto& levels = d.filtrations[static_cast<std::size_t>(target_idx)];
            target = &levels[std::min(k + m, levels.size() - 1)];
          }
          const auto r = product_inclusion(alg, d.filtrations[p][k].frame(), d.filtrations[q][m].frame(), *target);
          std::ostringstream w;
          w << tag << "V^" << k << "(" << point_name(d.points[p].alpha) << ") * V^" << m << "("
            << point_name(d.points[q].alpha) << ") -> " << (target_idx >= 0 ? "V(" + point_name(ProjectivePoint::finite(gamma)) + ")" : "Nil")
            << ", columns (" << r.worst_left << "," << r.worst_right << ")";
          record(finding, r.max_residual, r.products, w.str());
        }
      }
    }
  }
}

std::size_t count_mixed_zero_infinity(const Decomposition& d) {
  bool zero = false, inf = false;
  for (const auto& p : d.points) {
    if (p.alpha.is_infinite()) inf = true;
    else if (std::abs(p.alpha.value()) < d.options.cluster_tol) zero = true;
  }
  return zero && inf ? 2 : 0;
}

void finalize(Finding& f) { f.passed = f.max_residual < f.tolerance; }

Finding make_finding(TheoremId id, double tol) {
  Finding f;
  f.theorem = id;
  f.tolerance = tol;
  return f;
}

}  // namespace

const char* to_string(TheoremId id) {
  for (const auto& t : kTheoremNames) {
    if (t.id == id) return t.name;
  }
  return "Unknown";
}

std::optional<TheoremId> theorem_from_string(const std::string& name) {
  for (const auto& t : kTheoremNames) {
    if (name == t.name) return t.id;
  }
  return std::nullopt;
}

bool is_proved_theorem(TheoremId id) { return id != TheoremId::StabTransversality; }

const char* to_string(Suite s) {
  for (const auto& t : kSuiteNames) {
    if (t.suite == s) return t.name;
  }
  return "unknown";
}

std::optional<Suite> suite_from_string(const std::string& name) {
  for (const auto& t : kSuiteNames) {
    if (name == t.name) return t.suite;
  }
  return std::nullopt;
}

std::vector<Suite> all_suites() {
  std::vector<Suite> out;
  for (const auto& t : kSuiteNames) out.push_back(t.suite);
  return out;
}

Finding verify_kernel_relations(const Algebra& alg, const Functional& f, double tol) {
  const Kernels ks = kernels(alg, f);
  const Matrix all = identity_frame(alg);
  struct Relation {
    const Matrix* left;
    const Matrix* right;
    const Subspace* target;
  };
  const std::array<Relation, 7> relations{{
      {&ks.left.frame(), &all, &ks.left},
      {&all, &ks.right.frame(), &ks.right},
      {&ks.left.frame(), &ks.right.frame(), &ks.nil},
      {&ks.left.frame(), &ks.nil.frame(), &ks.nil},
      {&ks.nil.frame(), &ks.right.frame(), &ks.nil},
      {&ks.nil.frame(), &all, &ks.left},
      {&all, &ks.nil.frame(), &ks.right},
  }};
  Finding finding = make_finding(TheoremId::KernelRelations, tol);
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const auto res = product_inclusion(alg, *relations[r].left, *relations[r].right, *relations[r].target);
    std::ostringstream w;
    w << "relation " << r + 1 << ", columns (" << res.worst_left << "," << res.worst_right << ")";
    record(finding, res.max_residual, res.products, w.str());
  }
  finalize(finding);
  return finding;
}

Finding verify_alpha0_suite(const Algebra& alg, const Functional& f, const Decomposition& d, std::uint64_t seed,
                            double tol) {
  Finding finding = make_finding(TheoremId::Alpha0Independence, tol);
  if (d.k == 0) {
    finalize(finding);
    return finding;
  }
  const ReducedPencil rp = reduce(alg, f, d.options.tol);
  const Complex a = choose_alpha0(rp, 2 * seed + 1);
  Complex b = choose_alpha0(rp, 2 * seed + 2);
  if (a == b) b = choose_alpha0(rp, 2 * seed + 3);
  for (const auto& point : d.points) {
    const auto r = verify_alpha0_independence(alg, f, point.alpha, a, b, tol);
    std::ostringstream w;
    w << "alpha " << point_name(point.alpha) << ", shifts " << a << " vs " << b;
    record(finding, r.equal ? r.max_distance : std::max(r.max_distance, tol), 1, w.str());
  }
  finalize(finding);
  return finding;
}

std::vector<Finding> verify_v_mult(const Algebra& alg, const Functional& f, const Decomposition& d, double tol) {
  Finding finite = make_finding(TheoremId::VMultFinite, tol);
  check_finite_products(alg, d, finite, "");
  if (count_mixed_zero_infinity(d) > 0) finite.notes.push_back("skipped mixed (0, inf) pairs");
  finalize(finite);

  Finding nonzero = make_finding(TheoremId::VMultNonzero, tol);
  const Algebra op = opposite(alg);
  const Decomposition dop = decompose(op, f, 1, d.options);
  check_finite_products(op, dop, nonzero, "opposite: ");
  // V_op(1/α) must coincide with V(α) level by level.
  for (std::size_t p = 0; p < dop.points.size(); ++p) {
    const auto q = d.find(dop.points[p].alpha.inverse());
    std::ostringstream w;
    w << "V_op(" << point_name(dop.points[p].alpha) << ") vs V(1/alpha)";
    if (q < 0) {
      record(nonzero, 1.0, 1, w.str() + ": inverse point missing");
      continue;
    }
    const auto& lop = dop.filtrations[p];
    const auto& l = d.filtrations[static_cast<std::size_t>(q)];
    if (lop.size() != l.size()) {
      record(nonzero, 1.0, 1, w.str() + ": filtration depth differs");
      continue;
    }
    for (std::size_t k = 0; k < l.size(); ++k) {
      const double dist = lop[k].dim() == l[k].dim() ? projector_distance(lop[k], l[k]) : 1.0;
      record(nonzero, dist, 1, w.str() + " level " + std::to_string(k));
    }
  }
  if (count_mixed_zero_infinity(d) > 0) nonzero.notes.push_back("skipped mixed (0, inf) pairs");
  finalize(nonzero);
  return {finite, nonzero};
}

std::vector<Finding> verify_v_mult(const Algebra& alg, const Functional& f, double tol) {
  return verify_v_mult(alg, f, decompose(alg, f), tol);
}

std::vector<Finding> verify_dim_symmetry(const Decomposition& d) {
  Finding v = make_finding(TheoremId::DimSymmetryV, 0.5);
  Finding s = make_finding(TheoremId::DimSymmetryStab, 0.5);
  for (const auto& point : d.points) {
    const auto q = d.find(point.alpha.inverse());
    const std::string w = "alpha " + point_name(point.alpha);
    if (q < 0) {
      record(v, 1.0, 1, w + ": 1/alpha missing from spectrum");
      record(s, 1.0, 1, w + ": 1/alpha missing from spectrum");
      continue;
    }
    const auto& other = d.points[static_cast<std::size_t>(q)];
    const double dv = std::max(
        std::abs(static_cast<double>(point.algebraic_mult) - static_cast<double>(other.algebraic_mult)),
        std::abs(static_cast<double>(point.filtration_dims.back()) - static_cast<double>(other.filtration_dims.back())));
    const double ds = std::abs(static_cast<double>(point.stab_dim) - static_cast<double>(other.stab_dim));
    record(v, dv, 1, w + " vs " + point_name(other.alpha));
    record(s, ds, 1, w + " vs " + point_name(other.alpha));
  }
  finalize(v);
  finalize(s);
  return {v, s};
}

std::vector<Finding> verify_dim_symmetry(const Algebra& alg, const Functional& f) {
  return verify_dim_symmetry(decompose(alg, f));
}

Finding verify_rank_one(const Algebra& alg, const Functional& f, double tol) {
  const auto v = is_multiplicative(alg, f, tol);
  Finding finding = make_finding(TheoremId::RankOneMultiplicative, 1e3 * tol);
  if (v.kind == MultiplicativeKind::Multiplicative) {
    finding.samples = 1;
    finding.max_residual = v.max_residual;
    finding.passed = !v.theorem_violation;
    if (v.theorem_violation) finding.witness = "rank-1 functional with F(1) = 1 is not multiplicative";
  } else {
    finding.notes.push_back(v.kind == MultiplicativeKind::NotRankOne ? "hypothesis not met: rank " + std::to_string(v.rank)
                                                                     : "hypothesis not met: F(1) != 1");
  }
  return finding;
}

Finding verify_nil_ideal(const Algebra& alg, const Functional& f, double tol) {
  const auto v = nil_ideal_check(alg, f, tol);
  Finding finding = make_finding(TheoremId::NilIdeal, kInclusionTol);
  if (v.condition_holds) {
    finding.samples = 1;
    finding.max_residual = v.max_residual;
    finding.passed = v.ideal;
    if (!v.ideal) finding.witness = "Nil_F not closed under multiplication by the algebra";
  } else {
    finding.notes.push_back("hypothesis not met: ker^L or ker^R differs from Nil_F");
  }
  return finding;
}

Finding verify_stab_transversality(const Decomposition& d) {
  Finding finding = make_finding(TheoremId::StabTransversality, 0.5);
  for (std::size_t p = 0; p < d.points.size(); ++p) {
    for (std::size_t q = p + 1; q < d.points.size(); ++q) {
      const Subspace both = subspace_intersect(d.filtrations[p].front(), d.filtrations[q].front(), d.options.tol);
      const double excess = std::abs(static_cast<double>(both.dim()) - static_cast<double>(d.nil.dim()));
      record(finding, excess, 1,
             "Stab(" + point_name(d.points[p].alpha) + ") ^ Stab(" + point_name(d.points[q].alpha) + ")");
    }
  }
  finalize(finding);
  return finding;
}

Finding verify_stab_transversality(const Algebra& alg, const Functional& f) {
  return verify_stab_transversality(decompose(alg, f));
}

Subspace pencil_kernel(const Algebra& alg, const Functional& f, Complex lambda0, Complex mu0, double tol) {
  const GramData g = gram(alg, f);
  const double scale = (std::abs(lambda0) + std::abs(mu0)) * g.a.norm();
  // (aᵀx)_j = F(x e_j), (a x)_j = F(e_j x)
  return nullspace_scaled(lambda0 * g.at + mu0 * g.a, tol, scale);
}

std::size_t pencil_kernel_dim(const Algebra& alg, const Functional& f, Complex lambda0, Complex mu0, double tol) {
  return pencil_kernel(alg, f, lambda0, mu0, tol).dim();
}

StabMinimum minimize_stab_dim(const Algebra& alg, Complex lambda0, Complex mu0, const std::vector<Functional>& s_basis,
                              const Functional& f_start, std::size_t samples, std::uint64_t seed, double tol) {
  if (samples == 0) throw Error(ErrorKind::BadParams, "minimize_stab_dim needs at least one sample");
  if (s_basis.empty()) return {f_start, pencil_kernel_dim(alg, f_start, lambda0, mu0, tol)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 0.1);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  StabMinimum best{f_start, 0};
  bool have = false;
  for (std::size_t s = 0; s < samples; ++s) {
    Functional candidate = f_start;
    for (const auto& g : s_basis) {
      const double r = radius(rng);
      const Complex eps = std::polar(r, phase(rng));
      candidate.coords += eps * g.coords;
    }
    const std::size_t dim = pencil_kernel_dim(alg, candidate, lambda0, mu0, tol);
    if (!have || dim < best.dim) {
      best = {std::move(candidate), dim};
      have = true;
    }
  }
  return best;
}

Finding verify_regular_perturbation(const Algebra& alg, const Functional& f_min, Complex lambda0, Complex mu0,
                                    const std::vector<Functional>& s_basis, double tol) {
  const Subspace xs = pencil_kernel(alg, f_min, lambda0, mu0);
  const Subspace ys = pencil_kernel(alg, f_min, mu0, lambda0);
  Finding finding = make_finding(TheoremId::RegularPerturbation, tol);
  for (Eigen::Index i = 0; i < xs.frame().cols(); ++i) {
    for (Eigen::Index j = 0; j < ys.frame().cols(); ++j) {
      const Vector x = xs.frame().col(i), y = ys.frame().col(j);
      const Element combo = lambda0 * multiply(alg, x, y) + mu0 * multiply(alg, y, x);
      for (std::size_t gi = 0; gi < s_basis.size(); ++gi) {
        const auto& g = s_basis[gi];
        const double res = std::abs(apply(g, combo)) / (1.0 + g.coords.norm() * x.norm() * y.norm());
        std::ostringstream w;
        w << "G #" << gi << ", x column " << i << ", y column " << j;
        record(finding, res, 1, w.str());
      }
    }
  }
  if (finding.samples == 0) finding.notes.push_back("vacuous: a kernel is trivial");
  finalize(finding);
  return finding;
}

Finding verify_corollaries(const Algebra& alg, const Functional& f_min, Complex alpha, double tol) {
  Finding finding = make_finding(TheoremId::Corollary1, tol);
  auto check_pairs = [&](const Subspace& xs, const Subspace& ys, Complex coeff, const std::string& tag) {
    for (Eigen::Index i = 0; i < xs.frame().cols(); ++i) {
      for (Eigen::Index j = 0; j < ys.frame().cols(); ++j) {
        const Vector x = xs.frame().col(i), y = ys.frame().col(j);
        Element r = multiply(alg, x, y);
        if (coeff != Complex(0.0)) r -= coeff * multiply(alg, y, x);
        std::ostringstream w;
        w << tag << ", columns (" << i << "," << j << ")";
        record(finding, r.norm(), 1, w.str());
      }
    }
  };
  if (alpha == Complex(0.0)) {
    finding.theorem = TheoremId::Corollary3;
    check_pairs(pencil_kernel(alg, f_min, 1.0, 0.0), pencil_kernel(alg, f_min, 0.0, 1.0), 0.0, "Stab(0)*Stab(inf)");
    const Subspace nil = kernels(alg, f_min).nil;
    check_pairs(nil, nil, 0.0, "Nil*Nil");
  } else if (alpha == Complex(1.0)) {
    finding.theorem = TheoremId::Corollary2;
    const Subspace s = pencil_kernel(alg, f_min, 1.0, -1.0);
    check_pairs(s, s, 1.0, "[Stab(1), Stab(1)]");
  } else {
    finding.theorem = TheoremId::Corollary1;
    // Stab(1/α) = {αF(yz) − F(zy) = 0}
    check_pairs(pencil_kernel(alg, f_min, 1.0, -alpha), pencil_kernel(alg, f_min, alpha, -1.0), alpha,
                "Stab(alpha)*Stab(1/alpha)");
  }
  if (finding.samples == 0) finding.notes.push_back("vacuous: a stabilizer is trivial");
  finalize(finding);
  return finding;
}

Finding corollary2_negative_control(double tol) {
  const Algebra mat2 = mat_algebra(2);
  const Functional trace = trace_functional(Matrix::Identity(2, 2));
  Finding check = verify_corollaries(mat2, trace, 1.0, tol);
  Finding control = check;
  control.control = true;
  control.passed = !check.passed;
  control.notes.push_back("negative control: trace functional on Mat_2, Stab(1) = Mat_2 is not commutative");
  return control;
}

std::vector<Functional> dual_basis(std::size_t dim) {
  std::vector<Functional> out;
  for (std::size_t i = 0; i < dim; ++i) {
    Functional g{Vector::Zero(static_cast<Eigen::Index>(dim))};
    g.coords(static_cast<Eigen::Index>(i)) = 1.0;
    out.push_back(std::move(g));
  }
  return out;
}

Functional random_functional(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Functional f{Vector(static_cast<Eigen::Index>(dim))};
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    f.coords(static_cast<Eigen::Index>(i)) = Complex(re, im);
  }
  return f;
}

std::vector<Finding> merge_findings(const std::vector<Finding>& findings) {
  std::vector<Finding> merged;
  std::vector<bool> failed_witness;
  for (const auto& f : findings) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Finding& m) { return m.theorem == f.theorem && m.control == f.control; });
    if (it == merged.end()) {
      merged.push_back(f);
      failed_witness.push_back(!f.passed);
      continue;
    }
    auto& m = *it;
    const auto idx = static_cast<std::size_t>(it - merged.begin());
    // Worst failing case wins the witness; otherwise the worst residual.
    const bool take = (!f.passed && !failed_witness[idx]) ||
                      (f.passed == !failed_witness[idx] && f.max_residual > m.max_residual);
    if (take) {
      m.witness = f.witness;
      m.witness_functional = f.witness_functional;
      failed_witness[idx] = !f.passed;
    }
    m.max_residual = std::max(m.max_residual, f.max_residual);
    m.tolerance = std::max(m.tolerance, f.tolerance);
    m.samples += f.samples;
    m.passed = m.passed && f.passed;
    for (const auto& n : f.notes) {
      if (std::find(m.notes.begin(), m.notes.end(), n) == m.notes.end()) m.notes.push_back(n);
    }
  }
  return merged;
}

std::vector<Finding> analyze_findings(const Algebra& alg, const Functional& f, const Decomposition& d,
                                      std::uint64_t seed) {
  std::vector<Finding> out;
  out.push_back(verify_kernel_relations(alg, f));
  out.push_back(verify_alpha0_suite(alg, f, d, seed));
  for (auto& x : verify_v_mult(alg, f, d)) out.push_back(std::move(x));
  for (auto& x : verify_dim_symmetry(d)) out.push_back(std::move(x));
  out.push_back(verify_rank_one(alg, f, d.options.tol));
  out.push_back(verify_nil_ideal(alg, f, d.options.tol));
  out.push_back(verify_stab_transversality(d));
  return out;
}

namespace {

bool wants(const SuiteOptions& o, Suite s) { return std::find(o.suites.begin(), o.suites.end(), s) != o.suites.end(); }

// First spectrum point outside {0, 1, ∞}.
std::optional<Complex> pick_corollary1_alpha(const Decomposition& d) {
  for (const auto& p : d.points) {
    if (p.alpha.is_infinite()) continue;
    const Complex v = p.alpha.value();
    if (std::abs(v) > d.options.cluster_tol && std::abs(v - 1.0) > d.options.cluster_tol) return v;
  }
  return std::nullopt;
}

}  // namespace

SuiteReport run_suites(const Algebra& alg, const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  const auto s_basis = dual_basis(alg.dim());
  std::vector<Finding> raw;
  SuiteReport report;
  for (std::size_t i = 0; i < options.functionals; ++i) {
    const Functional f = random_functional(alg.dim(), rng);
    const std::uint64_t local_seed = options.seed * 1000003ULL + i;
    std::vector<Finding> local;
    try {
      const Decomposition d = decompose(alg, f, local_seed, options.spectral);
      for (const auto& v : d.invariant_violations) {
        report.invariant_violations.push_back("functional #" + std::to_string(i) + ": " + v);
      }
      if (wants(options, Suite::Kernel)) local.push_back(verify_kernel_relations(alg, f));
      if (wants(options, Suite::Alpha0)) local.push_back(verify_alpha0_suite(alg, f, d, local_seed));
      if (wants(options, Suite::VMult)) {
        for (auto& x : verify_v_mult(alg, f, d)) local.push_back(std::move(x));
      }
      if (wants(options, Suite::DimSymmetry)) {
        for (auto& x : verify_dim_symmetry(d)) local.push_back(std::move(x));
      }
      if (wants(options, Suite::RankOne)) local.push_back(verify_rank_one(alg, f, options.spectral.tol));
      if (wants(options, Suite::NilIdeal)) local.push_back(verify_nil_ideal(alg, f, options.spectral.tol));
      if (wants(options, Suite::Transversality)) local.push_back(verify_stab_transversality(d));
      if (wants(options, Suite::Regular)) {
        for (const auto& [l0, m0] : {std::pair<Complex, Complex>{1.0, -1.0}, {1.0, 0.0}}) {
          const auto best = minimize_stab_dim(alg, l0, m0, s_basis, f, options.minimize_samples, local_seed);
          auto finding = verify_regular_perturbation(alg, best.f, l0, m0, s_basis);
          finding.witness_functional = best.f.coords;
          local.push_back(std::move(finding));
        }
      }
      const std::array<std::pair<Suite, std::optional<Complex>>, 3> corollaries{{
          {Suite::Corollary1, pick_corollary1_alpha(d)},
          {Suite::Corollary2, 1.0},
          {Suite::Corollary3, 0.0},
      }};
      for (const auto& [suite, alpha] : corollaries) {
        if (!wants(options, suite)) continue;
        if (!alpha) {
          auto finding = make_finding(TheoremId::Corollary1, kRegularTol);
          finding.notes.push_back("vacuous: spectrum has no point outside {0, 1, inf}");
          local.push_back(std::move(finding));
          continue;
        }
        const auto best = minimize_stab_dim(alg, 1.0, -*alpha, s_basis, f, options.minimize_samples, local_seed);
        auto finding = verify_corollaries(alg, best.f, *alpha, kRegularTol);
        finding.witness_functional = best.f.coords;
        local.push_back(std::move(finding));
      }
    } catch (const Error& e) {
      report.invariant_violations.push_back("functional #" + std::to_string(i) + ": " + e.what());
    }
    for (auto& finding : local) {
      if (!finding.witness_functional) finding.witness_functional = f.coords;
      if (finding.witness) finding.witness = "functional #" + std::to_string(i) + ": " + *finding.witness;
      raw.push_back(std::move(finding));
    }
  }
  if (options.negative_control) raw.push_back(corollary2_negative_control());
  report.findings = merge_findings(raw);
  return report;
}

}  // namespace algscope
