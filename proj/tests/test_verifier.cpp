#include "algscope/verifier.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace algscope;

namespace {

Functional diag_dual(std::initializer_list<double> nu) {
  const auto n = static_cast<Eigen::Index>(nu.size());
  Matrix fm = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double x : nu) {
    fm(i, i) = x;
    ++i;
  }
  return trace_functional(fm);
}

Functional dual_f(double a, double b) {
  Vector v(2);
  v << a, b;
  return Functional{v};
}

Finding finding(TheoremId id, bool passed, double residual, const std::string& witness) {
  Finding f;
  f.theorem = id;
  f.passed = passed;
  f.max_residual = residual;
  f.tolerance = 1e-8;
  f.samples = 1;
  f.witness = witness;
  return f;
}

}  // namespace

TEST_CASE("kernel relations") {
  auto f = verify_kernel_relations(mat_algebra(2), Functional{Vector::Zero(4)});
  CHECK(f.passed);
  f = verify_kernel_relations(dual_numbers(), dual_f(1.0, 0.0));
  CHECK(f.passed);
  CHECK(f.max_residual == 0.0);
  CHECK(f.samples > 0);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto r = verify_kernel_relations(upper_triangular(3), random_functional(6, rng));
    CHECK(r.passed);
    CHECK(r.max_residual < 1e-8);
  }
}

TEST_CASE("products of Jordan spaces on Mat3") {
  const Algebra m3 = mat_algebra(3);
  const Functional f = diag_dual({1.0, 2.0, 5.0});
  const Decomposition d = decompose(m3, f);
  const auto findings = verify_v_mult(m3, f, d);
  REQUIRE(findings.size() == 2);
  for (const auto& x : findings) {
    CHECK(x.passed);
    CHECK(x.max_residual < 1e-7);
    CHECK(x.samples > 0);
  }
  // e21 e13 = e23: V(2)·V(5/2) lands in V(5)
  const auto p2 = d.find(ProjectivePoint::finite(2.0)), p52 = d.find(ProjectivePoint::finite(2.5)),
             p5 = d.find(ProjectivePoint::finite(5.0));
  REQUIRE((p2 >= 0 && p52 >= 0 && p5 >= 0));
  const auto r = product_inclusion(m3, d.v_space(static_cast<std::size_t>(p2)).frame(),
                                   d.v_space(static_cast<std::size_t>(p52)).frame(), d.v_space(static_cast<std::size_t>(p5)));
  CHECK(r.max_residual < 1e-12);
  // αβ = 4 is not in the spectrum and e21 e21 = 0 lies in Nil_F = 0
  CHECK(d.find(ProjectivePoint::finite(4.0)) < 0);
  const Matrix v2 = d.v_space(static_cast<std::size_t>(p2)).frame();
  CHECK(multiply(m3, v2.col(0), v2.col(0)).norm() < 1e-12);
}

TEST_CASE("product check detects a corrupted filtration") {
  const Algebra m3 = mat_algebra(3);
  const Functional f = diag_dual({1.0, 2.0, 5.0});
  Decomposition d = decompose(m3, f);
  const auto p5 = static_cast<std::size_t>(d.find(ProjectivePoint::finite(5.0)));
  // replace V(5) = span(e31) by span(e11)
  d.filtrations[p5] = {Subspace::span(Matrix(oracle::unit_vector(9, 0)))};
  const auto findings = verify_v_mult(m3, f, d);
  CHECK_FALSE(findings[0].passed);
  CHECK_FALSE(findings[1].passed);
}

TEST_CASE("products on commutative and degenerate algebras") {
  std::mt19937_64 rng(5);
  const Algebra klein = group_algebra(product_group_table(cyclic_group_table(2), cyclic_group_table(2)));
  for (int i = 0; i < 5; ++i) {
    for (const auto& x : verify_v_mult(klein, random_functional(4, rng))) CHECK(x.passed);
  }
  const auto t = verify_v_mult(upper_triangular(3), random_functional(6, rng));
  CHECK(t[0].passed);
  CHECK(t[1].passed);
  REQUIRE_FALSE(t[0].notes.empty());
  CHECK(t[0].notes[0].find("(0, inf)") != std::string::npos);
}

TEST_CASE("dimension symmetry") {
  const Decomposition d = decompose(mat_algebra(3), diag_dual({1.0, 2.0, 5.0}));
  for (const auto& x : verify_dim_symmetry(d)) {
    CHECK(x.passed);
    CHECK(x.max_residual == 0.0);
  }
  const auto& p2 = d.points[static_cast<std::size_t>(d.find(ProjectivePoint::finite(2.0)))];
  const auto& ph = d.points[static_cast<std::size_t>(d.find(ProjectivePoint::finite(0.5)))];
  CHECK(p2.algebraic_mult == 1);
  CHECK(ph.algebraic_mult == 1);

  std::mt19937_64 rng(9);
  for (const auto& x : verify_dim_symmetry(upper_triangular(3), random_functional(6, rng))) CHECK(x.passed);

  Decomposition broken = d;
  broken.points.erase(broken.points.begin());
  broken.filtrations.erase(broken.filtrations.begin());
  for (const auto& x : verify_dim_symmetry(broken)) CHECK_FALSE(x.passed);
}

TEST_CASE("rank-one and nil-ideal findings") {
  auto r = verify_rank_one(dual_numbers(), dual_f(1.0, 0.0));
  CHECK(r.passed);
  CHECK(r.samples == 1);
  CHECK(r.max_residual < 1e-12);
  r = verify_rank_one(mat_algebra(2), diag_dual({1.0, 2.0}));
  CHECK(r.passed);
  CHECK(r.samples == 0);
  REQUIRE(r.notes.size() == 1);
  CHECK(r.notes[0].find("rank 4") != std::string::npos);

  auto n = verify_nil_ideal(dual_numbers(), dual_f(1.0, 0.0));
  CHECK(n.passed);
  CHECK(n.samples == 1);
}

TEST_CASE("stabilizer transversality") {
  const auto t = verify_stab_transversality(mat_algebra(3), diag_dual({1.0, 2.0, 5.0}));
  CHECK(t.passed);
  CHECK(t.samples == 21);
  const auto single = verify_stab_transversality(dual_numbers(), dual_f(1.0, 0.0));
  CHECK(single.passed);
  CHECK(single.samples == 0);
  CHECK_FALSE(is_proved_theorem(TheoremId::StabTransversality));
  CHECK(is_proved_theorem(TheoremId::VMultFinite));
}

TEST_CASE("pencil kernels match their defining equations") {
  std::mt19937_64 rng(4);
  const Algebra alg = upper_triangular(3);
  const Functional f = random_functional(6, rng);
  const Matrix a = oracle::gram(alg, f.coords);
  for (const auto& [l0, m0] : std::vector<std::pair<Complex, Complex>>{{1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}) {
    const Subspace k = pencil_kernel(alg, f, l0, m0);
    // λ₀F(x z) + μ₀F(z x) = 0 for every basis z
    CHECK((Matrix(l0 * a.transpose() + m0 * a) * k.frame()).norm() < 1e-9);
    CHECK(k.dim() == oracle::nullity(Matrix(l0 * a.transpose() + m0 * a), 1e-9, (std::abs(l0) + std::abs(m0)) * a.norm()));
  }
}

TEST_CASE("stabilizer minimization") {
  const Functional start = diag_dual({1.0, 1.0});  // trace: Stab(1) is everything
  auto m = minimize_stab_dim(mat_algebra(2), 1.0, -1.0, {}, start, 10, 0);
  CHECK(m.f.coords == start.coords);
  CHECK(m.dim == 4);

  m = minimize_stab_dim(mat_algebra(2), 1.0, -1.0, dual_basis(4), start, 16, 3);
  CHECK(m.dim == 2);
  m = minimize_stab_dim(dual_numbers(), 1.0, -1.0, dual_basis(2), dual_f(1.0, 0.0), 16, 3);
  CHECK(m.dim == 2);
}

TEST_CASE("minimization is monotone in the sample count") {
  std::mt19937_64 rng(66);
  const Algebra alg = upper_triangular(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Functional start = random_functional(6, rng);
    for (std::size_t k : {1, 2, 4, 8}) {
      const auto small = minimize_stab_dim(alg, 1.0, 0.0, dual_basis(6), start, k, seed);
      const auto large = minimize_stab_dim(alg, 1.0, 0.0, dual_basis(6), start, 2 * k, seed);
      CHECK(large.dim <= small.dim);
    }
  }
}

TEST_CASE("perturbation identity and corollaries at minimizers") {
  for (std::size_t n : {2, 3}) {
    const Algebra alg = mat_algebra(n);
    const auto s = dual_basis(alg.dim());
    const auto m = minimize_stab_dim(alg, 1.0, -1.0, s, trace_functional(Matrix::Identity(n, n)), 32, 1);
    CHECK(m.dim == n);
    const auto reg = verify_regular_perturbation(alg, m.f, 1.0, -1.0, s);
    CHECK(reg.passed);
    CHECK(reg.samples > 0);
    const auto c2 = verify_corollaries(alg, m.f, 1.0);
    CHECK(c2.theorem == TheoremId::Corollary2);
    CHECK(c2.passed);
    CHECK(c2.samples == n * n);
    CHECK(c2.max_residual < 1e-6);
    // Corollary 1 at α = 1 is the same statement
    const auto c1 = verify_corollaries(alg, m.f, Complex(1.0));
    CHECK(c1.max_residual == c2.max_residual);
  }

  const Algebra t2 = upper_triangular(2);
  std::mt19937_64 rng(8);
  const auto m = minimize_stab_dim(t2, 1.0, 0.0, dual_basis(3), random_functional(3, rng), 32, 2);
  const auto c3 = verify_corollaries(t2, m.f, 0.0);
  CHECK(c3.theorem == TheoremId::Corollary3);
  CHECK(c3.passed);
  CHECK(c3.samples > 0);
  // brute-force kernels: F(x z) = 0 and F(z x) = 0
  const Matrix a = oracle::gram(t2, m.f.coords);
  CHECK(oracle::nullity(a.transpose()) > 0);
  CHECK(oracle::nullity(a) > 0);
}

TEST_CASE("Corollary 1 residual on a non-commuting pair") {
  // Mat2 at diag(1,2): Stab(2) = span(e21), Stab(1/2) = span(e12)
  const auto c = verify_corollaries(mat_algebra(2), diag_dual({1.0, 2.0}), 2.0);
  CHECK(c.theorem == TheoremId::Corollary1);
  CHECK(c.samples == 1);
  // e21 e12 − 2 e12 e21 = e22 − 2 e11
  CHECK(c.max_residual == doctest::Approx(std::sqrt(5.0)));
  CHECK_FALSE(c.passed);
}

TEST_CASE("negative control trips") {
  const auto c = corollary2_negative_control();
  CHECK(c.control);
  CHECK(c.passed);
  CHECK(c.max_residual > 1e-6);
  CHECK_FALSE(verify_corollaries(mat_algebra(2), trace_functional(Matrix::Identity(2, 2)), 1.0).passed);
}

TEST_CASE("merging findings") {
  const auto merged = merge_findings({finding(TheoremId::NilIdeal, true, 1e-12, "a"),
                                      finding(TheoremId::NilIdeal, true, 1e-10, "b"),
                                      finding(TheoremId::KernelRelations, true, 0.0, "c"),
                                      finding(TheoremId::NilIdeal, true, 1e-10, "d")});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].theorem == TheoremId::NilIdeal);
  CHECK(merged[0].witness == std::optional<std::string>("b"));
  CHECK(merged[0].samples == 3);
  CHECK(merged[0].max_residual == 1e-10);

  const auto failing = merge_findings({finding(TheoremId::NilIdeal, true, 1e-3, "big pass"),
                                       finding(TheoremId::NilIdeal, false, 1e-4, "fail")});
  REQUIRE(failing.size() == 1);
  CHECK_FALSE(failing[0].passed);
  CHECK(failing[0].witness == std::optional<std::string>("fail"));
}

TEST_CASE("names round-trip") {
  for (auto s : all_suites()) CHECK(suite_from_string(to_string(s)) == s);
  CHECK_FALSE(suite_from_string("nope").has_value());
  for (auto id : {TheoremId::KernelRelations, TheoremId::Corollary3, TheoremId::StabTransversality}) {
    CHECK(theorem_from_string(to_string(id)) == id);
  }
}

TEST_CASE("suite runs are deterministic and pass on the corpus") {
  SuiteOptions o;
  o.functionals = 6;
  o.seed = 3;
  o.negative_control = true;
  for (const auto& alg : {mat_algebra(2), upper_triangular(3), dual_numbers(),
                          group_algebra(product_group_table(cyclic_group_table(2), cyclic_group_table(2)))}) {
    const auto a = run_suites(alg, o), b = run_suites(alg, o);
    CHECK(a.invariant_violations.empty());
    REQUIRE(a.findings.size() == b.findings.size());
    for (std::size_t i = 0; i < a.findings.size(); ++i) {
      CHECK(a.findings[i].passed);
      CHECK(a.findings[i].max_residual == b.findings[i].max_residual);
      CHECK(a.findings[i].witness == b.findings[i].witness);
    }
  }
}
