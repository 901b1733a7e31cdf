#include "algscope/io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace algscope;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& work() {
  static const fs::path dir = [] {
    fs::create_directories(TEST_WORK_DIR);
    return fs::path(TEST_WORK_DIR);
  }();
  return dir;
}

std::string path(const std::string& name) { return (work() / name).string(); }

Run run(const std::string& args, const std::string& env = "") {
  const std::string err_path = path("stderr.txt");
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + ALGSCOPE_BIN + "\" " + args + " 2>\"" + err_path + "\"";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err_path);
  return r;
}

void write(const std::string& name, const std::string& text) { write_file(path(name), text); }

void setup_inputs() {
  write("mat2.alg", serialize_algebra(mat_algebra(2)));
  write("mat3.alg", serialize_algebra(mat_algebra(3)));
  write("tri3.alg", serialize_algebra(upper_triangular(3)));
  write("dual.alg", serialize_algebra(dual_numbers()));
  Matrix fm = Matrix::Zero(3, 3);
  fm.diagonal() << 1, 2, 5;
  write("diag125.fn", serialize_functional(trace_functional(fm)));
  write("zero.fn", serialize_functional(Functional{Vector::Zero(2)}));
}

}  // namespace

TEST_CASE("builders") {
  auto r = run("builders matrix 3 --out " + path("b_mat3.alg"));
  CHECK(r.code == 0);
  CHECK(parse_algebra(read_file(path("b_mat3.alg"))).dim() == 9);

  r = run("builders group z2");
  CHECK(r.code == 0);
  const Algebra z2 = parse_algebra(r.out);
  CHECK(z2.dim() == 2);
  CHECK(validate(z2).passed);

  setup_inputs();
  r = run("builders opposite " + path("mat2.alg"));
  CHECK(r.code == 0);
  CHECK(parse_algebra(r.out).structure() == opposite(mat_algebra(2)).structure());

  for (const std::string& args : {"triangular 3", "dual", "group klein", "group z2xz2", "group z5"}) {
    r = run("builders " + args);
    CHECK(r.code == 0);
    CHECK(validate(parse_algebra(r.out)).passed);
  }
  r = run("builders direct-sum " + path("mat2.alg") + " " + path("dual.alg"));
  CHECK(r.code == 0);
  CHECK(parse_algebra(r.out).dim() == 6);
}

TEST_CASE("builder errors") {
  auto r = run("builders bogus");
  CHECK(r.code == 1);
  CHECK(r.err.find("UnknownBuilder") != std::string::npos);
  for (const std::string& args : {"matrix", "matrix 0", "matrix x", "group q8", "dual 2"}) {
    r = run("builders " + args);
    CHECK(r.code == 1);
    CHECK(r.err.find("BadParams") != std::string::npos);
  }
}

TEST_CASE("analyze") {
  setup_inputs();
  auto r = run("analyze " + path("mat3.alg") + " " + path("diag125.fn"));
  REQUIRE(r.code == 0);
  const ReportDocument doc = parse_report(r.out);
  CHECK(doc.spectrum.size() == 7);
  CHECK(doc.dim_nil == 0);
  CHECK(doc.findings.size() == 9);

  r = run("analyze " + path("dual.alg") + " " + path("zero.fn"));
  REQUIRE(r.code == 0);
  const ReportDocument zero = parse_report(r.out);
  CHECK(zero.dim_nil == 2);
  CHECK(zero.spectrum.empty());
  CHECK(zero.chi.size() == 1);

  r = run("analyze " + path("mat3.alg") + " " + path("diag125.fn") + " --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("filtration dims") != std::string::npos);

  r = run("analyze " + path("mat3.alg") + " " + path("diag125.fn") + " --frames --out " + path("frames.json"));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(parse_report(read_file(path("frames.json"))).spectrum[0].frames.size() == 1);
}

TEST_CASE("seeds and determinism") {
  setup_inputs();
  const std::string args = "analyze " + path("mat3.alg") + " " + path("diag125.fn");
  const auto a = run(args + " --seed 7"), b = run(args + " --seed 7"), c = run(args + " --seed 8");
  CHECK(a.out == b.out);
  const auto ra = parse_report(a.out), rc = parse_report(c.out);
  CHECK(ra.alpha0 != rc.alpha0);
  REQUIRE(ra.spectrum.size() == rc.spectrum.size());
  for (std::size_t p = 0; p < ra.spectrum.size(); ++p) {
    CHECK(ra.spectrum[p].alpha.near(rc.spectrum[p].alpha, 1e-9));
    CHECK(ra.spectrum[p].filtration_dims == rc.spectrum[p].filtration_dims);
    CHECK(ra.spectrum[p].stab_dim == rc.spectrum[p].stab_dim);
  }

  const auto env = run(args, "ALGSCOPE_SEED=7");
  CHECK(env.out == a.out);
  const auto flag_wins = run(args + " --seed 8", "ALGSCOPE_SEED=7");
  CHECK(flag_wins.out == c.out);
  const auto bad_env = run(args, "ALGSCOPE_SEED=seven");
  CHECK(bad_env.code == 1);
}

TEST_CASE("analyze errors") {
  setup_inputs();
  write("broken.alg", "{\"dim\": 2,\n\"unit\": [[1, 0], [0, 0]],\n\"structure\": [[0, 0, 0, 1, 0],]\n}");
  auto r = run("analyze " + path("broken.alg") + " " + path("zero.fn"));
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);

  r = run("analyze " + path("mat3.alg") + " " + path("zero.fn"));
  CHECK(r.code == 1);
  CHECK(r.err.find("DimensionMismatch") != std::string::npos);

  r = run("analyze " + path("missing.alg") + " " + path("zero.fn"));
  CHECK(r.code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("analyze " + path("mat3.alg")).code == 1);
  CHECK(run("analyze " + path("mat3.alg") + " " + path("diag125.fn") + " --format yaml").code == 1);
}

TEST_CASE("non-associative input") {
  setup_inputs();
  Algebra m2 = mat_algebra(2);
  auto c = m2.structure();
  c[(0 * 4 + 1) * 4 + 3] = 0.3;
  write("bad2.alg", serialize_algebra(Algebra(4, c, m2.unit())));
  Matrix fm = Matrix::Zero(2, 2);
  fm.diagonal() << 1, 2;
  write("diag12.fn", serialize_functional(trace_functional(fm)));
  auto r = run("analyze " + path("bad2.alg") + " " + path("diag12.fn"));
  CHECK(r.code == 1);
  CHECK(r.err.find("associativity") != std::string::npos);
  // skipping validation lets the product checks expose the broken table
  r = run("analyze " + path("bad2.alg") + " " + path("diag12.fn") + " --skip-validate");
  CHECK(r.code == 2);
  const ReportDocument doc = parse_report(r.out);
  CHECK(has_theorem_failure(doc.findings));
}

TEST_CASE("verify") {
  setup_inputs();
  auto r = run("verify " + path("tri3.alg") + " --functionals 50");
  REQUIRE(r.code == 0);
  auto doc = parse_report(r.out);
  CHECK(doc.functionals == 50);
  for (const auto& f : doc.findings) {
    if (f.theorem == TheoremId::KernelRelations || f.theorem == TheoremId::VMultFinite ||
        f.theorem == TheoremId::VMultNonzero || f.theorem == TheoremId::DimSymmetryV ||
        f.theorem == TheoremId::DimSymmetryStab) {
      CHECK(f.passed);
      CHECK(f.samples > 0);
    }
  }

  r = run("verify " + path("mat2.alg") + " --suite corollary2");
  REQUIRE(r.code == 0);
  doc = parse_report(r.out);
  REQUIRE(doc.findings.size() == 1);
  CHECK(doc.findings[0].theorem == TheoremId::Corollary2);
  CHECK(doc.findings[0].passed);
  CHECK(doc.findings[0].samples > 0);

  r = run("verify " + path("mat2.alg") + " --suite corollary2 --negative-control");
  REQUIRE(r.code == 0);
  doc = parse_report(r.out);
  REQUIRE(doc.findings.size() == 2);
  CHECK(doc.findings[1].control);
  CHECK(doc.findings[1].passed);
  CHECK(doc.findings[1].max_residual > 1e-6);

  CHECK(run("verify " + path("mat2.alg") + " --suite nonsense").code == 1);

  const std::string args = "verify " + path("mat2.alg") + " --functionals 5 --seed 3";
  CHECK(run(args).out == run(args).out);
}
