#include "algscope/error.hpp"
#include "algscope/io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace algscope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct CommonFlags {
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  double tol = kDefaultTol;
  double cluster_tol = kDefaultClusterTol;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "Write the report to this file instead of stdout");
  cmd->add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--seed", flags.seed, "Random seed (falls back to ALGSCOPE_SEED, then 0)");
  cmd->add_option("--tol", flags.tol, "Rank tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--cluster-tol", flags.cluster_tol, "Spectrum clustering tolerance")->check(CLI::PositiveNumber);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("ALGSCOPE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::BadParams, "ALGSCOPE_SEED is not a non-negative integer: '" + s + "'");
  }
  return value;
}

void emit(const CommonFlags& flags, const ReportDocument& report) {
  const std::string body = flags.format == "text" ? format_report_text(report) : serialize_report(report);
  if (flags.out.empty()) {
    std::cout << body;
  } else {
    write_file(flags.out, body);
  }
}

Algebra load_algebra(const std::string& path, bool check) {
  Algebra alg;
  try {
    alg = parse_algebra(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
  if (check) {
    const auto v = validate(alg);
    if (!v.passed) {
      std::ostringstream os;
      os << path << ": not a unital associative algebra (associativity residual " << v.associativity_residual
         << " at (" << v.witness[0] << ", " << v.witness[1] << ", " << v.witness[2] << "), unit residual "
         << v.unit_residual << ")";
      throw Error(ErrorKind::BadParams, os.str());
    }
  }
  return alg;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
    throw Error(ErrorKind::BadParams, what + " expects a positive integer, got '" + s + "'");
  }
  return value;
}

std::vector<std::vector<std::size_t>> named_group(const std::string& name) {
  if (name == "klein" || name == "z2xz2") return product_group_table(cyclic_group_table(2), cyclic_group_table(2));
  if (name.size() > 1 && name[0] == 'z') return cyclic_group_table(parse_size(name.substr(1), "group zN"));
  throw Error(ErrorKind::BadParams, "unknown group '" + name + "' (use zN, klein or z2xz2)");
}

Algebra build(const std::string& name, const std::vector<std::string>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw Error(ErrorKind::BadParams,
                  "builder '" + name + "' takes " + std::to_string(n) + " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "matrix") {
    need(1);
    return mat_algebra(parse_size(params[0], "matrix"));
  }
  if (name == "triangular") {
    need(1);
    return upper_triangular(parse_size(params[0], "triangular"));
  }
  if (name == "dual") {
    need(0);
    return dual_numbers();
  }
  if (name == "group") {
    need(1);
    return group_algebra(named_group(params[0]));
  }
  if (name == "direct-sum") {
    need(2);
    return direct_sum(load_algebra(params[0], true), load_algebra(params[1], true));
  }
  if (name == "opposite") {
    need(1);
    return opposite(load_algebra(params[0], true));
  }
  throw Error(ErrorKind::UnknownBuilder, "unknown builder '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose finite-dimensional associative algebras along a linear functional"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string alg_path, fn_path;
  bool frames = false, skip_validate = false;
  auto* analyze = app.add_subcommand("analyze", "Decompose an algebra along a functional");
  analyze->add_option("algebra", alg_path, "Algebra file")->required();
  analyze->add_option("functional", fn_path, "Functional file")->required();
  analyze->add_flag("--frames", frames, "Include V^k(alpha) frames in the report");
  analyze->add_flag("--skip-validate", skip_validate, "Do not check associativity and the unit");
  add_common(analyze, analyze_flags);

  CommonFlags verify_flags;
  std::string verify_alg;
  std::size_t functionals = 50;
  std::size_t minimize_samples = 32;
  std::vector<std::string> suite_names;
  bool negative_control = false, verify_skip_validate = false;
  auto* verify = app.add_subcommand("verify", "Run theorem suites over random functionals");
  verify->add_option("algebra", verify_alg, "Algebra file")->required();
  verify->add_option("--functionals", functionals, "Number of random functionals")->check(CLI::NonNegativeNumber);
  verify->add_option("--suite", suite_names, "Comma-separated suites (default: all)")->delimiter(',');
  verify->add_option("--minimize-samples", minimize_samples, "Samples per stabilizer minimization")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--negative-control", negative_control, "Also run the deliberately failing control");
  verify->add_flag("--skip-validate", verify_skip_validate, "Do not check associativity and the unit");
  add_common(verify, verify_flags);

  std::string builder;
  std::vector<std::string> builder_params;
  std::string builder_out;
  auto* builders = app.add_subcommand("builders", "Write a standard algebra file");
  builders->add_option("name", builder, "matrix N | triangular N | dual | group zN|klein|z2xz2 | direct-sum A B | opposite A")
      ->required();
  builders->add_option("params", builder_params, "Builder parameters");
  builders->add_option("--out", builder_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*builders) {
      const std::string body = serialize_algebra(build(builder, builder_params));
      if (builder_out.empty()) {
        std::cout << body;
      } else {
        write_file(builder_out, body);
      }
      return kExitOk;
    }

    if (*analyze) {
      const std::uint64_t seed = resolve_seed(analyze_flags.seed);
      const Algebra alg = load_algebra(alg_path, !skip_validate);
      Functional f;
      try {
        f = parse_functional(read_file(fn_path));
      } catch (const Error& e) {
        throw Error(e.kind(), fn_path + ": " + e.what());
      }
      if (static_cast<std::size_t>(f.coords.size()) != alg.dim()) {
        throw Error(ErrorKind::DimensionMismatch, fn_path + ": functional has " + std::to_string(f.coords.size()) +
                                                      " coordinates, algebra has dim " + std::to_string(alg.dim()));
      }
      ReportDocument report;
      try {
        const SpectralOptions options{analyze_flags.tol, analyze_flags.cluster_tol};
        const Decomposition d = decompose(alg, f, seed, options);
        report = analyze_report(alg, d, analyze_findings(alg, f, d, seed), seed, frames);
      } catch (const Error& e) {
        std::cerr << "analysis failed: " << e.what() << "\n";
        return kExitViolation;
      }
      emit(analyze_flags, report);
      const bool bad = !report.invariant_violations.empty() || has_theorem_failure(report.findings);
      return bad ? kExitViolation : kExitOk;
    }

    const std::uint64_t seed = resolve_seed(verify_flags.seed);
    const Algebra alg = load_algebra(verify_alg, !verify_skip_validate);
    SuiteOptions options;
    options.functionals = functionals;
    options.seed = seed;
    options.spectral = {verify_flags.tol, verify_flags.cluster_tol};
    options.minimize_samples = minimize_samples;
    options.negative_control = negative_control;
    if (suite_names.empty()) {
      options.suites = all_suites();
    } else {
      options.suites.clear();
      for (const auto& s : suite_names) {
        const auto suite = suite_from_string(s);
        if (!suite) throw Error(ErrorKind::BadParams, "unknown suite '" + s + "'");
        options.suites.push_back(*suite);
      }
    }
    const SuiteReport result = run_suites(alg, options);
    ReportDocument report;
    report.command = "verify";
    report.tol = verify_flags.tol;
    report.cluster_tol = verify_flags.cluster_tol;
    report.seed = seed;
    report.dim = alg.dim();
    report.functionals = functionals;
    for (const auto s : options.suites) report.suites.push_back(to_string(s));
    report.findings = result.findings;
    report.invariant_violations = result.invariant_violations;
    emit(verify_flags, report);
    const bool bad = !report.invariant_violations.empty() || has_theorem_failure(report.findings);
    return bad ? kExitViolation : kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
