#pragma once

// JSON file formats: algebras, functionals and reports.

#include "algscope/algebra.hpp"
#include "algscope/functional.hpp"
#include "algscope/spectral.hpp"
#include "algscope/verifier.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace algscope {

/// Structure constants are written sparsely as [i, j, k, re, im] rows.
Algebra parse_algebra(const std::string& text);
std::string serialize_algebra(const Algebra& alg);

/// Length is checked against the algebra at use, not here.
Functional parse_functional(const std::string& text);
std::string serialize_functional(const Functional& f);

struct SpectrumRow {
  ProjectivePoint alpha = ProjectivePoint::finite(0.0);
  std::size_t algebraic_mult = 0;
  std::size_t stab_dim = 0;
  std::vector<std::size_t> filtration_dims;
  /// Orthonormal frames of V^k(α), one per level; only with --frames.
  std::vector<Matrix> frames;
};

struct ReportDocument {
  std::string command;
  double tol = kDefaultTol;
  double cluster_tol = kDefaultClusterTol;
  std::uint64_t seed = 0;
  std::size_t dim = 0;

  // analyze
  std::optional<Complex> alpha0;
  std::size_t dim_nil = 0;
  std::size_t k = 0;
  std::vector<Complex> chi;
  std::vector<SpectrumRow> spectrum;

  // verify
  std::size_t functionals = 0;
  std::vector<std::string> suites;

  std::vector<Finding> findings;
  std::vector<std::string> invariant_violations;
};

bool operator==(const Finding& a, const Finding& b);
bool operator==(const SpectrumRow& a, const SpectrumRow& b);
bool operator==(const ReportDocument& a, const ReportDocument& b);

ReportDocument analyze_report(const Algebra& alg, const Decomposition& d, const std::vector<Finding>& findings,
                              std::uint64_t seed, bool include_frames);

/// True when any finding of a proved theorem failed (negative controls count
/// as failed when they did not trip).
bool has_theorem_failure(const std::vector<Finding>& findings);

ReportDocument parse_report(const std::string& text);
std::string serialize_report(const ReportDocument& report);
/// Human-readable table; not parseable.
std::string format_report_text(const ReportDocument& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace algscope
