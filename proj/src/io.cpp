#include "algscope/io.hpp"

#include "algscope/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

namespace algscope {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(what + " line " + std::to_string(line) + " column " + std::to_string(col), "malformed JSON");
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "non-finite number");
  return x;
}

std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(where, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string text_field(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list");
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected [re, im]");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

Vector parse_vector(const json& v, const std::string& where) {
  array(v, where);
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = parse_complex(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

json point_json(const ProjectivePoint& p) { return p.is_infinite() ? json("inf") : complex_json(p.value()); }

ProjectivePoint parse_point(const json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() != "inf") fail(where, "expected [re, im] or \"inf\"");
    return ProjectivePoint::infinity();
  }
  return ProjectivePoint::finite(parse_complex(v, where));
}

// Frames are lists of columns.
json matrix_json(const Matrix& m) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) cols.push_back(vector_json(m.col(c)));
  return json{{"rows", m.rows()}, {"columns", cols}};
}

Matrix parse_matrix(const json& v, const std::string& where) {
  const std::size_t rows = count(field(v, "rows", where), where + ".rows");
  const json& cols = array(field(v, "columns", where), where + ".columns");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::string w = where + ".columns[" + std::to_string(c) + "]";
    const Vector col = parse_vector(cols[c], w);
    if (static_cast<std::size_t>(col.size()) != rows) fail(w, "column length does not match rows");
    m.col(static_cast<Eigen::Index>(c)) = col;
  }
  return m;
}

json finding_json(const Finding& f) {
  json j{{"theorem_id", to_string(f.theorem)}, {"passed", f.passed},     {"max_residual", f.max_residual},
         {"tolerance", f.tolerance},           {"samples", f.samples},   {"control", f.control},
         {"notes", f.notes}};
  j["witness"] = f.witness ? json(*f.witness) : json(nullptr);
  j["witness_functional"] = f.witness_functional ? vector_json(*f.witness_functional) : json(nullptr);
  return j;
}

Finding parse_finding(const json& v, const std::string& where) {
  Finding f;
  const std::string id = text_field(field(v, "theorem_id", where), where + ".theorem_id");
  const auto theorem = theorem_from_string(id);
  if (!theorem) fail(where + ".theorem_id", "unknown theorem id '" + id + "'");
  f.theorem = *theorem;
  const json& passed = field(v, "passed", where);
  if (!passed.is_boolean()) fail(where + ".passed", "expected a boolean");
  f.passed = passed.get<bool>();
  f.max_residual = number(field(v, "max_residual", where), where + ".max_residual");
  f.tolerance = number(field(v, "tolerance", where), where + ".tolerance");
  f.samples = count(field(v, "samples", where), where + ".samples");
  const json& control = field(v, "control", where);
  if (!control.is_boolean()) fail(where + ".control", "expected a boolean");
  f.control = control.get<bool>();
  const json& notes = array(field(v, "notes", where), where + ".notes");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    f.notes.push_back(text_field(notes[i], where + ".notes[" + std::to_string(i) + "]"));
  }
  const json& witness = field(v, "witness", where);
  if (!witness.is_null()) f.witness = text_field(witness, where + ".witness");
  const json& wf = field(v, "witness_functional", where);
  if (!wf.is_null()) f.witness_functional = parse_vector(wf, where + ".witness_functional");
  return f;
}

bool vectors_equal(const Vector& a, const Vector& b) { return a.size() == b.size() && a == b; }

bool matrices_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(8) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt_point(const ProjectivePoint& p) { return p.is_infinite() ? "inf" : fmt_complex(p.value()); }

}  // namespace

Algebra parse_algebra(const std::string& text) {
  const json doc = parse_json(text, "algebra");
  const std::size_t dim = count(field(doc, "dim", "algebra"), "algebra.dim");
  const Vector unit = parse_vector(field(doc, "unit", "algebra"), "algebra.unit");
  if (static_cast<std::size_t>(unit.size()) != dim) {
    fail("algebra.unit", "length " + std::to_string(unit.size()) + " does not match dim " + std::to_string(dim));
  }
  std::vector<std::string> labels;
  if (const auto it = doc.find("basis"); it != doc.end()) {
    array(*it, "algebra.basis");
    for (std::size_t i = 0; i < it->size(); ++i) {
      labels.push_back(text_field((*it)[i], "algebra.basis[" + std::to_string(i) + "]"));
    }
    if (labels.size() != dim) fail("algebra.basis", "label count does not match dim");
  }
  std::vector<Complex> structure(dim * dim * dim, Complex(0.0));
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  const json& entries = array(field(doc, "structure", "algebra"), "algebra.structure");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "algebra.structure[" + std::to_string(e) + "]";
    const json& row = entries[e];
    if (!row.is_array() || row.size() != 5) fail(where, "expected [i, j, k, re, im]");
    std::array<std::size_t, 3> idx{};
    for (std::size_t t = 0; t < 3; ++t) {
      idx[t] = count(row[t], where + "[" + std::to_string(t) + "]");
      if (idx[t] >= dim) fail(where + "[" + std::to_string(t) + "]", "index out of range [0, dim)");
    }
    if (!seen.insert({idx[0], idx[1], idx[2]}).second) fail(where, "duplicate entry for (i, j, k)");
    structure[(idx[0] * dim + idx[1]) * dim + idx[2]] = {number(row[3], where + "[3]"), number(row[4], where + "[4]")};
  }
  return Algebra(dim, std::move(structure), unit, std::move(labels));
}

std::string serialize_algebra(const Algebra& alg) {
  const std::size_t n = alg.dim();
  json entries = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex c = alg.c(i, j, k);
        if (c != Complex(0.0)) entries.push_back(json::array({i, j, k, c.real(), c.imag()}));
      }
    }
  }
  json doc{{"dim", n}, {"unit", vector_json(alg.unit())}, {"structure", entries}};
  if (!alg.basis_labels().empty()) doc["basis"] = alg.basis_labels();
  return doc.dump(1) + "\n";
}

Functional parse_functional(const std::string& text) {
  const json doc = parse_json(text, "functional");
  return Functional{parse_vector(field(doc, "coords", "functional"), "functional.coords")};
}

std::string serialize_functional(const Functional& f) {
  return json{{"coords", vector_json(f.coords)}}.dump(1) + "\n";
}

bool operator==(const Finding& a, const Finding& b) {
  const bool wf = a.witness_functional.has_value() == b.witness_functional.has_value() &&
                  (!a.witness_functional || vectors_equal(*a.witness_functional, *b.witness_functional));
  return a.theorem == b.theorem && a.passed == b.passed && a.max_residual == b.max_residual &&
         a.tolerance == b.tolerance && a.samples == b.samples && a.witness == b.witness && wf &&
         a.notes == b.notes && a.control == b.control;
}

bool operator==(const SpectrumRow& a, const SpectrumRow& b) {
  if (a.alpha.is_infinite() != b.alpha.is_infinite()) return false;
  if (!a.alpha.is_infinite() && a.alpha.value() != b.alpha.value()) return false;
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    if (!matrices_equal(a.frames[i], b.frames[i])) return false;
  }
  return a.algebraic_mult == b.algebraic_mult && a.stab_dim == b.stab_dim && a.filtration_dims == b.filtration_dims;
}

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  return a.command == b.command && a.tol == b.tol && a.cluster_tol == b.cluster_tol && a.seed == b.seed &&
         a.dim == b.dim && a.alpha0 == b.alpha0 && a.dim_nil == b.dim_nil && a.k == b.k && a.chi == b.chi &&
         a.spectrum == b.spectrum && a.functionals == b.functionals && a.suites == b.suites &&
         a.findings == b.findings && a.invariant_violations == b.invariant_violations;
}

ReportDocument analyze_report(const Algebra& alg, const Decomposition& d, const std::vector<Finding>& findings,
                              std::uint64_t seed, bool include_frames) {
  ReportDocument r;
  r.command = "analyze";
  r.tol = d.options.tol;
  r.cluster_tol = d.options.cluster_tol;
  r.seed = seed;
  r.dim = alg.dim();
  if (d.k > 0) r.alpha0 = d.alpha0_used;
  r.dim_nil = d.nil.dim();
  r.k = d.k;
  r.chi = d.chi.coeffs;
  for (std::size_t p = 0; p < d.points.size(); ++p) {
    SpectrumRow row{d.points[p].alpha, d.points[p].algebraic_mult, d.points[p].stab_dim,
                    d.points[p].filtration_dims, {}};
    if (include_frames) {
      for (const auto& level : d.filtrations[p]) row.frames.push_back(level.frame());
    }
    r.spectrum.push_back(std::move(row));
  }
  r.findings = findings;
  r.invariant_violations = d.invariant_violations;
  return r;
}

bool has_theorem_failure(const std::vector<Finding>& findings) {
  for (const auto& f : findings) {
    if (!f.passed && (f.control || is_proved_theorem(f.theorem))) return true;
  }
  return false;
}

std::string serialize_report(const ReportDocument& r) {
  json doc;
  doc["command"] = r.command;
  doc["tolerances"] = {{"tol", r.tol}, {"cluster_tol", r.cluster_tol}};
  doc["seed"] = r.seed;
  doc["dim"] = r.dim;
  doc["alpha0"] = r.alpha0 ? complex_json(*r.alpha0) : json(nullptr);
  doc["dim_nil"] = r.dim_nil;
  doc["K"] = r.k;
  json chi = json::array();
  for (const auto& c : r.chi) chi.push_back(complex_json(c));
  doc["chi"] = chi;
  json spectrum = json::array();
  for (const auto& row : r.spectrum) {
    json s{{"alpha", point_json(row.alpha)},
           {"algebraic_mult", row.algebraic_mult},
           {"stab_dim", row.stab_dim},
           {"filtration_dims", row.filtration_dims}};
    if (!row.frames.empty()) {
      json frames = json::array();
      for (const auto& m : row.frames) frames.push_back(matrix_json(m));
      s["frames"] = frames;
    }
    spectrum.push_back(s);
  }
  doc["spectrum"] = spectrum;
  doc["functionals"] = r.functionals;
  doc["suites"] = r.suites;
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back(finding_json(f));
  doc["findings"] = findings;
  doc["invariant_violations"] = r.invariant_violations;
  return doc.dump(1) + "\n";
}

ReportDocument parse_report(const std::string& text) {
  const json doc = parse_json(text, "report");
  ReportDocument r;
  r.command = text_field(field(doc, "command", "report"), "report.command");
  const json& tols = field(doc, "tolerances", "report");
  r.tol = number(field(tols, "tol", "report.tolerances"), "report.tolerances.tol");
  r.cluster_tol = number(field(tols, "cluster_tol", "report.tolerances"), "report.tolerances.cluster_tol");
  const json& seed = field(doc, "seed", "report");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    fail("report.seed", "expected a non-negative integer");
  }
  r.seed = seed.get<std::uint64_t>();
  r.dim = count(field(doc, "dim", "report"), "report.dim");
  const json& a0 = field(doc, "alpha0", "report");
  if (!a0.is_null()) r.alpha0 = parse_complex(a0, "report.alpha0");
  r.dim_nil = count(field(doc, "dim_nil", "report"), "report.dim_nil");
  r.k = count(field(doc, "K", "report"), "report.K");
  const json& chi = array(field(doc, "chi", "report"), "report.chi");
  for (std::size_t i = 0; i < chi.size(); ++i) r.chi.push_back(parse_complex(chi[i], "report.chi[" + std::to_string(i) + "]"));
  const json& spectrum = array(field(doc, "spectrum", "report"), "report.spectrum");
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    const std::string w = "report.spectrum[" + std::to_string(p) + "]";
    SpectrumRow row;
    row.alpha = parse_point(field(spectrum[p], "alpha", w), w + ".alpha");
    row.algebraic_mult = count(field(spectrum[p], "algebraic_mult", w), w + ".algebraic_mult");
    row.stab_dim = count(field(spectrum[p], "stab_dim", w), w + ".stab_dim");
    const json& dims = array(field(spectrum[p], "filtration_dims", w), w + ".filtration_dims");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      row.filtration_dims.push_back(count(dims[i], w + ".filtration_dims[" + std::to_string(i) + "]"));
    }
    if (const auto it = spectrum[p].find("frames"); it != spectrum[p].end()) {
      array(*it, w + ".frames");
      for (std::size_t i = 0; i < it->size(); ++i) {
        row.frames.push_back(parse_matrix((*it)[i], w + ".frames[" + std::to_string(i) + "]"));
      }
    }
    r.spectrum.push_back(std::move(row));
  }
  r.functionals = count(field(doc, "functionals", "report"), "report.functionals");
  const json& suites = array(field(doc, "suites", "report"), "report.suites");
  for (std::size_t i = 0; i < suites.size(); ++i) {
    r.suites.push_back(text_field(suites[i], "report.suites[" + std::to_string(i) + "]"));
  }
  const json& findings = array(field(doc, "findings", "report"), "report.findings");
  for (std::size_t i = 0; i < findings.size(); ++i) {
    r.findings.push_back(parse_finding(findings[i], "report.findings[" + std::to_string(i) + "]"));
  }
  const json& inv = array(field(doc, "invariant_violations", "report"), "report.invariant_violations");
  for (std::size_t i = 0; i < inv.size(); ++i) {
    r.invariant_violations.push_back(text_field(inv[i], "report.invariant_violations[" + std::to_string(i) + "]"));
  }
  return r;
}

std::string format_report_text(const ReportDocument& r) {
  std::ostringstream os;
  os << r.command << " report\n";
  os << "  tol " << r.tol << ", cluster tol " << r.cluster_tol << ", seed " << r.seed << "\n";
  os << "  dim " << r.dim;
  if (r.command == "analyze") {
    os << ", dim Nil " << r.dim_nil << ", K " << r.k;
    if (r.alpha0) os << ", alpha0 " << fmt_complex(*r.alpha0);
    os << "\n  chi:";
    for (const auto& c : r.chi) os << " (" << fmt_complex(c) << ")";
    os << "\n\n  " << std::left << std::setw(28) << "alpha" << std::setw(6) << "mult" << std::setw(6) << "stab"
       << "filtration dims\n";
    for (const auto& row : r.spectrum) {
      std::ostringstream dims;
      for (std::size_t i = 0; i < row.filtration_dims.size(); ++i) dims << (i ? " " : "") << row.filtration_dims[i];
      os << "  " << std::setw(28) << fmt_point(row.alpha) << std::setw(6) << row.algebraic_mult << std::setw(6)
         << row.stab_dim << dims.str() << "\n";
    }
  } else {
    os << ", functionals " << r.functionals << "\n  suites:";
    for (const auto& s : r.suites) os << " " << s;
    os << "\n";
  }
  os << "\n  findings\n";
  for (const auto& f : r.findings) {
    os << "  " << (f.passed ? "PASS " : "FAIL ") << std::left << std::setw(24)
       << (std::string(to_string(f.theorem)) + (f.control ? " (control)" : "")) << " residual " << std::setw(12)
       << f.max_residual << " tol " << std::setw(8) << f.tolerance << " samples " << f.samples << "\n";
    if (f.witness) os << "       witness: " << *f.witness << "\n";
    for (const auto& n : f.notes) os << "       note: " << n << "\n";
  }
  if (!r.invariant_violations.empty()) {
    os << "\n  invariant violations\n";
    for (const auto& v : r.invariant_violations) os << "  - " << v << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, path + ": cannot write file");
  out << content;
}

}  // namespace algscope
