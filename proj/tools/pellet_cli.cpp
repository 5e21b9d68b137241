// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: annulus separation bounds for scalar and matrix
// polynomials, with optional independent verification and plot-ready curve
// samples.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pellet/annulus.hpp"
#include "pellet/detection.hpp"
#include "pellet/errors.hpp"
#include "pellet/io.hpp"
#include "pellet/matrix_pellet.hpp"
#include "pellet/newton_polygon.hpp"
#include "pellet/polynomial.hpp"
#include "pellet/roots.hpp"

namespace {

using nlohmann::json;
using namespace pellet;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  int k = -1;
  bool all_k = false;
  std::string norm = "one";
  double tol = kDefaultTol;
  int max_iter = 100;
  bool emit_json = false;
  bool verify = false;
  bool trace = false;
  std::string out;
  double xbar = 0.0;
  std::string grid;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

json parse_json(const std::string& text, const std::string& path) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw InputError("'" + path + "' is not valid JSON");
  }
  return j;
}

NormKind norm_kind(const std::string& name) {
  if (name == "one") return NormKind::one;
  if (name == "inf") return NormKind::infinity;
  if (name == "two") return NormKind::two;
  throw InputError("unknown norm '" + name + "' (expected one|inf|two)");
}

const char* existence_name(Existence e) {
  switch (e) {
    case Existence::yes: return "yes";
    case Existence::no: return "no";
    case Existence::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

json detection_json(const Detection& det) {
  return json{{"exists", existence_name(det.exists)},
              {"x_star", det.x_star},
              {"phi_at_x_star", det.phi_at_x_star},
              {"threshold", det.threshold},
              {"margin", det.margin},
              {"chi_newton_steps", det.chi_newton_steps}};
}

json annulus_json(const AnnulusResult& res, bool trace) {
  json j{{"r", res.r},
         {"R", res.R},
         {"zero_count", res.zero_count},
         {"converged", res.converged},
         {"outer_iterations_r", res.inner_counts_r.size()},
         {"outer_iterations_R", res.inner_counts_R.size()},
         {"inner_counts_r", res.inner_counts_r},
         {"inner_counts_R", res.inner_counts_R}};
  if (trace) {
    j["iterates_r"] = res.iterates_r;
    j["iterates_R"] = res.iterates_R;
  }
  return j;
}

// Root counts for an annulus claim: in or on the inner circle, strictly
// inside the open ring, and on or beyond the outer circle.
struct DiskCounts {
  int inside = 0;
  int in_annulus = 0;
  int outside = 0;
};

DiskCounts disk_counts(const RootSet& roots, double r, double R) {
  // Wide enough to absorb the oracle's accuracy limit on boundary-exact
  // multiple roots (~sqrt(eps) relative), far below any real annulus width.
  constexpr double kSlack = 1e-6;
  DiskCounts c;
  c.inside = count_in_disk(roots, r, kSlack);
  for (const Complex& z : roots.roots) {
    const double mag = std::abs(z);
    if (mag > r * (1.0 + kSlack) && mag < R * (1.0 - kSlack)) ++c.in_annulus;
    if (mag >= R * (1.0 - kSlack)) ++c.outside;
  }
  return c;
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) {
    throw InputError("cannot write '" + opt.out + "'");
  }
  out << text;
}

// ---------------------------------------------------------------------------
// analyze

int run_analyze(const Options& opt) {
  const std::string text = read_file(opt.input);
  const Polynomial p = polynomial_from_json(parse_json(text, opt.input));
  const auto start = std::chrono::steady_clock::now();

  std::vector<KAnalysis> results;
  json candidates = json::array();
  if (opt.all_k) {
    for (int k : candidate_ks(p).candidates) candidates.push_back(k);
    results = analyze_all(p, opt.tol);
  } else {
    KAnalysis entry;
    entry.k = opt.k;
    const PelletInstance inst = pellet_instance(p, opt.k);
    try {
      entry.detection = detect(inst, opt.tol);
      if (entry.detection->exists == Existence::yes) {
        entry.annulus =
            pellet_annulus(inst, entry.detection->x_star, opt.tol, opt.max_iter);
      }
    } catch (const ConvergenceError& e) {
      entry.error = e.what();
    }
    results.push_back(std::move(entry));
  }

  std::optional<RootSet> roots;
  if (opt.verify) {
    roots = all_roots(p);
  }

  bool numerical_failure = false;
  json entries = json::array();
  std::ostringstream human;
  human << "analyze " << opt.input << " (degree " << p.degree() << "), tol " << opt.tol
        << "\n";
  if (opt.all_k) {
    human << "candidates:";
    if (candidates.empty()) human << " none";
    for (const auto& c : candidates) human << " " << c;
    human << "\n";
  }

  for (const KAnalysis& entry : results) {
    json je{{"k", entry.k}};
    human << "k = " << entry.k << ": ";
    if (!entry.error.empty()) {
      je["error"] = entry.error;
      human << "failed (" << entry.error << ")\n";
      numerical_failure = true;
      entries.push_back(je);
      continue;
    }
    const Detection& det = *entry.detection;
    je["detection"] = detection_json(det);
    if (det.exists != Existence::yes) {
      human << (det.exists == Existence::no ? "no separation" : "indeterminate")
            << " (margin " << det.margin << ")\n";
      entries.push_back(je);
      continue;
    }
    const AnnulusResult& res = *entry.annulus;
    je["annulus"] = annulus_json(res, opt.trace);
    if (!res.converged) numerical_failure = true;
    human << "separation certified\n"
          << "  x* = " << det.x_star << " (" << det.chi_newton_steps
          << " Newton steps), threshold = " << det.threshold << ", margin = "
          << det.margin << "\n"
          << "  r = " << res.r << " (" << res.inner_counts_r.size() << " outer fits)\n"
          << "  R = " << res.R << " (" << res.inner_counts_R.size() << " outer fits)\n"
          << "  claim: exactly " << res.zero_count
          << " zeros with |z| <= r, none in r < |z| < R\n";
    if (roots) {
      const PelletInstance inst = pellet_instance(p, entry.k);
      const auto [r_ref, R_ref] = reference_radii(inst, det.x_star, opt.tol);
      const DiskCounts counts = disk_counts(*roots, res.r, res.R);
      const bool radii_ok = std::abs(res.r - r_ref) <= 1e-9 * r_ref &&
                            std::abs(res.R - R_ref) <= 1e-9 * R_ref;
      const bool counts_ok =
          counts.inside == res.zero_count && counts.in_annulus == 0;
      je["verification"] = json{{"r_reference", r_ref},
                                {"R_reference", R_ref},
                                {"roots_inside", counts.inside},
                                {"roots_in_annulus", counts.in_annulus},
                                {"roots_outside", counts.outside},
                                {"consistent", radii_ok && counts_ok}};
      if (!(radii_ok && counts_ok)) numerical_failure = true;
      human << "  verified: " << counts.inside << " inside, " << counts.in_annulus
            << " in annulus, " << counts.outside << " outside"
            << (radii_ok && counts_ok ? "" : "  [MISMATCH]") << "\n";
    }
    entries.push_back(je);
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report{{"tool", "pellet"},
              {"version", kVersion},
              {"command", "analyze"},
              {"input",
               {{"path", opt.input}, {"digest", fnv1a64_hex(text)}, {"degree", p.degree()}}},
              {"tolerance", opt.tol},
              {"mode", opt.all_k ? "all-k" : "single-k"},
              {"elapsed_seconds", elapsed},
              {"results", entries}};
  if (opt.all_k) report["candidates"] = candidates;
  if (roots) {
    report["oracle"] = json{{"converged", roots->converged},
                            {"residual", roots->residual},
                            {"sweeps", roots->sweeps}};
    if (!roots->converged) numerical_failure = true;
  }

  write_output(opt, opt.emit_json ? report.dump(2) + "\n" : human.str());
  return numerical_failure ? kExitNumerical : kExitOk;
}

// ---------------------------------------------------------------------------
// matrix

int run_matrix(const Options& opt) {
  const std::string text = read_file(opt.input);
  const MatrixPolynomial P = matrix_polynomial_from_json(parse_json(text, opt.input));
  const NormKind kind = norm_kind(opt.norm);
  const auto start = std::chrono::steady_clock::now();

  std::vector<int> ks;
  json candidates = json::array();
  if (opt.all_k) {
    // Screen with the norm coefficients; the inverse-norm weight at k only
    // lowers eta_k, so the polygon stays a sound candidate filter.
    std::vector<Complex> norm_coeffs;
    norm_coeffs.reserve(P.matrices.size());
    for (const Matrix& a : P.matrices) {
      norm_coeffs.emplace_back(induced_norm(a, kind), 0.0);
    }
    for (int k : candidate_ks(make_polynomial(norm_coeffs)).candidates) {
      ks.push_back(k);
      candidates.push_back(k);
    }
  } else {
    if (opt.k < 1 || opt.k > P.degree() - 1) {
      throw InputError("--k must satisfy 1 <= k <= degree-1");
    }
    ks.push_back(opt.k);
  }

  std::optional<RootSet> roots;
  std::optional<Polynomial> detP;
  if (opt.verify) {
    detP = determinant_polynomial(P);
    roots = all_roots(*detP);
  }

  bool numerical_failure = false;
  json entries = json::array();
  std::ostringstream human;
  human << "matrix " << opt.input << " (m = " << P.m << ", degree " << P.degree()
        << "), norm " << opt.norm << ", tol " << opt.tol << "\n";
  if (opt.all_k) {
    human << "candidates:";
    if (candidates.empty()) human << " none";
    for (const auto& c : candidates) human << " " << c;
    human << "\n";
  }

  for (int k : ks) {
    json je{{"k", k}};
    human << "k = " << k << ": ";
    try {
      const Detection det = matrix_detect(P, k, kind, opt.tol);
      je["detection"] = detection_json(det);
      if (det.exists != Existence::yes) {
        human << (det.exists == Existence::no ? "no separation" : "indeterminate")
              << " (margin " << det.margin << ")\n";
        entries.push_back(je);
        continue;
      }
      const AnnulusResult res = matrix_annulus(P, k, kind, opt.tol);
      je["annulus"] = annulus_json(res, opt.trace);
      if (!res.converged) numerical_failure = true;
      human << "separation certified\n"
            << "  r = " << res.r << ", R = " << res.R << "\n"
            << "  claim: exactly " << res.zero_count
            << " eigenvalues with |z| <= r, none in r < |z| < R\n";
      if (roots) {
        const DiskCounts counts = disk_counts(*roots, res.r, res.R);
        const bool counts_ok =
            counts.inside == res.zero_count && counts.in_annulus == 0;
        je["verification"] = json{{"det_degree", detP->degree()},
                                  {"roots_inside", counts.inside},
                                  {"roots_in_annulus", counts.in_annulus},
                                  {"roots_outside", counts.outside},
                                  {"consistent", counts_ok}};
        if (!counts_ok) numerical_failure = true;
        human << "  verified: " << counts.inside << " inside, " << counts.in_annulus
              << " in annulus" << (counts_ok ? "" : "  [MISMATCH]") << "\n";
      }
    } catch (const SingularMatrixError& e) {
      // Invertibility of A_k is a hypothesis; a singular A_k just rules this
      // index out.
      je["error"] = e.what();
      je["disqualified"] = true;
      human << "disqualified (A_k singular)\n";
    } catch (const ConvergenceError& e) {
      je["error"] = e.what();
      numerical_failure = true;
      human << "failed (" << e.what() << ")\n";
    }
    entries.push_back(je);
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report{{"tool", "pellet"},
              {"version", kVersion},
              {"command", "matrix"},
              {"input",
               {{"path", opt.input},
                {"digest", fnv1a64_hex(text)},
                {"degree", P.degree()},
                {"m", P.m}}},
              {"norm", opt.norm},
              {"tolerance", opt.tol},
              {"mode", opt.all_k ? "all-k" : "single-k"},
              {"elapsed_seconds", elapsed},
              {"results", entries}};
  if (opt.all_k) report["candidates"] = candidates;
  if (roots) {
    report["oracle"] = json{{"converged", roots->converged},
                            {"residual", roots->residual},
                            {"sweeps", roots->sweeps}};
    if (!roots->converged) numerical_failure = true;
  }

  write_output(opt, opt.emit_json ? report.dump(2) + "\n" : human.str());
  return numerical_failure ? kExitNumerical : kExitOk;
}

// ---------------------------------------------------------------------------
// curves

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 201;
};

Grid parse_grid(const std::string& spec) {
  Grid g;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(spec);
  if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.steps) || colon1 != ':' ||
      colon2 != ':' || !(in >> std::ws).eof()) {
    throw InputError("--grid expects a:b:steps");
  }
  if (!(g.lo >= 0.0) || !(g.hi > g.lo) || g.steps < 2) {
    throw InputError("--grid needs 0 <= a < b and steps >= 2");
  }
  return g;
}

int run_curves(const Options& opt) {
  const std::string text = read_file(opt.input);
  const Polynomial p = polynomial_from_json(parse_json(text, opt.input));
  const PelletInstance inst = pellet_instance(p, opt.k);
  if (!(opt.xbar > 0.0) || eval_phi(inst, opt.xbar).value > 0.0) {
    throw InputError("--xbar must satisfy phi(xbar) <= 0");
  }
  const Trinomial tri = fit_trinomial(inst, opt.xbar);
  const Surrogate sur = fit_surrogate(tri, opt.xbar);
  const double pole = surrogate_pole(sur);

  Grid grid;
  if (!opt.grid.empty()) {
    grid = parse_grid(opt.grid);
  } else {
    grid.lo = 0.0;
    grid.hi = 1.05 * pole;  // default range crosses the pole on purpose
    grid.steps = 201;
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "x,phi,f,h\n";
  for (int i = 0; i < grid.steps; ++i) {
    const double x = grid.lo + (grid.hi - grid.lo) * i / (grid.steps - 1);
    csv << x << ',' << eval_phi(inst, x).value << ',' << eval_trinomial(tri, x) << ',';
    // h is only a majorant below its pole; mark the far side explicitly.
    if (x < pole) {
      csv << eval_surrogate(sur, x);
    } else {
      csv << "nan";
    }
    csv << '\n';
  }
  write_output(opt, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-separation annulus bounds for scalar and matrix polynomials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options a_opt, m_opt, c_opt;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Detect and compute the separation radii of a polynomial");
  analyze->add_option("input", a_opt.input, "polynomial JSON file")->required();
  auto* a_k = analyze->add_option("--k", a_opt.k, "split index to analyze");
  auto* a_all = analyze->add_flag("--all-k", a_opt.all_k, "analyze every candidate index");
  a_k->excludes(a_all);
  analyze->add_option("--tol", a_opt.tol, "relative tolerance")->check(CLI::PositiveNumber);
  analyze->add_option("--max-iter", a_opt.max_iter, "outer iteration cap")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--json", a_opt.emit_json, "emit a JSON report");
  analyze->add_flag("--verify", a_opt.verify, "verify the claim with the root oracle");
  analyze->add_flag("--trace", a_opt.trace, "include iterate sequences in the report");
  analyze->add_option("--out", a_opt.out, "write the report to a file");

  CLI::App* matrix = app.add_subcommand(
      "matrix", "Eigenvalue annulus bounds for a matrix polynomial");
  matrix->add_option("input", m_opt.input, "matrix polynomial JSON file")->required();
  matrix->add_option("--norm", m_opt.norm, "induced norm: one|inf|two")
      ->default_val("one");
  auto* m_k = matrix->add_option("--k", m_opt.k, "split index to analyze");
  auto* m_all = matrix->add_flag("--all-k", m_opt.all_k, "analyze every candidate index");
  m_k->excludes(m_all);
  matrix->add_option("--tol", m_opt.tol, "relative tolerance")->check(CLI::PositiveNumber);
  matrix->add_option("--max-iter", m_opt.max_iter, "outer iteration cap")
      ->check(CLI::PositiveNumber);
  matrix->add_flag("--json", m_opt.emit_json, "emit a JSON report");
  matrix->add_flag("--verify", m_opt.verify, "verify against det P(z) roots");
  matrix->add_flag("--trace", m_opt.trace, "include iterate sequences in the report");
  matrix->add_option("--out", m_opt.out, "write the report to a file");

  CLI::App* curves = app.add_subcommand(
      "curves", "Sample phi, its trinomial majorant f and surrogate h as CSV");
  curves->add_option("input", c_opt.input, "polynomial JSON file")->required();
  curves->add_option("--k", c_opt.k, "split index")->required();
  curves->add_option("--xbar", c_opt.xbar, "fit point (phi(xbar) <= 0)")->required();
  curves->add_option("--grid", c_opt.grid, "sample grid a:b:steps");
  curves->add_option("--out", c_opt.out, "write the CSV to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) {
      if (!a_opt.all_k && a_opt.k < 0) {
        throw InputError("analyze needs --k <int> or --all-k");
      }
      return run_analyze(a_opt);
    }
    if (matrix->parsed()) {
      if (!m_opt.all_k && m_opt.k < 0) {
        throw InputError("matrix needs --k <int> or --all-k");
      }
      return run_matrix(m_opt);
    }
    return run_curves(c_opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
