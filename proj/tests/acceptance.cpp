// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single PASS/FAIL line. Exit code = number of failed checks.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "l2density/gns.hpp"
#include "l2density/json_io.hpp"
#include "l2density/l2space.hpp"
#include "l2density/matrix_kernel.hpp"
#include "l2density/measures.hpp"
#include "l2density/moments.hpp"
#include "l2density/polynomials.hpp"
#include "l2density/resolvents.hpp"
#include "l2density/rng.hpp"
#include "l2density/spectral_model.hpp"

using namespace l2density;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << " (" << name
            << "): " << detail << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. Monomial Gram vs block Hankel: the Gram of the monomial family up to
//    degree 5 equals the degree-5 block Hankel matrix entrywise to 1e-9,
//    over 500 random measures (K <= 6 atoms, N <= 4), in at most 10 s.
void criterion_gram_hankel() {
  const double bound = 1e-9;
  const auto t0 = Clock::now();
  SeededRng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 6, 4);
    const Matrix gram = gram_matrix(monomial_family_vector(m.dim(), 5), m);
    const Matrix hankel = block_hankel(matrix_moments(m, 10), 5);
    worst = std::max(worst, max_abs(Matrix(gram - hankel)));
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "max deviation " << worst << " (bound " << bound << "), " << elapsed
         << " s over 500 measures (limit 10 s)";
  report(1, "monomial Gram equals block Hankel", worst <= bound && elapsed <= 10.0,
         detail.str());
}

// ---------------------------------------------------------------------------
// 2. Positivity: every block Hankel (windows 0..5) and every Devinatz Gram
//    (caps up to (3,3)) built from a measure has smallest eigenvalue >= -1e-9,
//    over 500 matrix and 500 strip instances. Eigenvalues of principal
//    submatrices interlace, so the largest window bounds all smaller ones.
void criterion_positivity() {
  const double floor_bound = -1e-9;
  SeededRng rng(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 6, 4);
    const PsdResult p = psd_check(block_hankel(matrix_moments(m, 10), 5));
    worst = std::min(worst, p.min_eigenvalue);
  }
  for (int trial = 0; trial < 500; ++trial) {
    const StripAtomicMeasure s = testgen::random_strip_measure(rng, 6);
    const PsdResult p = psd_check(devinatz_gram(strip_moments(s, 6, 6), 3, 3));
    worst = std::min(worst, p.min_eigenvalue);
  }
  std::ostringstream detail;
  detail << "smallest eigenvalue " << worst << " (floor " << floor_bound
         << ") over 500 + 500 instances";
  report(2, "moment forms are positive semidefinite", worst >= floor_bound, detail.str());
}

// ---------------------------------------------------------------------------
// 3. Model unitary: for 200 generated commuting families (n <= 12, r <= 2,
//    l <= 2) with minimal cyclic families, all five report residuals
//    (unitarity both sides, both intertwining families, basis map) <= 1e-9,
//    in at most 30 s.
void criterion_model_suite() {
  const double bound = 1e-9;
  const auto t0 = Clock::now();
  SeededRng rng(1003);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.uniform_int(2, 12);
    const Index r = rng.uniform_int(0, 2);
    const Index l = (r == 0) ? rng.uniform_int(1, 2) : rng.uniform_int(0, 2);
    const Index mult = rng.uniform_int(1, std::min<Index>(2, n));
    const GeneratedSuSet gen = random_su_set(n, r, l, rng.next_u64(), mult);
    const ModelUnitaryReport rep = model_unitary(gen.set, gen.family);
    worst = std::max({worst, rep.unitary_left, rep.unitary_right, rep.basis_residual});
    for (double v : rep.s_residuals) worst = std::max(worst, v);
    for (double v : rep.u_residuals) worst = std::max(worst, v);
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "max residual " << worst << " (bound " << bound << "), " << elapsed
         << " s over 200 families (limit 30 s)";
  report(3, "model unitary intertwines generated families", worst <= bound && elapsed <= 30.0,
         detail.str());
}

// ---------------------------------------------------------------------------
// 4. Multiplicity oracle: spectral_multiplicity(d) agrees with a brute-force
//    cyclic-family search — some random Gaussian family of size d is cyclic,
//    no family of size d-1 ever is — on 200 instances with n <= 8.
void criterion_multiplicity_oracle() {
  SeededRng rng(1004);
  int disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.uniform_int(2, 8);
    const Index r = rng.uniform_int(0, 2);
    const Index l = (r == 0) ? rng.uniform_int(1, 2) : rng.uniform_int(0, 2);
    const Index mult = rng.uniform_int(1, std::min<Index>(3, n));
    const GeneratedSuSet gen = random_su_set(n, r, l, rng.next_u64(), mult);
    const int d = spectral_multiplicity(gen.set);

    bool some_d_family_cyclic = false;
    for (int attempt = 0; attempt < 5 && !some_d_family_cyclic; ++attempt) {
      CyclicFamily f;
      for (int i = 0; i < d; ++i) f.vectors.push_back(rng.gaussian_vector(n));
      some_d_family_cyclic = cyclicity_check(gen.set, f);
    }
    bool any_smaller_family_cyclic = false;
    for (int attempt = 0; attempt < 20 && d > 1 && !any_smaller_family_cyclic; ++attempt) {
      CyclicFamily f;
      for (int i = 0; i + 1 < d; ++i) f.vectors.push_back(rng.gaussian_vector(n));
      any_smaller_family_cyclic = cyclicity_check(gen.set, f);
    }
    if (!some_d_family_cyclic || any_smaller_family_cyclic || d != mult) ++disagreements;
  }
  std::ostringstream detail;
  detail << disagreements << " disagreements over 200 instances (required 0)";
  report(4, "multiplicity matches the cyclic-family oracle", disagreements == 0, detail.str());
}

// ---------------------------------------------------------------------------
// 5. Density/canonicality equivalence on the line: for 500 random matrix
//    measures, density_test reports dense AND the canonical verification over
//    lambda in {i, 2i, 1+i} holds with lambda-independence, first-resolvent
//    identity, and shift identity all <= 1e-8.
void criterion_canonical_line() {
  const double bound = 1e-8;
  const std::vector<Complex> lambdas{Complex{0, 1}, Complex{0, 2}, Complex{1, 1}};
  Tolerances tol;
  tol.residual_eps = bound;
  SeededRng rng(1005);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 6, 4);
    const DensityReport d = density_test(m);
    const Index window = std::max<Index>(1, d.saturation_degree);
    const CanonicalReport r = verify_canonical_hamburger(m, lambdas, window, tol);
    const double local = std::max({r.lambda_independence, r.resolvent_identity,
                                   r.shift_identity});
    worst = std::max(worst, local);
    if (!d.dense || !r.canonical || local > bound) ++failures;
  }
  std::ostringstream detail;
  detail << failures << " failures over 500 measures, worst identity residual " << worst
         << " (bound " << bound << ")";
  report(5, "dense and canonical on the line", failures == 0, detail.str());
}

// ---------------------------------------------------------------------------
// 6. Density/canonicality equivalence on the strip: as (5) for 500 strip
//    measures, plus moment conjugate symmetry to 1e-10, B0 isometry and A0B0
//    commutation to 1e-9, and the Cayley power identity over |k| <= 3,
//    |n| <= 3 to 1e-8.
void criterion_canonical_strip() {
  const double bound = 1e-8;
  const std::vector<Complex> lambdas{Complex{0, 1}, Complex{0, 2}, Complex{1, 1}};
  Tolerances tol;
  tol.residual_eps = bound;
  SeededRng rng(1006);
  int failures = 0;
  double worst_identity = 0.0;
  double worst_cayley = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const StripAtomicMeasure sigma = testgen::random_strip_measure(rng, 6);
    const DensityReport d = density_test(sigma);
    const Index cap = std::max<Index>(1, d.saturation_degree);
    const CanonicalReport r = verify_canonical_strip(sigma, lambdas, cap, cap, tol);
    const double local = std::max({r.lambda_independence, r.resolvent_identity,
                                   r.shift_identity});
    worst_identity = std::max(worst_identity, local);

    bool ok = d.dense && r.canonical && local <= bound;

    const StripMomentTable table = strip_moments(sigma, 2 * cap, 2 * cap);
    for (Index m = 0; m <= table.m_max() && ok; ++m)
      for (Index n = 0; n <= table.n_max(); ++n)
        if (std::abs(table.at(m, -n) - std::conj(table.at(m, n))) > 1e-10) {
          ok = false;
          break;
        }

    const StripGns gns = build_gns_strip(table, cap, cap, tol);
    if (gns.b0.isometry_residual > 1e-9 || gns.commutation_residual > 1e-9 ||
        gns.j0.conjugation_residual > 1e-9)
      ok = false;

    const CayleyReport cayley = cayley_power_check(sigma, 3, 3, tol);
    worst_cayley = std::max(worst_cayley, cayley.max_deviation);
    if (cayley.max_deviation > bound) ok = false;

    if (!ok) ++failures;
  }
  std::ostringstream detail;
  detail << failures << " failures over 500 measures, worst identity residual "
         << worst_identity << ", worst Cayley deviation " << worst_cayley << " (bound "
         << bound << ")";
  report(6, "dense and canonical on the strip", failures == 0, detail.str());
}

// ---------------------------------------------------------------------------
// 7. Product-measure factorization: for 100 commuting Hermitian/unitary pairs
//    with a cyclic vector, every extracted atom weight equals the product of
//    the separate spectral projections applied to the vector, to 1e-10.
void criterion_product_measure() {
  const double bound = 1e-10;
  SeededRng rng(1007);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.uniform_int(2, 8);
    const GeneratedSuSet gen = random_su_set(n, 1, 1, rng.next_u64(), 1);
    const Vector x = gen.family.vectors[0];
    const JointSpectralMeasure es = joint_spectral_decomposition(SUSet({gen.set.s_ops()[0]}, {}));
    const JointSpectralMeasure eu = joint_spectral_decomposition(SUSet({}, {gen.set.u_ops()[0]}));
    const JointAtomicMeasure m =
        extract_matrix_measure(joint_spectral_decomposition(gen.set), gen.family);
    for (const auto& atom : m.atoms()) {
      std::size_t best_s = 0;
      for (std::size_t p = 1; p < es.points.size(); ++p)
        if (std::abs(es.points[p].x(0) - atom.u.x(0)) <
            std::abs(es.points[best_s].x(0) - atom.u.x(0)))
          best_s = p;
      std::size_t best_u = 0;
      for (std::size_t p = 1; p < eu.points.size(); ++p)
        if (angular_distance(eu.points[p].phi(0), atom.u.phi(0)) <
            angular_distance(eu.points[best_u].phi(0), atom.u.phi(0)))
          best_u = p;
      const Matrix& ps = es.projections[best_s];
      const Matrix& pu = eu.projections[best_u];
      worst = std::max(worst, std::abs(atom.w(0, 0) - inner(Vector(ps * pu * x), x)));
    }
  }
  std::ostringstream detail;
  detail << "max weight deviation " << worst << " (bound " << bound
         << ") over 100 pairs";
  report(7, "extraction factors through product spectral measures", worst <= bound,
         detail.str());
}

// ---------------------------------------------------------------------------
// 8. CLI contract: JSON round trip, byte-identical reruns, and the documented
//    exit codes on three malformed fixtures (syntax error -> 2, negative
//    weight -> 3, perturbed unitary -> 4).
struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(L2DENSITY_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void criterion_cli_contract() {
  const fs::path dir = fs::temp_directory_path() / "l2density_acceptance";
  fs::create_directories(dir);
  std::vector<std::string> problems;

  // Round trip: a generated instance re-verifies from its serialized form.
  const fs::path inst = dir / "instance.json";
  CliResult r = run_cli("model-verify --seed 2024 --dim 6 --order-r 1 --order-l 1 "
                        "--emit-instance " + inst.string());
  if (r.exit_code != 0) problems.push_back("generation exited " + std::to_string(r.exit_code));
  r = run_cli("model-verify --input " + inst.string());
  if (r.exit_code != 0)
    problems.push_back("round trip exited " + std::to_string(r.exit_code));

  // Determinism: byte-identical reports on reruns.
  std::ofstream(dir / "measure.json")
      << R"({"kind":"strip_atomic","atoms":[{"x":0.4,"phi":-0.9,"w":1.0},)"
      << R"({"x":-1.1,"phi":2.2,"w":0.6}]})";
  const CliResult first = run_cli("canonical --input " + (dir / "measure.json").string());
  const CliResult second = run_cli("canonical --input " + (dir / "measure.json").string());
  if (first.exit_code != 0)
    problems.push_back("canonical exited " + std::to_string(first.exit_code));
  if (first.output != second.output) problems.push_back("reports differ between reruns");

  // Documented exit codes on malformed fixtures.
  std::ofstream(dir / "syntax.json") << "{ this is not json";
  r = run_cli("moments --input " + (dir / "syntax.json").string());
  if (r.exit_code != 2)
    problems.push_back("syntax fixture exited " + std::to_string(r.exit_code) + " (want 2)");

  std::ofstream(dir / "negative.json")
      << R"({"kind":"matrix_atomic","N":1,"atoms":[{"t":0.0,"W":[[{"re":-1,"im":0}]]}]})";
  r = run_cli("moments --input " + (dir / "negative.json").string());
  if (r.exit_code != 3)
    problems.push_back("negative-weight fixture exited " + std::to_string(r.exit_code) +
                       " (want 3)");

  Json fam = load_json_file(inst.string());
  fam["U"][0][0][0]["re"] = fam["U"][0][0][0]["re"].get<double>() + 1e-3;
  write_json_output((dir / "broken.json").string(), fam);
  r = run_cli("model-verify --input " + (dir / "broken.json").string());
  if (r.exit_code != 4)
    problems.push_back("perturbed-unitary fixture exited " + std::to_string(r.exit_code) +
                       " (want 4)");

  std::ostringstream detail;
  if (problems.empty()) {
    detail << "round trip, determinism, and exit codes 2/3/4 all observed";
  } else {
    for (std::size_t i = 0; i < problems.size(); ++i)
      detail << (i ? "; " : "") << problems[i];
  }
  report(8, "CLI round trip, determinism, exit codes", problems.empty(), detail.str());
}

}  // namespace

int main() {
  criterion_gram_hankel();
  criterion_positivity();
  criterion_model_suite();
  criterion_multiplicity_oracle();
  criterion_canonical_line();
  criterion_canonical_strip();
  criterion_product_measure();
  criterion_cli_contract();
  if (g_failures == 0) {
    std::cout << "all 8 acceptance criteria passed" << std::endl;
  } else {
    std::cout << g_failures << " acceptance criteria failed" << std::endl;
  }
  return g_failures;
}
