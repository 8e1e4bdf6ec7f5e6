// Command-line front end: loads measures or commuting operator families from
// JSON, runs the verification pipelines, and emits machine-readable reports.
//
// Exit codes: 0 success; 2 malformed input or configuration; 3 invalid
// measure; 4 invalid or non-commuting operator family; 5 non-cyclic family;
// 10 verification ran and the property failed (not dense / not canonical /
// residuals over tolerance); 1 unexpected internal error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "l2density/json_io.hpp"
#include "l2density/l2space.hpp"
#include "l2density/measures.hpp"
#include "l2density/moments.hpp"
#include "l2density/resolvents.hpp"
#include "l2density/spectral_model.hpp"

namespace {

using namespace l2density;

struct Opts {
  std::string input;
  std::string output;
  std::string batch;
  std::string emit_instance;
  double tol_psd = 1e-10;
  double tol_rank = 1e-10;
  double tol_res = -1.0;  // sentinel: command-specific default
  double tol_cluster = 1e-8;
  long long window = -1;  // -1 = automatic (saturating)
  long long mmax = -1;
  long long nmax = -1;
  std::vector<std::string> lambda_args;
  std::uint64_t seed = 0;
  bool seed_given = false;
  long long gen_dim = 8;
  long long gen_r = 1;
  long long gen_l = 1;
  long long gen_mult = 1;
};

Tolerances make_tolerances(const Opts& o, double tol_res_default) {
  Tolerances tol;
  tol.psd_eps = o.tol_psd;
  tol.rank_eps = o.tol_rank;
  tol.residual_eps = o.tol_res >= 0 ? o.tol_res : tol_res_default;
  tol.cluster_eps = o.tol_cluster;
  if (!tol.valid()) throw ParseError("tolerances must be nonnegative");
  return tol;
}

std::vector<Complex> lambda_set(const Opts& o) {
  std::vector<Complex> out;
  if (o.lambda_args.empty()) {
    out = {Complex{0.0, 1.0}, Complex{0.0, 2.0}, Complex{1.0, 1.0}};
  } else {
    for (const std::string& text : o.lambda_args) out.push_back(parse_complex_literal(text));
  }
  for (const Complex lambda : out)
    if (!(lambda.imag() > 0.0))
      throw ParseError("lambda must have positive imaginary part, got " +
                       std::to_string(lambda.real()) + (lambda.imag() < 0 ? "-" : "+") +
                       std::to_string(std::abs(lambda.imag())) + "i");
  return out;
}

// Per-input outcome: the report (or error note) plus the process exit code.
struct Outcome {
  Json report;
  int exit_code = 0;
};

// Maps the in-flight exception to the documented exit vocabulary. In operator
// -family context structural defects (non-Hermitian, non-unitary, shape) are
// family failures (4), not measure failures (3).
int classify_current_exception(bool family_context, std::string* message) {
  try {
    throw;
  } catch (const ParseError& e) {
    if (message) *message = e.what();
    return 2;
  } catch (const WindowError& e) {
    if (message) *message = e.what();
    return 2;
  } catch (const CommutationError& e) {
    if (message) *message = e.what();
    return 4;
  } catch (const ModelError& e) {
    if (message) *message = e.what();
    return 5;
  } catch (const Error& e) {
    if (message) *message = e.what();
    return family_context ? 4 : 3;
  } catch (const std::exception& e) {
    if (message) *message = e.what();
    return 1;
  }
}

Outcome run_moments(const Json& in, const Opts& o, const Tolerances& tol) {
  const std::string kind = json_kind(in);
  if (kind == "matrix_atomic") {
    const MatrixAtomicMeasure m = matrix_measure_from_json(in, tol);
    const Index window = o.window >= 0 ? static_cast<Index>(o.window) : 4;
    return Outcome{moments_to_json(matrix_moments(m, window, tol)), 0};
  }
  if (kind == "strip_atomic") {
    const StripAtomicMeasure s = strip_measure_from_json(in, tol);
    const Index m_cap = o.mmax >= 0 ? static_cast<Index>(o.mmax) : 2;
    const Index n_cap = o.nmax >= 0 ? static_cast<Index>(o.nmax) : 2;
    return Outcome{moments_to_json(strip_moments(s, m_cap, n_cap, tol)), 0};
  }
  throw ParseError("moments: unsupported input kind \"" + kind + "\"");
}

Outcome run_density(const Json& in, const Opts&, const Tolerances& tol) {
  const std::string kind = json_kind(in);
  DensityReport report;
  if (kind == "matrix_atomic") {
    report = density_test(matrix_measure_from_json(in, tol), tol);
  } else if (kind == "strip_atomic") {
    report = density_test(strip_measure_from_json(in, tol), tol);
  } else {
    throw ParseError("density: unsupported input kind \"" + kind + "\"");
  }
  return Outcome{report_to_json(report), report.dense ? 0 : 10};
}

Outcome run_canonical(const Json& in, const Opts& o, const Tolerances& tol) {
  const std::vector<Complex> lambdas = lambda_set(o);
  const std::string kind = json_kind(in);
  if (kind == "matrix_atomic") {
    const MatrixAtomicMeasure m = matrix_measure_from_json(in, tol);
    Index window = static_cast<Index>(o.window);
    if (window < 0) window = std::max<Index>(1, density_test(m, tol).saturation_degree);
    const CanonicalReport report = verify_canonical_hamburger(m, lambdas, window, tol);
    Json j = report_to_json(report);
    j["window"] = window;
    return Outcome{std::move(j), report.canonical ? 0 : 10};
  }
  if (kind == "strip_atomic") {
    const StripAtomicMeasure s = strip_measure_from_json(in, tol);
    Index m_cap = static_cast<Index>(o.mmax);
    Index n_cap = static_cast<Index>(o.nmax);
    if (m_cap < 0 || n_cap < 0) {
      const Index sat = std::max<Index>(1, density_test(s, tol).saturation_degree);
      if (m_cap < 0) m_cap = sat;
      if (n_cap < 0) n_cap = sat;
    }
    const CanonicalReport report = verify_canonical_strip(s, lambdas, m_cap, n_cap, tol);
    const CayleyReport cayley = cayley_power_check(s, 3, 3, tol);
    Json j = report_to_json(report);
    j["window"] = Json{{"m_max", m_cap}, {"n_max", n_cap}};
    j["cayley"] = report_to_json(cayley);
    const bool ok = report.canonical && cayley.max_deviation <= tol.residual_eps &&
                    cayley.inverse_residual <= tol.residual_eps;
    return Outcome{std::move(j), ok ? 0 : 10};
  }
  throw ParseError("canonical: unsupported input kind \"" + kind + "\"");
}

Outcome run_model_verify_on(const SUSet& set, const std::vector<Vector>& family,
                            const Tolerances& tol) {
  const ModelUnitaryReport report = model_unitary(set, CyclicFamily{family}, tol);
  return Outcome{report_to_json(report, tol),
                 report.max_residual() <= tol.residual_eps ? 0 : 10};
}

Outcome run_model_verify(const Json& in, const Opts&, const Tolerances& tol) {
  const SuSetInput input = su_set_from_json(in, tol);
  if (input.family.empty())
    throw ParseError("model-verify: input must carry a nonempty \"family\"");
  return run_model_verify_on(input.set, input.family, tol);
}

// Runs `one` on every *.json under the batch directory in sorted order,
// collecting per-file outcomes; the process exit is the first failure.
template <typename RunOne>
Outcome run_batch(const std::string& dir, const RunOne& one, bool family_context) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw ParseError("cannot open batch directory: " + dir);
    for (const fs::directory_entry& entry : it) {
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw ParseError("batch directory holds no .json files: " + dir);

  Json entries = Json::array();
  int exit_code = 0;
  for (const std::string& path : paths) {
    Json entry{{"file", fs::path(path).filename().string()}};
    try {
      Outcome out = one(load_json_file(path));
      entry["exit"] = out.exit_code;
      entry["report"] = std::move(out.report);
      if (exit_code == 0) exit_code = out.exit_code;
    } catch (...) {
      std::string message;
      const int code = classify_current_exception(family_context, &message);
      entry["exit"] = code;
      entry["error"] = message;
      if (exit_code == 0) exit_code = code;
    }
    entries.push_back(std::move(entry));
  }
  return Outcome{Json{{"kind", "batch_report"}, {"entries", std::move(entries)}}, exit_code};
}

void add_io_options(CLI::App* cmd, Opts& o) {
  cmd->add_option("--input", o.input, "input JSON file (\"-\" = stdin)");
  cmd->add_option("--output", o.output, "output path (default stdout)");
  cmd->add_option("--batch", o.batch, "directory of *.json inputs, processed in sorted order");
}

void add_tolerance_options(CLI::App* cmd, Opts& o, const char* res_default) {
  cmd->add_option("--tol-psd", o.tol_psd, "positivity eigenvalue floor (default 1e-10)");
  cmd->add_option("--tol-rank", o.tol_rank, "relative singular value cutoff (default 1e-10)");
  cmd->add_option("--tol-res", o.tol_res,
                  std::string("residual tolerance (default ") + res_default + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "verification toolkit for atomic moment problems: moment tables, polynomial\n"
      "density, canonicality of resolvent data, and spectral models of commuting\n"
      "operator families"};
  app.require_subcommand(1);
  Opts o;

  CLI::App* moments = app.add_subcommand(
      "moments", "power / power-trigonometric moment table of an atomic measure");
  add_io_options(moments, o);
  add_tolerance_options(moments, o, "1e-9");
  moments->add_option("--window", o.window, "largest moment index for line measures (default 4)");
  moments->add_option("--mmax", o.mmax, "largest power index for strip measures (default 2)");
  moments->add_option("--nmax", o.nmax, "largest angular index for strip measures (default 2)");

  CLI::App* density = app.add_subcommand(
      "density", "test whether polynomials span the L2 space of an atomic measure");
  add_io_options(density, o);
  add_tolerance_options(density, o, "1e-9");

  CLI::App* canonical = app.add_subcommand(
      "canonical",
      "verify the canonicality identities of the resolvent data of an atomic measure");
  add_io_options(canonical, o);
  add_tolerance_options(canonical, o, "1e-8");
  canonical->add_option("--window", o.window,
                        "moment-space degree window for line measures (default: saturating)");
  canonical->add_option("--mmax", o.mmax,
                        "power window for strip measures (default: saturating)");
  canonical->add_option("--nmax", o.nmax,
                        "angular window for strip measures (default: saturating)");
  canonical->add_option("--lambda", o.lambda_args,
                        "spectral parameter, e.g. \"i\", \"2i\", \"1+i\" (repeatable; "
                        "default i, 2i, 1+i)");

  CLI::App* model = app.add_subcommand(
      "model-verify",
      "verify the multiplication model of a commuting operator family with a cyclic family");
  add_io_options(model, o);
  add_tolerance_options(model, o, "1e-9");
  CLI::Option* seed_opt =
      model->add_option("--seed", o.seed, "generate the instance from this seed instead");
  model->add_option("--dim", o.gen_dim, "generated instance dimension (default 8)");
  model->add_option("--order-r", o.gen_r, "generated Hermitian operator count (default 1)");
  model->add_option("--order-l", o.gen_l, "generated unitary operator count (default 1)");
  model->add_option("--multiplicity", o.gen_mult, "generated spectral multiplicity (default 1)");
  model->add_option("--emit-instance", o.emit_instance,
                    "also write the generated instance JSON to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  o.seed_given = seed_opt->count() > 0;

  const bool family_context = model->parsed();
  std::string message;
  try {
    Outcome out;
    if (moments->parsed() || density->parsed() || canonical->parsed()) {
      const double res_default = canonical->parsed() ? 1e-8 : 1e-9;
      const Tolerances tol = make_tolerances(o, res_default);
      const auto one = [&](const Json& in) {
        if (moments->parsed()) return run_moments(in, o, tol);
        if (density->parsed()) return run_density(in, o, tol);
        return run_canonical(in, o, tol);
      };
      if (!o.batch.empty()) {
        if (!o.input.empty())
          throw ParseError("--input and --batch are mutually exclusive");
        out = run_batch(o.batch, one, false);
      } else if (!o.input.empty()) {
        out = one(load_json_file(o.input));
      } else {
        throw ParseError("an --input file or --batch directory is required");
      }
    } else {
      const Tolerances tol = make_tolerances(o, 1e-9);
      if (!o.batch.empty()) {
        if (!o.input.empty() || o.seed_given)
          throw ParseError("--batch excludes --input and --seed");
        out = run_batch(
            o.batch, [&](const Json& in) { return run_model_verify(in, o, tol); }, true);
      } else if (o.seed_given) {
        if (!o.input.empty()) throw ParseError("--input and --seed are mutually exclusive");
        if (o.gen_dim < 1 || o.gen_r < 0 || o.gen_l < 0 || o.gen_r + o.gen_l < 1 ||
            o.gen_mult < 1)
          throw ParseError("generator orders must satisfy dim >= 1, r + l >= 1, "
                           "multiplicity >= 1");
        const GeneratedSuSet gen =
            random_su_set(static_cast<Index>(o.gen_dim), static_cast<Index>(o.gen_r),
                          static_cast<Index>(o.gen_l), o.seed,
                          static_cast<Index>(o.gen_mult));
        if (!o.emit_instance.empty())
          write_json_output(o.emit_instance, su_set_to_json(gen.set, gen.family.vectors));
        out = run_model_verify_on(gen.set, gen.family.vectors, tol);
      } else if (!o.input.empty()) {
        out = run_model_verify(load_json_file(o.input), o, tol);
      } else {
        throw ParseError("an --input file, --batch directory, or --seed is required");
      }
    }
    write_json_output(o.output, out.report);
    return out.exit_code;
  } catch (...) {
    const int code = classify_current_exception(family_context, &message);
    std::cerr << "error: " << message << "\n";
    return code;
  }
}
