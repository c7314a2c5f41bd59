#include "dilation/cli.hpp"

#include "dilation/admit.hpp"
#include "dilation/error.hpp"
#include "dilation/io.hpp"
#include "dilation/matkit.hpp"
#include "dilation/orbit.hpp"
#include "dilation/verify.hpp"
#include "dilation/wavelet.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace dilation::cli {

namespace {

struct RunConfig
{
  std::string matrix_path;
  std::string wavelet_path;
  std::string similarity_path;
  std::optional<double> tol;
  int samples = 100;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string format = "json";
  std::string kind;
  int threads = 1;
  int points = 21;
  double box = 3.0;
};

constexpr double kDefaultQuadratureTol = 1e-6;

class Emitter
{
public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void json(const Json& j) { write([&](std::ostream& os) { os << std::setw(2) << j << '\n'; }); }

  template <typename F>
  void csv(F&& f)
  {
    write(std::forward<F>(f));
  }

  bool wants_csv() const { return cfg_.format == "csv"; }

private:
  template <typename F>
  void write(F&& f)
  {
    if (cfg_.out_path.empty()) {
      f(out_);
      return;
    }
    std::ofstream file(cfg_.out_path);
    if (!file) throw InvalidInput("cannot write " + cfg_.out_path);
    f(file);
  }

  const RunConfig& cfg_;
  std::ostream& out_;
};

Matrix load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

int exit_for(Status s)
{
  switch (s) {
  case Status::Admissible: return kOk;
  case Status::NotAdmissible: return kNotAdmissible;
  case Status::Unknown: return kUnknown;
  }
  return kUnknown;
}

int run_check(const RunConfig& cfg, std::ostream& out)
{
  const Matrix x = load_matrix(cfg.matrix_path);
  const Verdict v = decide(x, cfg.tol.value_or(kDefaultDecisionTolerance));
  Emitter(cfg, out).json(verdict_to_json(v));
  return exit_for(v.status);
}

int run_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  const Matrix x = load_matrix(cfg.matrix_path);
  const double tol = cfg.tol.value_or(kDefaultDecisionTolerance);
  const Verdict v = decide(x, tol);
  if (v.status != Status::Admissible) {
    err << "construct: refused, generator is " << to_string(v.status) << " (" << v.reference << ")\n";
    Emitter(cfg, out).json(verdict_to_json(v));
    return exit_for(v.status);
  }

  auto emit = [&](const WaveletSpec& w) {
    Emitter(cfg, out).json(wavelet_to_json(w));
    return kOk;
  };
  if (const auto sym = criterion_symmetric_part(x, tol); sym && sym->status == Status::Admissible)
    return emit(make_profile_wavelet(x));
  if (x.is_diagonal(0.0)) return emit(make_indicator_wavelet(x));

  if (!cfg.similarity_path.empty()) {
    const Matrix s = load_matrix(cfg.similarity_path);
    if (s.dim() != x.dim()) throw InvalidInput("construct: similarity dimension differs from the generator");
    const Matrix y = inverse(s) * x * s;
    if (const auto sym = criterion_symmetric_part(y, tol); sym && sym->status == Status::Admissible)
      return emit(make_transported_wavelet(make_profile_wavelet(y), s));
    Matrix off = y;
    for (int i = 0; i < y.dim(); ++i) off(i, i) = 0.0;
    if (off.max_abs() <= 1e-9 * std::max(1.0, y.max_abs())) {
      Matrix d = Matrix::zero(y.dim());
      for (int i = 0; i < y.dim(); ++i) d(i, i) = y(i, i);
      return emit(make_transported_wavelet(make_indicator_wavelet(d), s));
    }
    err << "construct: S^-1 X S is neither diagonal nor of same-sign symmetric part\n";
    return kNeedsSimilarity;
  }
  err << "construct: admissible by " << (v.criterion ? to_string(*v.criterion) : "?")
      << " but no construction applies directly; pass --similarity S with S^-1 X S diagonal\n";
  return kNeedsSimilarity;
}

int run_delta(const RunConfig& cfg, std::ostream& out)
{
  const WaveletSpec w = wavelet_from_json(read_json_file(cfg.wavelet_path));
  const Matrix x = cfg.matrix_path.empty() ? group_generator(w) : load_matrix(cfg.matrix_path);
  const double tol = cfg.tol.value_or(kDefaultQuadratureTol);
  const DeltaReport r = delta_sweep(w, x, cfg.samples, cfg.seed, tol, cfg.threads);
  Emitter e(cfg, out);
  if (e.wants_csv())
    e.csv([&](std::ostream& os) { write_delta_csv(os, r); });
  else
    e.json(delta_report_to_json(r));
  bool ok = r.max_abs_deviation <= tol;
  for (const DeltaSample& s : r.samples) ok = ok && s.quad_error <= tol;
  return ok ? kOk : kToleranceBreach;
}

std::vector<double> doubling_radii()
{
  std::vector<double> r;
  for (double v = 1.0; v <= 64.0; v *= 2.0) r.push_back(v);
  return r;
}

int run_orbit_probe(const RunConfig& cfg, std::ostream& out)
{
  const Matrix x = load_matrix(cfg.matrix_path);
  const GroupDescriptor g = group_from_generator(x);
  const double tol = cfg.tol.value_or(1e-9);
  std::ostringstream csv;
  csv << std::setprecision(17) << "t,";
  for (int i = 0; i < g.dim(); ++i) csv << 'v' << i << ',';
  csv << "norm_xi,residual\n";
  Json rows = Json::array();
  double worst = 0.0;
  for (int i = 0; i < cfg.samples; ++i) {
    const Vector xi = sweep_point(g.dim(), i, cfg.samples, cfg.seed);
    const OrbitCoordinates c = orbit_decompose(g, xi);
    Vector back = orbit_point(g, c.t, c.v);
    back -= xi;
    const double residual = back.norm() / xi.norm();
    worst = std::max(worst, residual);
    csv << c.t << ',';
    for (int k = 0; k < g.dim(); ++k) csv << c.v[k] << ',';
    csv << xi.norm() << ',' << residual << '\n';
    rows.push_back(Json{{"t", c.t}, {"v", c.v.to_vector()}, {"norm_xi", xi.norm()}, {"residual", residual}});
  }
  Emitter e(cfg, out);
  if (e.wants_csv())
    e.csv([&](std::ostream& os) { os << csv.str(); });
  else
    e.json(Json{{"rows", rows}, {"max_relative_residual", worst}, {"seed", cfg.seed}});
  return worst <= tol ? kOk : kToleranceBreach;
}

int run_probe(const RunConfig& cfg, std::ostream& out)
{
  Emitter e(cfg, out);
  if (cfg.kind == "lie") {
    const Matrix x = Matrix{{0.0, 1.0}, {0.0, 0.0}};
    const Matrix y = Matrix{{0.0, 0.0}, {1.0, 0.0}};
    std::vector<int> ms;
    for (int m = 8; m <= 1024; m *= 2) ms.push_back(m);
    const auto rows = lie_convergence_probe(x, y, ms);
    if (e.wants_csv())
      e.csv([&](std::ostream& os) { write_lie_csv(os, rows); });
    else
      e.json(lie_table_to_json(rows));
    return kOk;
  }
  if (cfg.kind == "orbit") return run_orbit_probe(cfg, out);

  const ProbeKind kind = probe_kind_from_string(cfg.kind);
  Vector diagonal;
  if (kind == ProbeKind::TraceZeroDiagonal)
    diagonal = cfg.matrix_path.empty() ? Vector{1.0, -1.0} : load_matrix(cfg.matrix_path).diag();
  const GrowthTable g = divergence_probe(kind, doubling_radii(), diagonal);
  if (e.wants_csv())
    e.csv([&](std::ostream& os) {
      write_growth_csv(os, g);
      os << std::setprecision(17) << "# fitted_exponent=" << g.fitted_exponent << " fit_quality=" << g.fit_quality
         << '\n';
    });
  else
    e.json(growth_table_to_json(g));
  return g.candidate_delta_deviation <= cfg.tol.value_or(kDefaultQuadratureTol) ? kOk : kToleranceBreach;
}

int run_reconstruct(const RunConfig& cfg, std::ostream& out)
{
  const WaveletSpec w = wavelet_from_json(read_json_file(cfg.wavelet_path));
  const Matrix x = cfg.matrix_path.empty() ? group_generator(w) : load_matrix(cfg.matrix_path);
  const int n = w.dim();
  GridSpec grid{std::vector<double>(static_cast<std::size_t>(n), -cfg.box),
                std::vector<double>(static_cast<std::size_t>(n), cfg.box), cfg.points};
  // Gaussian bump centred off the origin
  const auto f_hat = [n](const Vector& xi) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (xi[i] - 0.5) * (xi[i] - 0.5);
    return std::exp(-s);
  };
  const double threshold = cfg.tol.value_or(1e-4);
  const ReconstructionResult r = reconstruction_check(w, x, f_hat, grid, std::min(1e-8, threshold * 1e-2));
  Emitter(cfg, out).json(Json{{"relative_error", r.relative_error},
                              {"points", r.points},
                              {"max_delta_deviation", r.max_delta_deviation},
                              {"threshold", threshold}});
  return r.relative_error <= threshold ? kOk : kToleranceBreach;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Admissibility checks and wavelet constructions for one-parameter dilation groups", "dilation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Tolerance (1e-9 for decisions, 1e-6 for quadrature)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 64));
  };

  CLI::App* check = app.add_subcommand("check", "Decide admissibility of a generator");
  check->add_option("--matrix", cfg.matrix_path, "Generator JSON")->required()->check(CLI::ExistingFile);
  add_common(check);

  CLI::App* construct = app.add_subcommand("construct", "Build a wavelet spec for an admissible generator");
  construct->add_option("--matrix", cfg.matrix_path, "Generator JSON")->required()->check(CLI::ExistingFile);
  construct->add_option("--similarity", cfg.similarity_path, "S with S^-1 X S diagonal")->check(CLI::ExistingFile);
  add_common(construct);

  CLI::App* delta = app.add_subcommand("delta", "Calderon sweep of a wavelet spec");
  delta->add_option("--wavelet", cfg.wavelet_path, "Wavelet spec JSON")->required()->check(CLI::ExistingFile);
  delta->add_option("--matrix", cfg.matrix_path, "Group generator (defaults to the spec's)")
      ->check(CLI::ExistingFile);
  add_common(delta);
  add_sampling(delta);

  CLI::App* probe = app.add_subcommand("probe", "Divergence, Lie-product and orbit probes");
  probe->add_option("--kind", cfg.kind, "Probe kind")
      ->required()
      ->check(CLI::IsMember({"trace-zero", "rotation", "shear", "lie", "orbit"}));
  probe->add_option("--matrix", cfg.matrix_path, "Diagonal (trace-zero) or generator (orbit)")
      ->check(CLI::ExistingFile);
  add_common(probe);
  add_sampling(probe);

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "Frequency-domain reconstruction check");
  reconstruct->add_option("--wavelet", cfg.wavelet_path, "Wavelet spec JSON")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--matrix", cfg.matrix_path, "Group generator")->check(CLI::ExistingFile);
  reconstruct->add_option("--points", cfg.points, "Grid points per axis")->check(CLI::Range(2, 201));
  reconstruct->add_option("--box", cfg.box, "Half-width of the grid box")->check(CLI::PositiveNumber);
  add_common(reconstruct);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    if (check->parsed()) return run_check(cfg, out);
    if (construct->parsed()) return run_construct(cfg, out, err);
    if (delta->parsed()) return run_delta(cfg, out);
    if (probe->parsed()) {
      if (cfg.kind == "orbit" && cfg.matrix_path.empty()) throw ParseError("probe --kind orbit needs --matrix");
      return run_probe(cfg, out);
    }
    return run_reconstruct(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

} // namespace dilation::cli
