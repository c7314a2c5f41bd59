#pragma once

#include "dilation/linalg.hpp"
#include "dilation/wavelet.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dilation {

/// How the t-range of a Delta integral was chosen.
enum class RangeKind
{
  Exact,     ///< integrand support solved in closed form
  Truncated, ///< symmetric range grown until the value settled
  Empty,     ///< integrand vanishes identically (xi on a null set)
};

struct DeltaResult
{
  double value = 0.0;
  double error = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  RangeKind range = RangeKind::Exact;
  int panels = 0;
};

/// Delta(xi) = integral over t of |psi_hat(e^{t X^T} xi)|^2 with Lebesgue dt.
DeltaResult delta_integral(const WaveletSpec& w, const Matrix& x, const Vector& xi, double tol = 1e-6);

struct DeltaSample
{
  Vector xi;
  double delta = 0.0;
  double quad_error = 0.0;
};

struct QuadratureInfo
{
  std::string rule = "gauss-legendre-15-adaptive";
  int max_panels = 0;
  double t_min = 0.0; ///< smallest truncation range start over all samples
  double t_max = 0.0;
};

struct DeltaReport
{
  std::vector<DeltaSample> samples;
  double max_abs_deviation = 0.0;
  int worst_index = -1;
  QuadratureInfo quadrature;
  std::uint64_t seed = 0;
  double tol = 0.0;

  friend bool operator==(const DeltaReport& a, const DeltaReport& b);
};

/// Sample i draws from its own counter stream, so the report does not depend on `threads`.
DeltaReport delta_sweep(const WaveletSpec& w, const Matrix& x, int count, std::uint64_t seed, double tol = 1e-6,
                        int threads = 1);

/// Sample xi of a sweep: log-uniform radius in [1e-3, 1e3] (endpoints pinned at i = 0 and i = count - 1)
/// and a uniformly distributed direction.
Vector sweep_point(int dim, int index, int count, std::uint64_t seed);

enum class MassMethod
{
  Fubini,
  MonteCarlo,
};

struct MassResult
{
  double value = 0.0;
  double std_error = 0.0; ///< zero for Fubini
  MassMethod method = MassMethod::Fubini;
  int samples = 0;
};

/// Squared L2 mass of psi_hat. Indicator-based specs are truncated to |u| <= r in the chart
/// (r = infinity gives the full mass); profile specs to the ball of radius r.
MassResult l2_mass(const WaveletSpec& w, double r, MassMethod method, int samples = 0, std::uint64_t seed = 0);

/// 2|d_n| V_{n-1}(1) Gamma(n) / tr(D)^{n+1} for the trace-positive chart diagonal of an indicator spec.
double indicator_mass_bound(const WaveletSpec& w);
/// Same with tr(D)^n: the value the radial integral actually gives at |u| -> 0 weight one.
double indicator_mass_bound_radial(const WaveletSpec& w);

enum class ProbeKind
{
  TraceZeroDiagonal,
  Rotation2D,
  NilpotentShear2D,
};

struct GrowthTable
{
  ProbeKind kind = ProbeKind::Rotation2D;
  std::vector<double> radii;
  std::vector<double> masses;
  double fitted_exponent = 0.0;
  double fit_quality = 0.0;
  /// max |Delta - 1| of the candidate over a handful of orbits.
  double candidate_delta_deviation = 0.0;
};

/// Truncated mass of the orbit-normalized candidate for each radius, with a log-log fit.
/// `diagonal` is used only for TraceZeroDiagonal (n = 2 or 3, trace zero within 1e-12).
GrowthTable divergence_probe(ProbeKind kind, const std::vector<double>& radii, const Vector& diagonal = Vector{});

struct LieRow
{
  int m = 0;
  double error = 0.0;
};

std::vector<LieRow> lie_convergence_probe(const Matrix& x, const Matrix& y, const std::vector<int>& m_values);

/// Tensor grid of points per axis over a box; the origin is skipped when it falls on the grid.
struct GridSpec
{
  std::vector<double> lower;
  std::vector<double> upper;
  int points_per_axis = 11;
};

struct ReconstructionResult
{
  double relative_error = 0.0;
  int points = 0;
  double max_delta_deviation = 0.0;
};

ReconstructionResult reconstruction_check(const WaveletSpec& w, const Matrix& x,
                                          const std::function<double(const Vector&)>& f_hat, const GridSpec& grid,
                                          double tol = 1e-8);

std::string_view to_string(ProbeKind k);
std::string_view to_string(MassMethod m);
std::string_view to_string(RangeKind r);

} // namespace dilation
