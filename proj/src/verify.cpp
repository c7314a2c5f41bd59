#include "dilation/verify.hpp"

#include "dilation/error.hpp"
#include "dilation/matkit.hpp"
#include "dilation/orbit.hpp"
#include "dilation/quadrature.hpp"
#include "dilation/rng.hpp"
#include "dilation/special.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace dilation {

namespace {

constexpr double kProportionalTolerance = 1e-12;
constexpr double kMaxTruncation = 1024.0;

struct Interval
{
  double begin = 0.0;
  double end = 0.0;
  bool empty = false;
};

/// The integrand's support, plus the integrand in chart form when the group acts by chart translation.
struct Reduction
{
  Interval interval;
  /// t -> psi_hat along the orbit without forming e^{t X^T} xi (which can overflow for indicator
  /// orbits that reach their slab far from the origin); empty for profile wavelets.
  std::function<double(double)> chart_value;
};

/// c with x == c * target, when it exists.
std::optional<double> proportional_factor(const Matrix& x, const Matrix& target)
{
  if (x.dim() != target.dim()) return std::nullopt;
  double xt = 0.0, tt = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) {
      xt += x(i, j) * target(i, j);
      tt += target(i, j) * target(i, j);
    }
  if (tt == 0.0) return std::nullopt;
  const double c = xt / tt;
  Matrix r = x;
  r -= c * target;
  if (r.frobenius_norm() > kProportionalTolerance * std::max(x.frobenius_norm(), target.frobenius_norm() * std::abs(c)))
    return std::nullopt;
  return c;
}

Interval sorted(double a, double b)
{
  return a <= b ? Interval{a, b, false} : Interval{b, a, false};
}

/// Closed-form support of t -> psi_hat(e^{t X^T} xi), when X is a multiple of the spec's generator.
std::optional<Reduction> reduce(const WaveletSpec& w, const Matrix& x, const Vector& xi)
{
  if (w.is_profile()) {
    const ProfileWavelet& p = w.profile();
    const auto c = proportional_factor(x, p.target.original);
    if (!c || *c == 0.0 || !std::isfinite(p.profile.support_begin())) return std::nullopt;
    const double t0 = orbit_time(p.transpose, xi);
    const double kappa = *c * p.transpose.sign;
    return Reduction{sorted((p.profile.support_begin() - t0) / kappa, (p.profile.support_end() - t0) / kappa), {}};
  }
  if (w.is_indicator()) {
    const IndicatorWavelet& ind = w.indicator();
    const auto c = proportional_factor(x, Matrix::diagonal(ind.diagonal));
    if (!c || *c == 0.0) return std::nullopt;
    const IndicatorChart chart = indicator_chart(ind, xi);
    if (chart.on_hyperplane) return Reduction{Interval{0.0, 0.0, true}, {}};
    // along the orbit u is fixed and tau moves at unit speed times kappa
    const double kappa = *c * ind.sign;
    const double tau0 = chart.tau, u = chart.u_norm;
    return Reduction{sorted((-(u + 1.0) - tau0) / kappa, (-u - tau0) / kappa), [=](double t) {
                       const double tau = tau0 + kappa * t;
                       return (tau >= -(u + 1.0) && tau <= -u) ? 1.0 : 0.0;
                     }};
  }
  const TransportedWavelet& tw = w.transported();
  const Matrix s_inv = tw.inverse_transpose.transpose();
  return reduce(*tw.base, s_inv * x * tw.similarity, tw.inverse_transpose * xi);
}

void require_converged(const QuadResult& q, double tol, const char* where)
{
  if (!q.converged || !(q.error <= tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << where << ": quadrature error " << q.error << " exceeds tolerance " << tol << " after " << q.panels
        << " panels";
    throw NumericError(msg.str());
  }
}

} // namespace

DeltaResult delta_integral(const WaveletSpec& w, const Matrix& x, const Vector& xi, double tol)
{
  if (x.dim() != w.dim() || xi.size() != w.dim()) throw InvalidInput("delta_integral: dimension mismatch");
  if (!(tol > 0.0)) throw InvalidInput("delta_integral: tol must be positive");
  if (!xi.is_finite()) throw InvalidInput("delta_integral: xi has non-finite entries");
  if (xi.is_zero()) throw DomainError("delta_integral: xi = 0 has no orbit");

  const Matrix xt = x.transpose();
  const Integrand integrand = [&](double t) {
    const double v = evaluate(w, mat_exp(t * xt) * xi);
    return v * v;
  };

  DeltaResult out;
  if (const auto red = reduce(w, x, xi)) {
    const Interval* iv = &red->interval;
    if (iv->empty) {
      out.range = RangeKind::Empty;
      return out;
    }
    const Integrand chart_integrand = [&](double t) {
      const double v = red->chart_value(t);
      return v * v;
    };
    const QuadResult q =
        integrate_adaptive(red->chart_value ? chart_integrand : integrand, iv->begin, iv->end, tol / 2.0, 4);
    require_converged(q, tol, "delta_integral");
    out.value = q.value;
    out.error = q.error;
    out.t_begin = iv->begin;
    out.t_end = iv->end;
    out.panels = q.panels;
    out.range = RangeKind::Exact;
    return out;
  }

  // Grow [-T, T] by doubling; only the two new outer pieces are integrated at each step.
  const double piece_tol = tol / 32.0;
  QuadResult q = integrate_adaptive(integrand, -1.0, 1.0, piece_tol, 8);
  require_converged(q, piece_tol, "delta_integral");
  double value = q.value, error = q.error;
  int panels = q.panels;
  int settled = 0;
  double t = 1.0;
  while (t < kMaxTruncation) {
    const QuadResult left = integrate_adaptive(integrand, -2.0 * t, -t, piece_tol, 8);
    const QuadResult right = integrate_adaptive(integrand, t, 2.0 * t, piece_tol, 8);
    require_converged(left, piece_tol, "delta_integral");
    require_converged(right, piece_tol, "delta_integral");
    const double change = left.value + right.value;
    value += change;
    error += left.error + right.error;
    panels += left.panels + right.panels;
    t *= 2.0;
    settled = (std::abs(change) < tol / 10.0 && value > 0.0) ? settled + 1 : 0;
    if (settled == 2) break;
  }
  if (settled < 2 && value > 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "delta_integral: value " << value << " still changing at truncation range [-" << t << ", " << t << "]";
    throw TruncationError(msg.str());
  }
  out.value = value;
  out.error = error;
  out.t_begin = -t;
  out.t_end = t;
  out.panels = panels;
  out.range = RangeKind::Truncated;
  return out;
}

Vector sweep_point(int dim, int index, int count, std::uint64_t seed)
{
  check_dimension(dim);
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  double log_r;
  if (count == 1)
    log_r = rng.uniform(-3.0, 3.0);
  else if (index == 0)
    log_r = -3.0;
  else if (index == count - 1)
    log_r = 3.0;
  else if (count == 2)
    log_r = 0.0;
  else
    log_r = -3.0 + 6.0 * (index - 1 + rng.uniform()) / (count - 2);

  Vector dir(dim);
  do {
    for (int i = 0; i < dim; ++i) dir[i] = rng.normal();
  } while (dir.norm() == 0.0);
  dir *= std::pow(10.0, log_r) / dir.norm();
  return dir;
}

bool operator==(const DeltaReport& a, const DeltaReport& b)
{
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    if (!(a.samples[i].xi == b.samples[i].xi) || a.samples[i].delta != b.samples[i].delta ||
        a.samples[i].quad_error != b.samples[i].quad_error)
      return false;
  return a.max_abs_deviation == b.max_abs_deviation && a.worst_index == b.worst_index &&
         a.quadrature.rule == b.quadrature.rule && a.quadrature.max_panels == b.quadrature.max_panels &&
         a.quadrature.t_min == b.quadrature.t_min && a.quadrature.t_max == b.quadrature.t_max && a.seed == b.seed &&
         a.tol == b.tol;
}

DeltaReport delta_sweep(const WaveletSpec& w, const Matrix& x, int count, std::uint64_t seed, double tol, int threads)
{
  if (count < 1) throw InvalidInput("delta_sweep: count must be at least 1");
  const auto n = static_cast<std::size_t>(count);
  std::vector<DeltaSample> samples(n);
  std::vector<DeltaResult> results(n);
  std::vector<std::exception_ptr> failures(n);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        samples[i].xi = sweep_point(w.dim(), static_cast<int>(i), count, seed);
        results[i] = delta_integral(w, x, samples[i].xi, tol);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 64));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work, k, workers);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  DeltaReport report;
  report.seed = seed;
  report.tol = tol;
  report.quadrature.t_min = std::numeric_limits<double>::infinity();
  report.quadrature.t_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    samples[i].delta = results[i].value;
    samples[i].quad_error = results[i].error;
    const double dev = std::abs(results[i].value - 1.0);
    if (report.worst_index < 0 || dev > report.max_abs_deviation) {
      report.max_abs_deviation = dev;
      report.worst_index = static_cast<int>(i);
    }
    report.quadrature.max_panels = std::max(report.quadrature.max_panels, results[i].panels);
    report.quadrature.t_min = std::min(report.quadrature.t_min, results[i].t_begin);
    report.quadrature.t_max = std::max(report.quadrature.t_max, results[i].t_end);
  }
  report.samples = std::move(samples);
  return report;
}

// ---------------------------------------------------------------- L2 mass

namespace {

/// Lower incomplete gamma function for integer k >= 1.
double lower_incomplete_gamma(int k, double x)
{
  if (std::isinf(x)) return lanczos_gamma(k);
  if (x <= 0.0) return 0.0;
  if (x < k + 1.0) {
    // x^k e^{-x} sum_j x^j / (k (k+1) ... (k+j))
    double term = 1.0 / k, sum = term;
    for (int j = 1; j < 500; ++j) {
      term *= x / (k + j);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return std::pow(x, k) * std::exp(-x) * sum;
  }
  // (k-1)! (1 - e^{-x} sum_{j<k} x^j / j!)
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < k; ++j) {
    term *= x / j;
    sum += term;
  }
  return lanczos_gamma(k) * (1.0 - std::exp(-x) * sum);
}

double indicator_fubini(const IndicatorWavelet& w, double u_bound)
{
  const Vector& d = w.chart_diagonal;
  const int n = d.size();
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += d[i];
  const double dn = std::abs(d[n - 1]);
  const double slab = (1.0 - std::exp(-tr)) / tr; // integral of e^{s tr} over s in [-1, 0]
  if (n == 1) return 2.0 * dn * slab;
  const int k = n - 1;
  return 2.0 * dn * slab * k * ball_volume(k, 1.0) * lower_incomplete_gamma(k, u_bound * tr) / std::pow(tr, k);
}

double fubini_mass(const WaveletSpec& w, double r)
{
  if (w.is_profile())
    throw MethodError("l2_mass: Fubini needs an indicator chart; use MonteCarlo for profile wavelets");
  if (w.is_indicator()) return indicator_fubini(w.indicator(), r);
  const TransportedWavelet& t = w.transported();
  return std::abs(determinant(t.similarity)) * fubini_mass(*t.base, r);
}

double truncated_square(const WaveletSpec& w, const Vector& xi, double r)
{
  if (w.is_profile()) {
    if (xi.norm() > r) return 0.0;
    const double v = profile_wavelet_eval(w, xi);
    return v * v;
  }
  if (w.is_indicator()) {
    const IndicatorChart c = indicator_chart(w.indicator(), xi);
    if (c.on_hyperplane || c.u_norm > r) return 0.0;
    return indicator_wavelet_eval(w, xi);
  }
  const TransportedWavelet& t = w.transported();
  return truncated_square(*t.base, t.inverse_transpose * xi, r);
}

double sampling_radius(const WaveletSpec& w, double r)
{
  if (w.is_profile()) return std::min(r, w.support().radius);
  if (w.is_indicator()) return support_radius(w, r).radius;
  const TransportedWavelet& t = w.transported();
  return spectral_norm(t.similarity) * sampling_radius(*t.base, r);
}

} // namespace

MassResult l2_mass(const WaveletSpec& w, double r, MassMethod method, int samples, std::uint64_t seed)
{
  if (!(r > 0.0)) throw InvalidInput("l2_mass: truncation radius must be positive");
  MassResult out;
  out.method = method;
  if (method == MassMethod::Fubini) {
    out.value = fubini_mass(w, r);
    return out;
  }
  if (samples < 2) throw InvalidInput("l2_mass: MonteCarlo needs at least two samples");
  if (std::isinf(r) && !w.is_profile())
    throw MethodError("l2_mass: MonteCarlo needs a finite truncation for unbounded indicator support");

  const int n = w.dim();
  const double rho = sampling_radius(w, r);
  const double volume = ball_volume(n, rho);
  double sum = 0.0, sum_sq = 0.0;
  Vector xi(n);
  for (int i = 0; i < samples; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    double len2 = 0.0;
    do {
      len2 = 0.0;
      for (int j = 0; j < n; ++j) {
        xi[j] = rng.normal();
        len2 += xi[j] * xi[j];
      }
    } while (len2 == 0.0);
    xi *= rho * std::pow(rng.uniform(), 1.0 / n) / std::sqrt(len2);
    const double f = truncated_square(w, xi, r);
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, (sum_sq / samples - mean * mean) * samples / (samples - 1.0));
  out.value = volume * mean;
  out.std_error = volume * std::sqrt(var / samples);
  out.samples = samples;
  return out;
}

namespace {

struct ChartTerms
{
  int n = 0;
  double trace = 0.0;
  double last = 0.0;
};

ChartTerms chart_terms(const WaveletSpec& w)
{
  if (!w.is_indicator()) throw InvalidInput("indicator mass bound: spec is not an indicator wavelet");
  const Vector& d = w.indicator().chart_diagonal;
  ChartTerms c{d.size(), 0.0, std::abs(d[d.size() - 1])};
  for (int i = 0; i < c.n; ++i) c.trace += d[i];
  return c;
}

} // namespace

double indicator_mass_bound(const WaveletSpec& w)
{
  const ChartTerms c = chart_terms(w);
  return 2.0 * c.last * ball_volume(c.n - 1, 1.0) * lanczos_gamma(c.n) / std::pow(c.trace, c.n + 1);
}

double indicator_mass_bound_radial(const WaveletSpec& w)
{
  const ChartTerms c = chart_terms(w);
  return 2.0 * c.last * ball_volume(c.n - 1, 1.0) * lanczos_gamma(c.n) / std::pow(c.trace, c.n);
}

// ---------------------------------------------------------------- divergence probes

namespace {

struct LogFit
{
  double slope = 0.0;
  double r_squared = 0.0;
};

LogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y)
{
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx, dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LogFit f;
  f.slope = sxy / sxx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

/// Unit-slab candidate for a trace-zero diagonal group, in the chart of the distinguished axis.
struct TraceZeroCandidate
{
  Vector d;
  int last = 0;

  double operator()(const Vector& xi) const
  {
    if (xi[last] == 0.0) return 0.0;
    const double tau = std::log(std::abs(xi[last])) / d[last];
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      if (i == last) continue;
      const double ui = xi[i] * std::exp(-tau * d[i]);
      s += ui * ui;
    }
    const double u = std::sqrt(s);
    return (tau >= -(u + 1.0) && tau <= -u) ? 1.0 : 0.0;
  }
};

/// Delta of a {0,1}-valued candidate along one orbit, integrated over [a, b] with jump refinement.
double orbit_delta(const std::function<double(const Vector&)>& psi, const Matrix& xt, const Vector& xi, double a,
                   double b)
{
  const QuadResult q = integrate_adaptive(
      [&](double t) {
        const double v = psi(mat_exp(t * xt) * xi);
        return v * v;
      },
      a, b, 1e-9, 16, 200000);
  return q.value;
}

} // namespace

GrowthTable divergence_probe(ProbeKind kind, const std::vector<double>& radii, const Vector& diagonal)
{
  if (radii.size() < 2) throw InvalidInput("divergence_probe: need at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InvalidInput("divergence_probe: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidInput("divergence_probe: radii must be strictly increasing");
  }

  GrowthTable table;
  table.kind = kind;
  table.radii = radii;
  std::function<double(double)> mass;

  switch (kind) {
  case ProbeKind::TraceZeroDiagonal: {
    const int n = diagonal.size();
    if (n != 2 && n != 3) throw InvalidInput("divergence_probe: TraceZeroDiagonal supports n = 2 or 3");
    double tr = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      tr += diagonal[i];
      scale = std::max(scale, std::abs(diagonal[i]));
    }
    if (scale == 0.0 || std::abs(tr) > 1e-12 * scale)
      throw InvalidInput("divergence_probe: TraceZeroDiagonal needs a nonzero diagonal with trace 0");
    int last = n - 1;
    while (diagonal[last] == 0.0) --last;
    const TraceZeroCandidate psi{diagonal, last};
    const double dn = std::abs(diagonal[last]);
    const int k = n - 1;
    // chart (u, tau) -> e^{tau D}(u, 1): Jacobian |d_n| e^{tau tr D} = |d_n|; slab length 1; both signs of xi_n
    mass = [dn, k](double r) {
      const double slab = integrate_adaptive([dn](double) { return dn; }, -1.0, 0.0, 1e-14).value;
      const double radial =
          integrate_adaptive([k](double rho) { return std::pow(rho, k - 1); }, 0.0, r, 1e-12 * std::pow(r, k)).value;
      return 2.0 * slab * k * ball_volume(k, 1.0) * radial;
    };
    // along e^{tD} xi the chart point keeps u and shifts tau by t
    const Matrix xt = Matrix::diagonal(diagonal);
    for (double a : {0.3, -1.7, 2.5}) {
      Vector xi(n);
      for (int i = 0; i < n; ++i) xi[i] = a + 0.5 * i;
      xi[last] = std::exp(0.4 * a);
      const double tau = std::log(std::abs(xi[last])) / diagonal[last];
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        if (i != last) s += std::pow(xi[i] * std::exp(-tau * diagonal[i]), 2);
      const double u = std::sqrt(s);
      const double dev = std::abs(orbit_delta(psi, xt, xi, -u - tau - 3.0, -u - tau + 2.0) - 1.0);
      table.candidate_delta_deviation = std::max(table.candidate_delta_deviation, dev);
    }
    break;
  }
  case ProbeKind::Rotation2D: {
    // psi_hat = 1/sqrt(2 pi) on the circle group; mass over the disc of radius r
    mass = [](double r) {
      constexpr double density = 1.0 / (2.0 * std::numbers::pi);
      return integrate_adaptive([](double rho) { return 2.0 * std::numbers::pi * density * rho; }, 0.0, r,
                                1e-12 * r * r)
          .value;
    };
    const Matrix xt = Matrix{{0.0, 1.0}, {-1.0, 0.0}}.transpose();
    const auto psi = [](const Vector&) { return 1.0 / std::sqrt(2.0 * std::numbers::pi); };
    for (const Vector& xi : {Vector{1.0, 0.0}, Vector{-0.3, 2.0}}) {
      const double dev = std::abs(orbit_delta(psi, xt, xi, 0.0, 2.0 * std::numbers::pi) - 1.0);
      table.candidate_delta_deviation = std::max(table.candidate_delta_deviation, dev);
    }
    break;
  }
  case ProbeKind::NilpotentShear2D: {
    // chart (u, t) -> (u, t u) with t in [0, 1]: Jacobian |u|
    mass = [](double r) {
      const auto inner = [](double u) {
        return integrate_adaptive([u](double) { return std::abs(u); }, 0.0, 1.0, 1e-14).value;
      };
      return integrate_adaptive(inner, -r, 0.0, 1e-12 * r * r).value +
             integrate_adaptive(inner, 0.0, r, 1e-12 * r * r).value;
    };
    const Matrix xt = Matrix{{0.0, 1.0}, {0.0, 0.0}}.transpose();
    const auto psi = [](const Vector& xi) {
      if (xi[0] == 0.0) return 0.0;
      const double s = xi[1] / xi[0];
      return (s >= 0.0 && s <= 1.0) ? 1.0 : 0.0;
    };
    for (const Vector& xi : {Vector{1.0, 0.25}, Vector{-2.0, 3.0}, Vector{0.5, -4.0}}) {
      const double s = xi[1] / xi[0];
      const double dev = std::abs(orbit_delta(psi, xt, xi, -s - 2.0, -s + 3.0) - 1.0);
      table.candidate_delta_deviation = std::max(table.candidate_delta_deviation, dev);
    }
    break;
  }
  }

  for (double r : radii) table.masses.push_back(mass(r));
  const LogFit fit = fit_log_log(table.radii, table.masses);
  table.fitted_exponent = fit.slope;
  table.fit_quality = fit.r_squared;
  return table;
}

std::vector<LieRow> lie_convergence_probe(const Matrix& x, const Matrix& y, const std::vector<int>& m_values)
{
  if (m_values.empty()) throw InvalidInput("lie_convergence_probe: m_values is empty");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 1) throw InvalidInput("lie_convergence_probe: m must be positive");
    if (i > 0 && m_values[i] <= m_values[i - 1]) throw InvalidInput("lie_convergence_probe: m must be increasing");
  }
  const Matrix exact = mat_exp(x + y);
  std::vector<LieRow> rows;
  for (int m : m_values) {
    Matrix diff = lie_product_approx(x, y, m);
    diff -= exact;
    rows.push_back({m, spectral_norm(diff)});
  }
  return rows;
}

ReconstructionResult reconstruction_check(const WaveletSpec& w, const Matrix& x,
                                          const std::function<double(const Vector&)>& f_hat, const GridSpec& grid,
                                          double tol)
{
  const int n = w.dim();
  if (static_cast<int>(grid.lower.size()) != n || static_cast<int>(grid.upper.size()) != n)
    throw InvalidInput("reconstruction_check: grid box dimension mismatch");
  if (grid.points_per_axis < 2) throw InvalidInput("reconstruction_check: need at least two points per axis");

  ReconstructionResult out;
  double num = 0.0, den = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const int p = grid.points_per_axis;
  for (;;) {
    Vector xi(n);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      xi[i] = grid.lower[k] + (grid.upper[k] - grid.lower[k]) * idx[k] / (p - 1);
    }
    if (!xi.is_zero()) {
      const double f = f_hat(xi);
      if (f != 0.0) {
        const double delta = delta_integral(w, x, xi, tol).value;
        num += (f - f * delta) * (f - f * delta);
        den += f * f;
        out.max_delta_deviation = std::max(out.max_delta_deviation, std::abs(delta - 1.0));
      }
      ++out.points;
    }
    int axis = 0;
    while (axis < n && ++idx[static_cast<std::size_t>(axis)] == p) idx[static_cast<std::size_t>(axis++)] = 0;
    if (axis == n) break;
  }
  out.relative_error = den == 0.0 ? 0.0 : std::sqrt(num / den);
  return out;
}

std::string_view to_string(ProbeKind k)
{
  switch (k) {
  case ProbeKind::TraceZeroDiagonal: return "TraceZeroDiagonal";
  case ProbeKind::Rotation2D: return "Rotation2D";
  case ProbeKind::NilpotentShear2D: return "NilpotentShear2D";
  }
  return "?";
}

std::string_view to_string(MassMethod m) { return m == MassMethod::Fubini ? "Fubini" : "MonteCarlo"; }

std::string_view to_string(RangeKind r)
{
  switch (r) {
  case RangeKind::Exact: return "exact";
  case RangeKind::Truncated: return "truncated";
  case RangeKind::Empty: return "empty";
  }
  return "?";
}

} // namespace dilation
