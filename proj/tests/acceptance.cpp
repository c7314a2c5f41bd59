// Acceptance run: one PASS/FAIL line per criterion, each with its own time budget.
// Usage: acceptance [criterion...]   (no arguments runs all nine)

#include "dilation/admit.hpp"
#include "dilation/matkit.hpp"
#include "dilation/orbit.hpp"
#include "dilation/special.hpp"
#include "dilation/verify.hpp"
#include "dilation/wavelet.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace dilation;

namespace {

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what)
  {
    if (!ok) pass = false;
    detail << (ok ? "" : "!") << what << "; ";
  }
};

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const Matrix kJordan{{1.0, 1.0}, {0.0, 1.0}};
const Matrix kRaise{{0.0, 1.0}, {0.0, 0.0}};
const Matrix kLower{{0.0, 0.0}, {1.0, 0.0}};

// 1. decide agrees with the sign-of-trace rule on random 2x2 input
void completeness_2x2(Outcome& o)
{
  int tested = 0, agree = 0, unknown = 0;
  for (std::uint64_t s = 0; tested < 1000; ++s) {
    CounterRng rng(1001, s);
    const Matrix x = oracle::random_matrix(rng, 2, -5.0, 5.0);
    if (!(std::abs(x.trace()) > 1e-6 * spectral_norm(x))) continue;
    ++tested;
    const Verdict v = decide(x);
    unknown += v.status == Status::Unknown;
    agree += v.status == Status::Admissible;
  }
  o.require(agree == tested, "agreement " + std::to_string(agree) + "/" + std::to_string(tested));
  o.require(unknown == 0, "unknown " + std::to_string(unknown));
}

// 2. Calderon sweeps for the three constructions
void calderon(Outcome& o)
{
  const Matrix s{{2.0, 1.0}, {0.5, 1.5}};
  const WaveletSpec prof = make_profile_wavelet(kJordan);
  const WaveletSpec ind = make_indicator_wavelet(Vector{1.0, 2.0});
  const WaveletSpec tr = make_transported_wavelet(make_indicator_wavelet(Vector{1.0, 1.0}), s);
  const std::vector<std::pair<std::string, const WaveletSpec*>> cases{
      {"profile", &prof}, {"indicator", &ind}, {"transported", &tr}};
  for (const auto& [name, w] : cases) {
    const Matrix x = name == "transported" ? s * Matrix::identity(2) * inverse(s) : group_generator(*w);
    const DeltaReport r = delta_sweep(*w, x, 100, 42, 1e-6);
    double worst_err = 0.0;
    for (const auto& smp : r.samples) worst_err = std::max(worst_err, smp.quad_error);
    o.require(r.max_abs_deviation <= 1e-6 && worst_err <= 1e-6,
              name + " max|D-1|=" + fmt(r.max_abs_deviation) + " quad_err=" + fmt(worst_err));
  }
}

// 3. indicator mass against a 1-D oracle and the published bound
void norm_bound(Outcome& o)
{
  const WaveletSpec w = make_indicator_wavelet(Vector{1.0, 2.0});
  const double mass = l2_mass(w, std::numeric_limits<double>::infinity(), MassMethod::Fubini).value;
  const double ref = oracle::indicator_mass_2d(2.0, 3.0);
  const double rel = std::abs(mass - ref) / ref;
  o.require(rel <= 1e-8, "mass=" + fmt(mass) + " oracle=" + fmt(ref) + " rel=" + fmt(rel));
  const double bound = indicator_mass_bound(w);
  o.require(mass < bound, "bound 2|d_n|V_{n-1}(1)Gamma(n)/tr^{n+1}=" + fmt(bound));
}

// 4. growth exponents of the orbit-normalized candidates
void divergence(Outcome& o)
{
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  const std::vector<std::tuple<ProbeKind, double, Vector>> cases{
      {ProbeKind::TraceZeroDiagonal, 1.0, Vector{1.0, -1.0}},
      {ProbeKind::Rotation2D, 2.0, Vector{}},
      {ProbeKind::NilpotentShear2D, 1.0, Vector{}}};
  for (const auto& [kind, expected, diagonal] : cases) {
    const GrowthTable g = divergence_probe(kind, radii, diagonal);
    o.require(std::abs(g.fitted_exponent - expected) <= 0.05 && g.fit_quality >= 0.999,
              std::string(to_string(kind)) + " slope=" + fmt(g.fitted_exponent) + " (want " + fmt(expected) +
                  ") R2=" + fmt(g.fit_quality));
  }
}

// 5. first-order convergence of the Lie product
void lie_rate(Outcome& o)
{
  std::vector<int> ms;
  for (int m = 8; m <= 1024; m *= 2) ms.push_back(m);
  const auto rows = lie_convergence_probe(kRaise, kLower, ms);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i - 1].error / rows[i].error;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  o.require(lo >= 1.6 && hi <= 2.4, "ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  const double scale = spectral_norm(mat_exp(kRaise + kLower));
  o.require(rows.back().error <= 1e-2 * scale, "error(1024)=" + fmt(rows.back().error));
}

Matrix random_generator(CounterRng& rng, int n)
{
  const Matrix b = oracle::random_matrix(rng, n, -1.0, 1.0);
  const Matrix c = oracle::random_matrix(rng, n, -1.0, 1.0);
  return b * b.transpose() + 0.1 * Matrix::identity(n) + (c - c.transpose());
}

// 6. norm sandwich and monotonicity along orbits
void sandwich(Outcome& o)
{
  int violations = 0, non_monotone = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    CounterRng rng(6006, s);
    const int n = 2 + static_cast<int>(s % 4);
    const GroupDescriptor g = group_from_generator(random_generator(rng, n));
    const Vector v = oracle::random_vector(rng, n);
    const double t = rng.uniform(-5.0, 5.0);
    const double value = (mat_exp(t * g.generator) * v).norm();
    const double a = std::exp(t * g.lambda_min) * v.norm(), b = std::exp(t * g.lambda_max) * v.norm();
    const double lower = std::min(a, b), upper = std::max(a, b);
    if (value < lower * (1.0 - 1e-9) || value > upper * (1.0 + 1e-9)) ++violations;
    if (s % 10 == 0) {
      double prev = 0.0;
      for (int k = 0; k <= 40; ++k) {
        const double norm = orbit_point(g, -5.0 + 0.25 * k, v).norm();
        if (!(norm > prev)) ++non_monotone;
        prev = norm;
      }
    }
  }
  o.require(violations == 0, "sandwich violations " + std::to_string(violations) + "/10000");
  o.require(non_monotone == 0, "monotonicity violations " + std::to_string(non_monotone));
}

// 7. orbit decomposition round trip
void orbit_round_trip(Outcome& o)
{
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    CounterRng rng(7007, s);
    const int n = 2 + static_cast<int>(s % 4);
    Matrix x = oracle::conditioned_generator(rng, n, 1.0, 2.0, 1.0);
    if (s % 3 == 0) x = -1.0 * x;
    const GroupDescriptor g = group_from_generator(x);
    Vector xi = oracle::random_vector(rng, n);
    xi *= std::pow(10.0, rng.uniform(-3.0, 3.0)) / xi.norm();
    const OrbitCoordinates c = orbit_decompose(g, xi);
    worst = std::max(worst, (orbit_point(g, c.t, c.v) - xi).norm() / xi.norm());
  }
  o.require(worst <= 1e-9, "max relative residual " + fmt(worst));
}

// 8. frequency-domain reconstruction and its mis-scaled control
void reconstruction(Outcome& o)
{
  const auto bump = [](const Vector& xi) { return std::exp(-(xi[0] - 0.5) * (xi[0] - 0.5) - (xi[1] + 0.25) * (xi[1] + 0.25)); };
  const GridSpec grid{{-3.0, -3.0}, {3.0, 3.0}, 15};
  const WaveletSpec w = make_profile_wavelet(kJordan);
  const double good = reconstruction_check(w, kJordan, bump, grid).relative_error;
  o.require(good <= 1e-4, "relative error " + fmt(good));
  const WaveletSpec bad = make_profile_wavelet(kJordan, default_profile().rescaled(0.5));
  const double control = reconstruction_check(bad, kJordan, bump, grid).relative_error;
  o.require(control >= 0.1, "negative control " + fmt(control));
}

// 9. exponential and logarithm against the series oracle
void exp_log(Outcome& o)
{
  double worst_exp = 0.0, worst_log = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng rng(9009, s);
    const int n = 1 + static_cast<int>(s % 8);
    Matrix x = oracle::random_matrix(rng, n, -1.0, 1.0);
    x *= rng.uniform(0.0, 5.0) / spectral_norm(x);
    worst_exp = std::max(worst_exp, oracle::rel_diff(mat_exp(x), oracle::taylor_exp(x)));

    Matrix y = oracle::random_matrix(rng, n, -1.0, 1.0);
    y *= rng.uniform(0.0, 0.1) / spectral_norm(y);
    worst_log = std::max(worst_log, (mat_log(mat_exp(y)) - y).max_abs());
  }
  o.require(worst_exp <= 1e-12, "exp rel error " + fmt(worst_exp));
  o.require(worst_log <= 1e-10, "log round trip " + fmt(worst_log));
}

struct Criterion
{
  const char* name;
  double seconds;
  void (*body)(Outcome&);
};

const Criterion kCriteria[] = {
    {"2x2 completeness", 1.0, completeness_2x2},
    {"Calderon condition", 30.0, calderon},
    {"indicator norm bound", 1.0, norm_bound},
    {"divergence exponents", 5.0, divergence},
    {"Lie product rate", 1.0, lie_rate},
    {"norm sandwich and monotonicity", 10.0, sandwich},
    {"orbit round trip", 5.0, orbit_round_trip},
    {"reconstruction", 10.0, reconstruction},
    {"exp/log oracles", 2.0, exp_log},
};

bool run_one(int index)
{
  const Criterion& c = kCriteria[index - 1];
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("threw: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(elapsed < c.seconds, "time " + fmt(elapsed) + "s < " + fmt(c.seconds) + "s");
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << " (" << c.name << "): " << o.detail.str()
            << std::endl;
  return o.pass;
}

} // namespace

int main(int argc, char** argv)
{
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > 9) {
      std::cerr << "criterion must be 1..9, got " << argv[i] << '\n';
      return 2;
    }
    which.push_back(k);
  }
  if (which.empty())
    for (int k = 1; k <= 9; ++k) which.push_back(k);
  bool all = true;
  for (int k : which) all = run_one(k) && all;
  return all ? 0 : 1;
}
