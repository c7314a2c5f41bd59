#include "dilation/orbit.hpp"

#include "dilation/error.hpp"
#include "dilation/matkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dilation {

namespace {

constexpr double kLogResidual = 1e-12;
constexpr int kMaxBisection = 200;

GroupDescriptor describe(const Matrix& original, const Matrix& normalized, int sign, double lmin, double lmax)
{
  auto [sym, anti] = split_sym_antisym(normalized);
  return GroupDescriptor{original, normalized, sym, anti, lmin, lmax, sign};
}

} // namespace

GroupDescriptor GroupDescriptor::transposed() const
{
  return describe(original.transpose(), generator.transpose(), sign, lambda_min, lambda_max);
}

GroupDescriptor group_from_generator(const Matrix& x)
{
  if (!x.is_finite()) throw InvalidInput("group_from_generator: generator has non-finite entries");
  const auto [sym, anti] = split_sym_antisym(x);
  const Spectrum sp = sym_eigen(sym);
  const double top = sp.eigenvalues.front().real();
  const double bottom = sp.eigenvalues.back().real();
  const double zero_band = kZeroEigenvalueTolerance * spectral_norm(x);

  const bool positive = bottom > zero_band;
  const bool negative = top < -zero_band;
  if (!positive && !negative) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "group_from_generator: symmetric-part eigenvalues range over [" << bottom << ", " << top
        << "]; they must be nonzero with a common sign";
    throw HypothesisViolation(msg.str());
  }
  if (positive) return GroupDescriptor{x, x, sym, anti, bottom, top, +1};
  return describe(x, -1.0 * x, -1, -top, -bottom);
}

Vector orbit_point(const GroupDescriptor& g, double t, const Vector& v)
{
  if (!v.is_finite()) throw InvalidInput("orbit_point: vector has non-finite entries");
  if (t == 0.0) return v;
  return mat_exp(t * g.generator) * v;
}

double orbit_time(const GroupDescriptor& g, const Vector& xi)
{
  if (!xi.is_finite()) throw InvalidInput("orbit_time: vector has non-finite entries");
  const double r = xi.norm();
  if (r == 0.0) throw DomainError("orbit_time: xi = 0 has no orbit time");
  const double log_r = std::log(r);
  if (log_r == 0.0) return 0.0;

  // h(t) = ln||e^{-tX} xi|| decreases with slope in [-lambda_max, -lambda_min]
  auto h = [&](double t) { return std::log((mat_exp(-t * g.generator) * xi).norm()); };

  double lo = log_r / g.lambda_max;
  double hi = log_r / g.lambda_min;
  if (lo > hi) std::swap(lo, hi);
  const double pad = 1e-12 * std::max(1.0, std::abs(hi)) + 1e-14;
  lo -= pad;
  hi += pad;
  double h_lo = h(lo);
  double h_hi = h(hi);
  if (h_lo < 0.0 || h_hi > 0.0) {
    std::ostringstream msg;
    msg << "orbit_time: analytic bracket [" << lo << ", " << hi << "] does not enclose the root (h = " << h_lo
        << ", " << h_hi << ")";
    throw InvariantViolation(msg.str());
  }
  if (std::abs(h_lo) <= kLogResidual) return lo;
  if (std::abs(h_hi) <= kLogResidual) return hi;

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxBisection; ++it) {
    mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if (std::abs(hm) <= kLogResidual || mid == lo || mid == hi) return mid;
    if (hm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

OrbitCoordinates orbit_decompose(const GroupDescriptor& g, const Vector& xi)
{
  const double t = orbit_time(g, xi);
  return {t, t == 0.0 ? xi : mat_exp(-t * g.generator) * xi};
}

NormBounds norm_bounds_check(const GroupDescriptor& g, double t, const Vector& v)
{
  const double nv = v.norm();
  const double value = orbit_point(g, t, v).norm();
  const double slow = std::exp(t * g.lambda_min) * nv;
  const double fast = std::exp(t * g.lambda_max) * nv;
  if (t >= 0.0) return {slow, value, fast};
  return {fast, value, slow};
}

std::vector<double> continuity_probe(const GroupDescriptor& g, const Vector& xi, const Vector& direction, int k_max)
{
  const double t0 = orbit_time(g, xi);
  const Vector d = (1.0 / direction.norm()) * direction;
  std::vector<double> diffs;
  diffs.reserve(static_cast<std::size_t>(std::max(k_max, 0)));
  for (int k = 1; k <= k_max; ++k) diffs.push_back(std::abs(orbit_time(g, xi + std::ldexp(1.0, -k) * d) - t0));
  return diffs;
}

} // namespace dilation
