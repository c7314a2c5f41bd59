#include "dilation/wavelet.hpp"

#include "dilation/error.hpp"
#include "dilation/matkit.hpp"
#include "dilation/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dilation {

namespace {

constexpr double kMaxSimilarityCondition = 1e12;

double raised_sine(double t)
{
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::numbers::sqrt2 * std::sin(std::numbers::pi * t);
}

double interpolate(const std::vector<double>& t, const std::vector<double>& v, double x)
{
  if (x <= t.front() || x >= t.back()) return 0.0;
  const auto it = std::upper_bound(t.begin(), t.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - t.begin());
  const double w = (x - t[j - 1]) / (t[j] - t[j - 1]);
  return (1.0 - w) * v[j - 1] + w * v[j];
}

Vector permute_last(const Vector& xi, int distinguished)
{
  Vector p = xi;
  std::swap(p[distinguished], p[xi.size() - 1]);
  return p;
}

SupportInfo compute_support(const WaveletSpec::Kind& kind, double u_bound);

} // namespace

// ---------------------------------------------------------------- Profile

Profile Profile::raised_sine()
{
  Profile p;
  p.name_ = "raised-sine";
  p.fn_ = dilation::raised_sine;
  p.begin_ = 0.0;
  p.end_ = 1.0;
  p.validate_unit_norm();
  return p;
}

Profile Profile::tabulated(std::vector<double> t, std::vector<double> values)
{
  if (t.size() < 3 || t.size() != values.size())
    throw InvalidInput("tabulated profile needs at least three nodes and matching value count");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i + 1] > t[i])) throw InvalidInput("tabulated profile nodes must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidInput("tabulated profile has non-finite values");
  if (values.front() != 0.0 || values.back() != 0.0)
    throw InvalidInput("tabulated profile must vanish at both ends to be continuous");
  Profile p;
  p.name_ = "tabulated";
  p.begin_ = t.front();
  p.end_ = t.back();
  p.nodes_ = std::move(t);
  p.values_ = std::move(values);
  p.fn_ = [nodes = p.nodes_, vals = p.values_](double x) { return interpolate(nodes, vals, x); };
  p.validate_unit_norm();
  return p;
}

Profile Profile::custom(std::function<double(double)> fn, double support_begin, double support_end, std::string name)
{
  if (!std::isfinite(support_end)) throw InvalidInput("custom profile needs a finite support end N");
  if (!(support_begin < support_end)) throw InvalidInput("custom profile support must be a nonempty interval");
  Profile p;
  p.name_ = std::move(name);
  p.fn_ = std::move(fn);
  p.begin_ = support_begin;
  p.end_ = support_end;
  p.validate_unit_norm();
  return p;
}

Profile Profile::rescaled(double factor) const
{
  Profile p = *this;
  p.scale_ = scale_ * factor;
  p.norm_ = norm_ * std::abs(factor);
  return p;
}

double Profile::operator()(double t) const
{
  if (t > end_ || t < begin_) return 0.0;
  return scale_ * fn_(t);
}

void Profile::validate_unit_norm()
{
  const double sq = profile_l2_norm_squared(*this);
  norm_ = std::sqrt(sq);
  if (std::abs(sq - 1.0) > kProfileNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "profile '" << name_ << "' has squared L2 norm " << sq << ", expected 1";
    throw InvalidInput(msg.str());
  }
}

bool operator==(const Profile& a, const Profile& b)
{
  return a.name_ == b.name_ && a.begin_ == b.begin_ && a.end_ == b.end_ && a.scale_ == b.scale_ &&
         a.nodes_ == b.nodes_ && a.values_ == b.values_;
}

Profile default_profile() { return Profile::raised_sine(); }

double profile_l2_norm_squared(const Profile& p)
{
  auto sq = [&](double t) {
    const double v = p(t);
    return v * v;
  };
  if (!p.nodes().empty()) {
    // exact for piecewise-linear profiles: integral of the squared hat segments
    const auto& t = p.nodes();
    const auto& v = p.node_values();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      s += (t[i + 1] - t[i]) * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]) / 3.0;
    return s * p.scale() * p.scale();
  }
  if (std::isfinite(p.support_begin()))
    return integrate_adaptive(sq, p.support_begin(), p.support_end(), 1e-14, 4).value;

  double total = integrate_adaptive(sq, p.support_end() - 1.0, p.support_end(), 1e-14, 4).value;
  double lo = p.support_end() - 1.0;
  for (double width = 1.0; width < 1e6; width *= 2.0) {
    const double piece = integrate_adaptive(sq, lo - width, lo, 1e-15, 4).value;
    total += piece;
    lo -= width;
    if (std::abs(piece) < 1e-16 * std::max(total, 1.0) && width >= 16.0) break;
  }
  return total;
}

// ---------------------------------------------------------------- WaveletSpec

WaveletSpec::WaveletSpec(Kind kind) : kind_(std::move(kind)), support_(compute_support(kind_, 1.0)) {}

int WaveletSpec::dim() const
{
  return std::visit(
      [](const auto& w) -> int {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ProfileWavelet>)
          return w.target.dim();
        else if constexpr (std::is_same_v<T, IndicatorWavelet>)
          return w.diagonal.size();
        else
          return w.similarity.dim();
      },
      kind_);
}

bool operator==(const WaveletSpec& a, const WaveletSpec& b)
{
  if (a.kind_.index() != b.kind_.index()) return false;
  if (a.is_profile())
    return a.profile().target.original == b.profile().target.original && a.profile().profile == b.profile().profile;
  if (a.is_indicator()) return a.indicator().diagonal == b.indicator().diagonal;
  return a.transported().similarity == b.transported().similarity &&
         *a.transported().base == *b.transported().base;
}

WaveletSpec make_profile_wavelet(const Matrix& generator, Profile profile)
{
  GroupDescriptor target = group_from_generator(generator);
  GroupDescriptor transpose = target.transposed();
  return WaveletSpec(ProfileWavelet{std::move(target), std::move(transpose), std::move(profile)});
}

WaveletSpec make_indicator_wavelet(const Vector& diagonal)
{
  if (!diagonal.is_finite()) throw InvalidInput("indicator wavelet: non-finite diagonal");
  const int n = diagonal.size();
  double tr = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    tr += diagonal[i];
    scale = std::max(scale, std::abs(diagonal[i]));
  }
  if (!(std::abs(tr) > 1e-12 * scale) || scale == 0.0)
    throw InvalidInput("indicator wavelet: tr(D) must be nonzero (the trace-zero group is not admissible)");

  IndicatorWavelet w;
  w.diagonal = diagonal;
  w.sign = tr > 0.0 ? 1 : -1;
  w.distinguished = n - 1;
  if (diagonal[n - 1] == 0.0) {
    for (int i = n - 1; i >= 0; --i)
      if (diagonal[i] != 0.0) {
        w.distinguished = i;
        break;
      }
  }
  w.chart_diagonal = static_cast<double>(w.sign) * permute_last(diagonal, w.distinguished);
  return WaveletSpec(std::move(w));
}

WaveletSpec make_indicator_wavelet(const Matrix& diagonal_matrix)
{
  if (!diagonal_matrix.is_diagonal(0.0)) throw InvalidInput("indicator wavelet: D must be diagonal");
  return make_indicator_wavelet(diagonal_matrix.diag());
}

WaveletSpec make_transported_wavelet(const WaveletSpec& base, const Matrix& similarity)
{
  if (similarity.dim() != base.dim()) throw InvalidInput("transported wavelet: similarity dimension mismatch");
  if (!similarity.is_finite()) throw InvalidInput("transported wavelet: similarity has non-finite entries");
  Matrix inv;
  try {
    inv = inverse(similarity);
  } catch (const InvalidInput&) {
    throw InvalidInput("transported wavelet: similarity S is singular");
  }
  const double cond = spectral_norm(similarity) * spectral_norm(inv);
  if (!std::isfinite(cond) || cond > kMaxSimilarityCondition)
    throw InvalidInput("transported wavelet: similarity S is numerically singular (condition number " +
                       std::to_string(cond) + ")");
  return WaveletSpec(TransportedWavelet{std::make_shared<const WaveletSpec>(base), similarity, inv.transpose()});
}

// ---------------------------------------------------------------- evaluation

IndicatorChart indicator_chart(const IndicatorWavelet& w, const Vector& xi)
{
  const int n = xi.size();
  const Vector p = permute_last(xi, w.distinguished);
  const Vector& d = w.chart_diagonal;
  IndicatorChart c;
  if (p[n - 1] == 0.0) {
    c.on_hyperplane = true;
    return c;
  }
  c.tau = std::log(std::abs(p[n - 1])) / d[n - 1];
  c.u.resize(static_cast<std::size_t>(n - 1));
  double s = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    const double ui = p[i] * std::exp(-c.tau * d[i]);
    c.u[static_cast<std::size_t>(i)] = ui;
    s += ui * ui;
  }
  c.u_norm = std::sqrt(s);
  return c;
}

double profile_wavelet_eval(const WaveletSpec& spec, const Vector& xi)
{
  if (!spec.is_profile()) throw InvalidInput("profile_wavelet_eval: spec is not a profile wavelet");
  if (xi.size() != spec.dim()) throw InvalidInput("profile_wavelet_eval: dimension mismatch");
  const double r = xi.norm();
  if (r == 0.0 || r > spec.support().radius) return 0.0;
  const ProfileWavelet& w = spec.profile();
  return w.profile(orbit_time(w.transpose, xi));
}

double indicator_wavelet_eval(const WaveletSpec& spec, const Vector& xi)
{
  if (!spec.is_indicator()) throw InvalidInput("indicator_wavelet_eval: spec is not an indicator wavelet");
  if (xi.size() != spec.dim()) throw InvalidInput("indicator_wavelet_eval: dimension mismatch");
  const IndicatorChart c = indicator_chart(spec.indicator(), xi);
  if (c.on_hyperplane) return 0.0;
  return (c.tau >= -(c.u_norm + 1.0) && c.tau <= -c.u_norm) ? 1.0 : 0.0;
}

double transported_wavelet_eval(const WaveletSpec& spec, const Vector& xi)
{
  if (!spec.is_transported()) throw InvalidInput("transported_wavelet_eval: spec is not a transported wavelet");
  if (xi.size() != spec.dim()) throw InvalidInput("transported_wavelet_eval: dimension mismatch");
  const TransportedWavelet& w = spec.transported();
  return evaluate(*w.base, w.inverse_transpose * xi);
}

double evaluate(const WaveletSpec& spec, const Vector& xi)
{
  if (spec.is_profile()) return profile_wavelet_eval(spec, xi);
  if (spec.is_indicator()) return indicator_wavelet_eval(spec, xi);
  return transported_wavelet_eval(spec, xi);
}

SupportInfo support_radius(const WaveletSpec& spec, double u_bound)
{
  return compute_support(spec.kind(), u_bound);
}

Matrix group_generator(const WaveletSpec& spec)
{
  if (spec.is_profile()) return spec.profile().target.original;
  if (spec.is_indicator()) return Matrix::diagonal(spec.indicator().diagonal);
  const TransportedWavelet& w = spec.transported();
  return w.similarity * group_generator(*w.base) * inverse(w.similarity);
}

namespace {

SupportInfo compute_support(const WaveletSpec::Kind& kind, double u_bound)
{
  if (const auto* p = std::get_if<ProfileWavelet>(&kind)) {
    const double lambda1 = p->transpose.lambda_max;
    return {std::max(1.0, std::exp(p->profile.support_end() * lambda1)), false};
  }
  if (const auto* ind = std::get_if<IndicatorWavelet>(&kind)) {
    // |xi_i| = |u_i| e^{tau d_i} and |xi_n| = e^{tau d_n} with tau in [-(|u|+1), -|u|]
    const Vector& d = ind->chart_diagonal;
    const int n = d.size();
    const double big_tau = u_bound + 1.0;
    double s = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      double b;
      if (d[i] > 0.0)
        b = std::min(u_bound, 1.0 / (std::numbers::e * d[i]));
      else if (d[i] < 0.0)
        b = u_bound * std::exp(big_tau * -d[i]);
      else
        b = u_bound;
      s += b * b;
    }
    const double last = d[n - 1] > 0.0 ? 1.0 : std::exp(big_tau * -d[n - 1]);
    s += last * last;
    return {std::sqrt(s), true};
  }
  const auto& t = std::get<TransportedWavelet>(kind);
  const SupportInfo base = compute_support(t.base->kind(), u_bound);
  return {spectral_norm(t.similarity) * base.radius, base.unbounded};
}

} // namespace

} // namespace dilation
