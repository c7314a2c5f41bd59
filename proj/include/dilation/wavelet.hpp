#pragma once

#include "dilation/linalg.hpp"
#include "dilation/orbit.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace dilation {

/// A continuous profile phi supported in [support_begin, support_end] with ||phi||_2 = 1.
///
/// Only `rescaled` can produce a profile whose norm differs from one; it exists for
/// negative controls in the verification suite.
class Profile
{
public:
  /// phi(t) = sqrt(2) sin(pi t) on [0, 1], zero elsewhere.
  static Profile raised_sine();
  /// Piecewise-linear interpolation of (t_i, phi_i); the end values must be zero.
  static Profile tabulated(std::vector<double> t, std::vector<double> values);
  /// Arbitrary continuous profile; support_begin may be -infinity.
  static Profile custom(std::function<double(double)> fn, double support_begin, double support_end, std::string name);

  Profile rescaled(double factor) const;

  double operator()(double t) const;

  const std::string& name() const { return name_; }
  double support_begin() const { return begin_; }
  double support_end() const { return end_; }
  double l2_norm() const { return norm_; }
  double scale() const { return scale_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& node_values() const { return values_; }

  friend bool operator==(const Profile& a, const Profile& b);

private:
  Profile() = default;
  void validate_unit_norm();

  std::string name_;
  std::function<double(double)> fn_;
  double begin_ = 0.0;
  double end_ = 0.0;
  double norm_ = 0.0;
  double scale_ = 1.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

Profile default_profile();

/// Squared L2 norm of a profile by adaptive quadrature (tail truncated for unbounded support).
double profile_l2_norm_squared(const Profile& p);

class WaveletSpec;

/// psi_hat(xi) = phi(orbit time of xi under the transpose group).
struct ProfileWavelet
{
  GroupDescriptor target;
  GroupDescriptor transpose;
  Profile profile;
};

/// psi_hat = indicator of the set swept by a unit parameter slab on each orbit of a diagonal group.
struct IndicatorWavelet
{
  Vector diagonal;       ///< entries of D as supplied
  int distinguished = 0; ///< original index swapped into the last chart coordinate
  int sign = 1;          ///< D is replaced by sign * D so that the trace is positive
  Vector chart_diagonal; ///< sign * D, permuted so the last entry is the distinguished one
};

/// psi_hat(xi) = base_hat((S^T)^{-1} xi): a wavelet for S Y S^{-1} built from one for Y.
struct TransportedWavelet
{
  std::shared_ptr<const WaveletSpec> base;
  Matrix similarity;
  Matrix inverse_transpose;
};

struct SupportInfo
{
  double radius = 0.0;
  /// True when the support is not contained in any ball (radius then covers the requested box only).
  bool unbounded = false;
};

class WaveletSpec
{
public:
  using Kind = std::variant<ProfileWavelet, IndicatorWavelet, TransportedWavelet>;

  explicit WaveletSpec(Kind kind);

  const Kind& kind() const { return kind_; }
  bool is_profile() const { return std::holds_alternative<ProfileWavelet>(kind_); }
  bool is_indicator() const { return std::holds_alternative<IndicatorWavelet>(kind_); }
  bool is_transported() const { return std::holds_alternative<TransportedWavelet>(kind_); }
  const ProfileWavelet& profile() const { return std::get<ProfileWavelet>(kind_); }
  const IndicatorWavelet& indicator() const { return std::get<IndicatorWavelet>(kind_); }
  const TransportedWavelet& transported() const { return std::get<TransportedWavelet>(kind_); }

  int dim() const;
  /// Cached support radius for unit chart truncation.
  const SupportInfo& support() const { return support_; }

  friend bool operator==(const WaveletSpec& a, const WaveletSpec& b);

private:
  Kind kind_;
  SupportInfo support_;
};

WaveletSpec make_profile_wavelet(const Matrix& generator, Profile profile = default_profile());
WaveletSpec make_indicator_wavelet(const Vector& diagonal);
WaveletSpec make_indicator_wavelet(const Matrix& diagonal_matrix);
WaveletSpec make_transported_wavelet(const WaveletSpec& base, const Matrix& similarity);

double profile_wavelet_eval(const WaveletSpec& spec, const Vector& xi);
double indicator_wavelet_eval(const WaveletSpec& spec, const Vector& xi);
double transported_wavelet_eval(const WaveletSpec& spec, const Vector& xi);
/// Dispatches on the spec's kind.
double evaluate(const WaveletSpec& spec, const Vector& xi);

/// Profile kind: exact radius max(1, e^{N lambda_max}). Indicator kind: radius of the image of the
/// chart region restricted to |u| <= u_bound, flagged unbounded. Transported: ||S|| times the base radius.
SupportInfo support_radius(const WaveletSpec& spec, double u_bound = 1.0);

/// The generator of the group the spec is a wavelet for.
Matrix group_generator(const WaveletSpec& spec);

/// Chart coordinates (u, tau) of xi for an indicator spec: xi = e^{tau D}(u, 1) up to the sign of xi_n,
/// expressed in the permuted, trace-positive frame.
struct IndicatorChart
{
  bool on_hyperplane = false; ///< xi_n == 0, no chart point
  double tau = 0.0;
  std::vector<double> u;      ///< the n - 1 transverse coordinates
  double u_norm = 0.0;
};

IndicatorChart indicator_chart(const IndicatorWavelet& w, const Vector& xi);

/// Relative tolerance for the construction-time unit-norm check.
inline constexpr double kProfileNormTolerance = 1e-10;

} // namespace dilation
