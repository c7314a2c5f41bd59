#pragma once

#include "dilation/linalg.hpp"

#include <vector>

namespace dilation {

/// A generator X = M + A whose symmetric part M has a same-sign nonzero spectrum.
///
/// When that spectrum is negative the group is reparameterized by t -> -t, so `generator`
/// always has positive symmetric-part eigenvalues; `sign` records the reversal and
/// `original` keeps the matrix the caller supplied. Both parameterizations describe the
/// same set of matrices {e^{tX}}.
struct GroupDescriptor
{
  Matrix original;
  Matrix generator;
  Matrix sym_part;
  Matrix antisym_part;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int sign = 1;

  int dim() const { return generator.dim(); }
  /// Descriptor of the transpose group G_{X^T}; same spectrum bounds and sign.
  GroupDescriptor transposed() const;
};

struct OrbitCoordinates
{
  double t = 0.0;
  Vector v;
};

struct NormBounds
{
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

/// Relative threshold below which a symmetric-part eigenvalue counts as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-9;

GroupDescriptor group_from_generator(const Matrix& x);

/// e^{t X} v for the normalized generator.
Vector orbit_point(const GroupDescriptor& g, double t, const Vector& v);

/// The unique t with ||e^{-tX} xi|| = 1.
double orbit_time(const GroupDescriptor& g, const Vector& xi);

/// (t, v) with xi = e^{tX} v and ||v|| = 1.
OrbitCoordinates orbit_decompose(const GroupDescriptor& g, const Vector& xi);

/// (e^{t lambda_min}||v||, ||e^{tX}v||, e^{t lambda_max}||v||), with the outer roles swapped for t < 0.
NormBounds norm_bounds_check(const GroupDescriptor& g, double t, const Vector& v);

/// |orbit_time(xi + 2^{-k} d) - orbit_time(xi)| for k = 1..k_max and a fixed unit direction d.
std::vector<double> continuity_probe(const GroupDescriptor& g, const Vector& xi, const Vector& direction, int k_max);

} // namespace dilation
