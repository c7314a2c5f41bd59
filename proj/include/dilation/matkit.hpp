#pragma once

#include "dilation/linalg.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace dilation {

/// Numerical thresholds shared by the matrix kernels and the decision engine.
struct Tolerances
{
  double symmetry = 1e-12;        ///< relative, for "is this matrix symmetric"
  double eigen_gap = 1e-8;        ///< relative to ||X||, below which eigenvalues count as repeated
  double jacobi_off_diagonal = 1e-14;
  double exp_scaled_norm = 0.5;   ///< scaling-and-squaring target for ||X / 2^s||
  double log_slow_band = 0.9;     ///< ||A - I|| above this converges slowly
  double log_term_ratio = 1e-16;
};

inline constexpr Tolerances kDefaultTolerances{};

struct Spectrum
{
  /// Sorted by descending real part, then descending imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  bool is_real_diagonalizable = false;
  /// Smallest pairwise eigenvalue distance; +inf for n = 1.
  double gap = 0.0;

  bool all_real() const;
  std::vector<double> real_parts() const;
};

struct SymmetricEigen
{
  Spectrum spectrum;
  /// Columns are orthonormal eigenvectors in the order of spectrum.eigenvalues.
  Matrix vectors;
  int sweeps = 0;
};

struct LogResult
{
  Matrix value;
  int terms = 0;
  /// ||A - I|| lies in the band where the series converges slowly.
  bool slow_convergence = false;
};

Matrix mat_exp(const Matrix& x, const Tolerances& tol = kDefaultTolerances);

/// Principal logarithm by the Mercator series; requires ||A - I|| < 1 in the spectral norm.
Matrix mat_log(const Matrix& a, const Tolerances& tol = kDefaultTolerances);
LogResult mat_log_detailed(const Matrix& a, const Tolerances& tol = kDefaultTolerances);

/// (e^{X/m} e^{Y/m})^m.
Matrix lie_product_approx(const Matrix& x, const Matrix& y, int m);

/// Returns (M, A) with M symmetric, A antisymmetric and M + A == X.
std::pair<Matrix, Matrix> split_sym_antisym(const Matrix& x);

Spectrum sym_eigen(const Matrix& s, const Tolerances& tol = kDefaultTolerances);
SymmetricEigen sym_eigen_decompose(const Matrix& s, const Tolerances& tol = kDefaultTolerances);

/// Eigenvalues of a general real matrix via Hessenberg reduction and Francis double-shift QR.
Spectrum eigen_general(const Matrix& x, const Tolerances& tol = kDefaultTolerances);

double spectral_norm(const Matrix& x);

} // namespace dilation
