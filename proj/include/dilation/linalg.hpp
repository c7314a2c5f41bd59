#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dilation {

inline constexpr int kMaxDim = 8;

/// Fixed-capacity real vector, dimension 1..kMaxDim.
class Vector
{
public:
  Vector() = default;
  explicit Vector(int n);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::span<const double> values);

  int size() const { return n_; }
  double& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

  std::span<const double> values() const { return {data_.data(), static_cast<std::size_t>(n_)}; }
  std::vector<double> to_vector() const { return {data_.begin(), data_.begin() + n_}; }

  double norm() const;
  bool is_finite() const;
  bool is_zero() const;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s);

  friend bool operator==(const Vector& a, const Vector& b);

private:
  int n_ = 0;
  std::array<double, kMaxDim> data_{};
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector v);
double dot(const Vector& a, const Vector& b);

/// Dense real n x n matrix, n <= kMaxDim, row-major storage.
class Matrix
{
public:
  Matrix() = default;
  explicit Matrix(int n);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);
  static Matrix zero(int n) { return Matrix(n); }
  static Matrix diagonal(const Vector& d);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return n_; }
  double& operator()(int i, int j) { return data_[idx(i, j)]; }
  double operator()(int i, int j) const { return data_[idx(i, j)]; }

  std::vector<std::vector<double>> rows() const;

  Matrix transpose() const;
  double trace() const;
  Vector diag() const;

  double frobenius_norm() const;
  double max_abs() const;
  double one_norm() const;
  bool is_finite() const;
  bool is_symmetric(double rel_tol) const;
  bool is_diagonal(double rel_tol) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b);

private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * kMaxDim + j); }

  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim> data_{};
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);

/// Determinant by partially pivoted LU.
double determinant(const Matrix& a);

/// Inverse by partially pivoted LU; throws InvalidInput when a pivot vanishes.
Matrix inverse(const Matrix& a);

/// Solves a x = b.
Vector solve(const Matrix& a, const Vector& b);

/// Throws InvalidInput unless 1 <= n <= kMaxDim.
void check_dimension(int n);

} // namespace dilation
