#include "dilation/linalg.hpp"

#include "dilation/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dilation {

void check_dimension(int n)
{
  if (n < 1 || n > kMaxDim) {
    throw InvalidInput("dimension " + std::to_string(n) + " outside [1, " + std::to_string(kMaxDim) + "]");
  }
}

// ---------------------------------------------------------------- Vector

Vector::Vector(int n) : n_(n) { check_dimension(n); }

Vector::Vector(std::initializer_list<double> values) : n_(static_cast<int>(values.size()))
{
  check_dimension(n_);
  std::copy(values.begin(), values.end(), data_.begin());
}

Vector::Vector(std::span<const double> values) : n_(static_cast<int>(values.size()))
{
  check_dimension(n_);
  std::copy(values.begin(), values.end(), data_.begin());
}

double Vector::norm() const
{
  // scaled to avoid overflow for the large orbit points produced by sweeps
  double scale = 0.0;
  for (int i = 0; i < n_; ++i) scale = std::max(scale, std::abs((*this)[i]));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double x = (*this)[i] / scale;
    s += x * x;
  }
  return scale * std::sqrt(s);
}

bool Vector::is_finite() const
{
  for (int i = 0; i < n_; ++i)
    if (!std::isfinite((*this)[i])) return false;
  return true;
}

bool Vector::is_zero() const
{
  for (int i = 0; i < n_; ++i)
    if ((*this)[i] != 0.0) return false;
  return true;
}

Vector& Vector::operator+=(const Vector& o)
{
  for (int i = 0; i < n_; ++i) (*this)[i] += o[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o)
{
  for (int i = 0; i < n_; ++i) (*this)[i] -= o[i];
  return *this;
}

Vector& Vector::operator*=(double s)
{
  for (int i = 0; i < n_; ++i) (*this)[i] *= s;
  return *this;
}

bool operator==(const Vector& a, const Vector& b)
{
  if (a.n_ != b.n_) return false;
  return std::equal(a.data_.begin(), a.data_.begin() + a.n_, b.data_.begin());
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector v) { return v *= s; }

double dot(const Vector& a, const Vector& b)
{
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(int n) : n_(n) { check_dimension(n); }

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(static_cast<int>(rows.size()))
{
  check_dimension(n_);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw InvalidInput("matrix rows must all have length n");
    int j = 0;
    for (double x : row) (*this)(i, j++) = x;
    ++i;
  }
}

Matrix Matrix::identity(int n)
{
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d)
{
  Matrix m(d.size());
  for (int i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows)
{
  Matrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.n_)
      throw InvalidInput("row " + std::to_string(i) + " has length " +
                         std::to_string(rows[static_cast<std::size_t>(i)].size()) + ", expected " +
                         std::to_string(m.n_));
    for (int j = 0; j < m.n_; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::vector<std::vector<double>> Matrix::rows() const
{
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n_), std::vector<double>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const
{
  Matrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const
{
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

Vector Matrix::diag() const
{
  Vector d(n_);
  for (int i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

double Matrix::frobenius_norm() const
{
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

double Matrix::max_abs() const
{
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double Matrix::one_norm() const
{
  double m = 0.0;
  for (int j = 0; j < n_; ++j) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

bool Matrix::is_finite() const
{
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!std::isfinite((*this)(i, j))) return false;
  return true;
}

bool Matrix::is_symmetric(double rel_tol) const
{
  const double scale = max_abs();
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
  return true;
}

bool Matrix::is_diagonal(double rel_tol) const
{
  const double scale = max_abs();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && std::abs((*this)(i, j)) > rel_tol * scale) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o)
{
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) += o(i, j);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o)
{
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) -= o(i, j);
  return *this;
}

Matrix& Matrix::operator*=(double s)
{
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
  return *this;
}

bool operator==(const Matrix& a, const Matrix& b)
{
  if (a.n_ != b.n_) return false;
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b)
{
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v)
{
  const int n = a.dim();
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

namespace {

struct LU
{
  Matrix lu;
  std::array<int, kMaxDim> perm{};
  int sign = 1;
  bool singular = false;
};

LU factor(const Matrix& a)
{
  LU f{a};
  const int n = a.dim();
  for (int i = 0; i < n; ++i) f.perm[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(p, k))) p = i;
    if (std::abs(f.lu(p, k)) < 1e-300) {
      f.singular = true;
      return f;
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(p, j), f.lu(k, j));
      std::swap(f.perm[static_cast<std::size_t>(p)], f.perm[static_cast<std::size_t>(k)]);
      f.sign = -f.sign;
    }
    for (int i = k + 1; i < n; ++i) {
      const double m = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = m;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

Vector lu_solve(const LU& f, const Vector& b)
{
  const int n = b.size();
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[static_cast<std::size_t>(i)]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

} // namespace

double determinant(const Matrix& a)
{
  const LU f = factor(a);
  if (f.singular) return 0.0;
  double d = f.sign;
  for (int i = 0; i < a.dim(); ++i) d *= f.lu(i, i);
  return d;
}

Matrix inverse(const Matrix& a)
{
  const LU f = factor(a);
  if (f.singular) throw InvalidInput("matrix is singular");
  const int n = a.dim();
  Matrix inv(n);
  for (int j = 0; j < n; ++j) {
    Vector e(n);
    e[j] = 1.0;
    const Vector col = lu_solve(f, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

Vector solve(const Matrix& a, const Vector& b)
{
  const LU f = factor(a);
  if (f.singular) throw InvalidInput("matrix is singular");
  return lu_solve(f, b);
}

} // namespace dilation
