#include <array>
#include "dilation/matkit.hpp"

#include "dilation/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace dilation {

namespace {

constexpr int kTaylorOrder = 18;

void require_finite(const Matrix& x, const char* what)
{
  if (!x.is_finite()) throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
}

double min_pairwise_gap(const std::vector<std::complex<double>>& ev)
{
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
  return gap;
}

bool descending(const std::complex<double>& a, const std::complex<double>& b)
{
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

// Splits the pair (a, b) = (x_ij, x_ji) into m, d with m + d == a and m - d == b in floating point.
std::pair<double, double> split_pair(double a, double b)
{
  const double m0 = 0.5 * (a + b);
  const double d0 = 0.5 * (a - b);
  if (m0 + d0 == a && m0 - d0 == b) return {m0, d0};
  double m = m0;
  for (int step = 0; step < 4; ++step) m = std::nextafter(m, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < 9; ++i, m = std::nextafter(m, std::numeric_limits<double>::infinity())) {
    for (double d : {a - m, m - b}) {
      double dd = d;
      for (int step = 0; step < 2; ++step) dd = std::nextafter(dd, -std::numeric_limits<double>::infinity());
      for (int k = 0; k < 5; ++k, dd = std::nextafter(dd, std::numeric_limits<double>::infinity()))
        if (m + dd == a && m - dd == b) return {m, dd};
    }
  }
  return {m0, d0};
}

// Householder reduction to upper Hessenberg form (eigenvalues only).
void to_hessenberg(Matrix& h)
{
  const int n = h.dim();
  std::array<double, kMaxDim> ort{};
  for (int m = 1; m < n - 1; ++m) {
    double scale = 0.0;
    for (int i = m; i < n; ++i) scale += std::abs(h(i, m - 1));
    if (scale == 0.0) continue;
    double hh = 0.0;
    for (int i = n - 1; i >= m; --i) {
      ort[static_cast<std::size_t>(i)] = h(i, m - 1) / scale;
      hh += ort[static_cast<std::size_t>(i)] * ort[static_cast<std::size_t>(i)];
    }
    double g = std::sqrt(hh);
    if (ort[static_cast<std::size_t>(m)] > 0) g = -g;
    hh -= ort[static_cast<std::size_t>(m)] * g;
    ort[static_cast<std::size_t>(m)] -= g;
    for (int j = m; j < n; ++j) {
      double f = 0.0;
      for (int i = n - 1; i >= m; --i) f += ort[static_cast<std::size_t>(i)] * h(i, j);
      f /= hh;
      for (int i = m; i < n; ++i) h(i, j) -= f * ort[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n; ++i) {
      double f = 0.0;
      for (int j = n - 1; j >= m; --j) f += ort[static_cast<std::size_t>(j)] * h(i, j);
      f /= hh;
      for (int j = m; j < n; ++j) h(i, j) -= f * ort[static_cast<std::size_t>(j)];
    }
    ort[static_cast<std::size_t>(m)] *= scale;
    h(m, m - 1) = scale * g;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, after EISPACK hqr.
std::vector<std::complex<double>> hessenberg_qr(Matrix h)
{
  const int size = h.dim();
  const int nn = size - 1;
  const int low = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIterPerEigenvalue = 100;

  std::vector<double> wr(static_cast<std::size_t>(size)), wi(static_cast<std::size_t>(size));
  auto WR = [&](int i) -> double& { return wr[static_cast<std::size_t>(i)]; };
  auto WI = [&](int i) -> double& { return wi[static_cast<std::size_t>(i)]; };

  double norm = 0.0;
  for (int i = 0; i < size; ++i)
    for (int j = std::max(i - 1, 0); j < size; ++j) norm += std::abs(h(i, j));

  int n = nn;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, w, x, y;
  int iter = 0;

  while (n >= low) {
    int l = n;
    while (l > low) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) < eps * s) break;
      --l;
    }

    if (l == n) {
      WR(n) = h(n, n) + exshift;
      WI(n) = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= 0) {
        z = (p >= 0) ? p + z : p - z;
        WR(n - 1) = x + z;
        WR(n) = WR(n - 1);
        if (z != 0.0) WR(n) = x - w / z;
        WI(n - 1) = 0.0;
        WI(n) = 0.0;
      } else {
        WR(n - 1) = x + p;
        WR(n) = x + p;
        WI(n - 1) = z;
        WI(n) = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      x = h(n, n);
      y = 0.0;
      w = 0.0;
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }
      if (iter == 10) {
        exshift += x;
        for (int i = low; i <= n; ++i) h(i, i) -= x;
        s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      if (iter == 30) {
        s = (y - x) / 2.0;
        s = s * s + w;
        if (s > 0) {
          s = std::sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / 2.0 + s);
          for (int i = low; i <= n; ++i) h(i, i) -= s;
          exshift += s;
          x = y = w = 0.964;
        }
      }
      if (++iter > kMaxIterPerEigenvalue) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "eigen_general: QR iteration did not converge for eigenvalue " << n << " after "
            << kMaxIterPerEigenvalue << " iterations (residual subdiagonal |h| = " << std::abs(h(n, n - 1))
            << ", scale " << norm << ")";
        throw NumericError(msg.str());
      }

      int m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)))))
          break;
        --m;
      }
      for (int i = m + 2; i <= n; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s == 0) continue;
        if (k != m)
          h(k, k - 1) = -s * x;
        else if (l != m)
          h(k, k - 1) = -h(k, k - 1);
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = h(k, j) + q * h(k + 1, j);
          if (notlast) {
            p += r * h(k + 2, j);
            h(k + 2, j) -= p * z;
          }
          h(k, j) -= p * x;
          h(k + 1, j) -= p * y;
        }
        for (int i = low; i <= std::min(n, k + 3); ++i) {
          p = x * h(i, k) + y * h(i, k + 1);
          if (notlast) {
            p += z * h(i, k + 2);
            h(i, k + 2) -= p * r;
          }
          h(i, k) -= p;
          h(i, k + 1) -= p * q;
        }
      }
    }
  }

  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) out.emplace_back(WR(i), WI(i));
  return out;
}

} // namespace

bool Spectrum::all_real() const
{
  return std::all_of(eigenvalues.begin(), eigenvalues.end(), [](const auto& z) { return z.imag() == 0.0; });
}

std::vector<double> Spectrum::real_parts() const
{
  std::vector<double> re;
  re.reserve(eigenvalues.size());
  for (const auto& z : eigenvalues) re.push_back(z.real());
  return re;
}

Matrix mat_exp(const Matrix& x, const Tolerances& tol)
{
  require_finite(x, "mat_exp");
  const int n = x.dim();
  const double norm = x.frobenius_norm();
  int squarings = 0;
  if (norm > tol.exp_scaled_norm)
    squarings = static_cast<int>(std::ceil(std::log2(norm / tol.exp_scaled_norm)));
  const Matrix scaled = std::ldexp(1.0, -squarings) * x;

  // Horner form of the truncated Taylor series: I + X(I + X/2(I + X/3(...))), ping-ponging two buffers
  std::array<Matrix, 2> buf{Matrix::identity(n), Matrix(n)};
  int cur = 0;
  for (int k = kTaylorOrder; k >= 1; --k) {
    const Matrix& e = buf[static_cast<std::size_t>(cur)];
    Matrix& next = buf[static_cast<std::size_t>(1 - cur)];
    const double inv_k = 1.0 / k;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += scaled(i, l) * e(l, j);
        next(i, j) = acc * inv_k + (i == j ? 1.0 : 0.0);
      }
    cur = 1 - cur;
  }
  for (int s = 0; s < squarings; ++s) {
    const Matrix& e = buf[static_cast<std::size_t>(cur)];
    Matrix& next = buf[static_cast<std::size_t>(1 - cur)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += e(i, l) * e(l, j);
        next(i, j) = acc;
      }
    cur = 1 - cur;
  }
  return buf[static_cast<std::size_t>(cur)];
}

LogResult mat_log_detailed(const Matrix& a, const Tolerances& tol)
{
  require_finite(a, "mat_log");
  const int n = a.dim();
  const Matrix b = a - Matrix::identity(n);
  const double radius = spectral_norm(b);
  if (radius >= 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mat_log: ||A - I|| = " << radius << " violates the series domain ||A - I|| < 1";
    throw DomainError(msg.str());
  }

  LogResult result{Matrix::zero(n), 0, radius > tol.log_slow_band};
  if (radius == 0.0) return result;

  constexpr int kMaxTerms = 2'000'000;
  Matrix power = b;
  const double tail_factor = 1.0 / (1.0 - radius);
  double bound = radius; // ||B||^m
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    result.value += (sign / m) * power;
    result.terms = m;
    bound *= radius;
    // remaining tail is bounded by ||B||^{m+1} / ((m+1)(1 - ||B||))
    if (bound / (m + 1) * tail_factor <= tol.log_term_ratio * std::max(result.value.frobenius_norm(), 1e-300)) {
      return result;
    }
    power = power * b;
  }
  throw NumericError("mat_log: series did not reach the stopping ratio within the term budget");
}

Matrix mat_log(const Matrix& a, const Tolerances& tol) { return mat_log_detailed(a, tol).value; }

Matrix lie_product_approx(const Matrix& x, const Matrix& y, int m)
{
  if (m < 1) throw InvalidInput("lie_product_approx: m must be >= 1, got " + std::to_string(m));
  if (x.dim() != y.dim()) throw InvalidInput("lie_product_approx: dimension mismatch");
  const Matrix step = mat_exp((1.0 / m) * x) * mat_exp((1.0 / m) * y);
  Matrix result = Matrix::identity(x.dim());
  Matrix base = step;
  for (unsigned k = static_cast<unsigned>(m); k != 0; k >>= 1) {
    if (k & 1u) result = result * base;
    if (k > 1) base = base * base;
  }
  return result;
}

std::pair<Matrix, Matrix> split_sym_antisym(const Matrix& x)
{
  const int n = x.dim();
  Matrix sym(n), anti(n);
  for (int i = 0; i < n; ++i) {
    sym(i, i) = x(i, i);
    for (int j = i + 1; j < n; ++j) {
      const auto [m, d] = split_pair(x(i, j), x(j, i));
      sym(i, j) = sym(j, i) = m;
      anti(i, j) = d;
      anti(j, i) = -d;
    }
  }
  return {sym, anti};
}

SymmetricEigen sym_eigen_decompose(const Matrix& s, const Tolerances& tol)
{
  require_finite(s, "sym_eigen");
  if (!s.is_symmetric(tol.symmetry)) throw InvalidInput("sym_eigen: matrix is not symmetric");
  const int n = s.dim();
  Matrix a = s;
  Matrix v = Matrix::identity(n);
  const double scale = s.frobenius_norm();
  constexpr int kMaxSweeps = 100;

  auto off_norm = [&] {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) off += a(i, j) * a(i, j);
    return std::sqrt(off);
  };

  int sweep = 0;
  for (; sweep <= kMaxSweeps; ++sweep) {
    const double off = off_norm();
    if (off <= tol.jacobi_off_diagonal * scale) break;
    if (sweep == kMaxSweeps) {
      std::ostringstream msg;
      msg << "sym_eigen: Jacobi sweeps did not converge (off-diagonal norm " << off << ")";
      throw NumericError(msg.str());
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  SymmetricEigen out{{}, Matrix(n), sweep};
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.spectrum.eigenvalues.emplace_back(a(src, src), 0.0);
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, src);
  }
  out.spectrum.gap = min_pairwise_gap(out.spectrum.eigenvalues);
  out.spectrum.is_real_diagonalizable = true;
  return out;
}

Spectrum sym_eigen(const Matrix& s, const Tolerances& tol) { return sym_eigen_decompose(s, tol).spectrum; }

Spectrum eigen_general(const Matrix& x, const Tolerances& tol)
{
  require_finite(x, "eigen_general");
  if (x.is_symmetric(tol.symmetry)) {
    // re-symmetrize exactly so the Jacobi path sees a symmetric input
    return sym_eigen(split_sym_antisym(x).first, tol);
  }
  Matrix h = x;
  to_hessenberg(h);
  Spectrum sp;
  sp.eigenvalues = hessenberg_qr(h);
  std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(), descending);
  sp.gap = min_pairwise_gap(sp.eigenvalues);
  sp.is_real_diagonalizable = sp.all_real() && sp.gap > tol.eigen_gap * spectral_norm(x);
  return sp;
}

double spectral_norm(const Matrix& x)
{
  require_finite(x, "spectral_norm");
  const int n = x.dim();
  const double scale = x.max_abs();
  if (scale == 0.0) return 0.0;
  const Matrix y = (1.0 / scale) * x;
  Matrix gram(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += y(k, i) * y(k, j);
      gram(i, j) = gram(j, i) = s;
    }
  const Spectrum sp = sym_eigen(gram);
  return scale * std::sqrt(std::max(sp.eigenvalues.front().real(), 0.0));
}

} // namespace dilation
