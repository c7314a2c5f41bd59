#include "dilation/admit.hpp"

#include "dilation/error.hpp"
#include "dilation/matkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace dilation {

namespace {

constexpr double kStrictZeroBand = 1e-3;

constexpr std::array<std::pair<Status, std::string_view>, 3> kStatusNames{{
    {Status::Admissible, "Admissible"},
    {Status::NotAdmissible, "NotAdmissible"},
    {Status::Unknown, "Unknown"},
}};

constexpr std::array<std::pair<Criterion, std::string_view>, 5> kCriterionNames{{
    {Criterion::TwoByTwoTrace, "TwoByTwoTrace"},
    {Criterion::DiagonalizableTrace, "DiagonalizableTrace"},
    {Criterion::SymmetricPartSign, "SymmetricPartSign"},
    {Criterion::ComplexDiagSign, "ComplexDiagSign"},
    {Criterion::DiagonalTrace, "DiagonalTrace"},
}};

constexpr const char* kRefTwoByTwo = "2x2 characterization: G_X admissible iff tr(X) != 0";
constexpr const char* kRefDiagonalizable = "real-diagonalizable X: G_X admissible iff tr(X) != 0";
constexpr const char* kRefDiagonal = "diagonal D: G_D admissible iff tr(D) != 0";
constexpr const char* kRefSymmetricPart =
    "symmetric part (X + X^T)/2 with nonzero same-sign eigenvalues implies G_X admissible";
constexpr const char* kRefComplexDiag =
    "X diagonalizable over C with nonzero same-sign eigenvalue real parts implies G_X admissible";
constexpr const char* kRefUnknown = "no applicable criterion";

void add_list(std::map<std::string, double>& cert, const std::string& prefix, const std::vector<double>& values)
{
  for (std::size_t i = 0; i < values.size(); ++i) cert[prefix + "_" + std::to_string(i)] = values[i];
}

} // namespace

std::string_view to_string(Status s)
{
  for (const auto& [k, name] : kStatusNames)
    if (k == s) return name;
  return "Unknown";
}

std::string_view to_string(Criterion c)
{
  for (const auto& [k, name] : kCriterionNames)
    if (k == c) return name;
  return "";
}

Status status_from_string(std::string_view s)
{
  for (const auto& [k, name] : kStatusNames)
    if (name == s) return k;
  throw InvalidInput("unknown status '" + std::string(s) + "'");
}

Criterion criterion_from_string(std::string_view s)
{
  for (const auto& [k, name] : kCriterionNames)
    if (name == s) return k;
  throw InvalidInput("unknown criterion '" + std::string(s) + "'");
}

Verdict characterize_2x2(const Matrix& x, double tol)
{
  if (x.dim() != 2) throw InvalidInput("characterize_2x2: expected a 2x2 matrix, got n = " + std::to_string(x.dim()));
  if (!x.is_finite()) throw InvalidInput("characterize_2x2: non-finite entries");
  const double tr = x.trace();
  const double threshold = tol * std::max(1.0, spectral_norm(x));
  Verdict v;
  v.status = std::abs(tr) > threshold ? Status::Admissible : Status::NotAdmissible;
  v.criterion = Criterion::TwoByTwoTrace;
  v.certificate = {{"trace", tr}, {"threshold", threshold}, {"determinant", determinant(x)}};
  v.reference = kRefTwoByTwo;
  return v;
}

std::optional<Verdict> criterion_symmetric_part(const Matrix& x, double tol)
{
  const auto sym = split_sym_antisym(x).first;
  const Spectrum sp = sym_eigen(sym);
  const std::vector<double> ev = sp.real_parts();
  const double threshold = tol * spectral_norm(x);
  const double min_abs = std::abs(*std::min_element(ev.begin(), ev.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  const bool same_sign = ev.front() * ev.back() > 0.0;
  if (!(min_abs > threshold && same_sign)) return std::nullopt;

  Verdict v;
  v.status = Status::Admissible;
  v.criterion = Criterion::SymmetricPartSign;
  add_list(v.certificate, "sym_eigenvalue", ev);
  v.certificate["min_abs_eigenvalue"] = min_abs;
  v.certificate["threshold"] = threshold;
  v.certificate["trace"] = x.trace();
  v.reference = kRefSymmetricPart;
  return v;
}

std::optional<Verdict> criterion_diagonalizable_trace(const Matrix& x, double tol)
{
  const Spectrum sp = eigen_general(x);
  if (!sp.is_real_diagonalizable) return std::nullopt;
  const double tr = x.trace();
  const double threshold = tol * std::max(1.0, spectral_norm(x));
  const double zero_band = threshold * kStrictZeroBand;

  Verdict v;
  if (std::abs(tr) > threshold)
    v.status = Status::Admissible;
  else if (std::abs(tr) <= zero_band)
    v.status = Status::NotAdmissible;
  else
    return std::nullopt;

  v.criterion = Criterion::DiagonalizableTrace;
  v.reference = x.is_diagonal(0.0) ? kRefDiagonal : kRefDiagonalizable;
  v.certificate["trace"] = tr;
  v.certificate["threshold"] = threshold;
  v.certificate["zero_band"] = zero_band;
  v.certificate["eigen_gap"] = sp.gap;
  add_list(v.certificate, "eigenvalue", sp.real_parts());
  return v;
}

std::optional<Verdict> criterion_complex_diag(const Matrix& x, double tol)
{
  const Spectrum sp = eigen_general(x);
  const double norm = spectral_norm(x);
  if (!(sp.gap > kDefaultTolerances.eigen_gap * norm)) return std::nullopt;
  const std::vector<double> re = sp.real_parts();
  const double threshold = tol * norm;
  const bool all_positive = std::all_of(re.begin(), re.end(), [&](double a) { return a > threshold; });
  const bool all_negative = std::all_of(re.begin(), re.end(), [&](double a) { return a < -threshold; });
  if (!all_positive && !all_negative) return std::nullopt;

  Verdict v;
  v.status = Status::Admissible;
  v.criterion = Criterion::ComplexDiagSign;
  v.reference = kRefComplexDiag;
  add_list(v.certificate, "eigenvalue_real", re);
  std::vector<double> im;
  for (const auto& z : sp.eigenvalues) im.push_back(z.imag());
  add_list(v.certificate, "eigenvalue_imag", im);
  v.certificate["eigen_gap"] = sp.gap;
  v.certificate["threshold"] = threshold;
  v.certificate["trace"] = x.trace();
  return v;
}

Verdict decide(const Matrix& x, double tol)
{
  if (!x.is_finite()) throw InvalidInput("decide: non-finite entries");
  if (x.dim() == 2) return characterize_2x2(x, tol);
  if (auto v = criterion_diagonalizable_trace(x, tol)) return *v;
  if (auto v = criterion_symmetric_part(x, tol)) return *v;
  if (auto v = criterion_complex_diag(x, tol)) return *v;

  Verdict v;
  v.status = Status::Unknown;
  v.reference = kRefUnknown;
  const Spectrum sp = eigen_general(x);
  v.certificate["trace"] = x.trace();
  v.certificate["eigen_gap"] = sp.gap;
  v.certificate["real_diagonalizable"] = sp.is_real_diagonalizable ? 1.0 : 0.0;
  add_list(v.certificate, "eigenvalue_real", sp.real_parts());
  const Spectrum sym = sym_eigen(split_sym_antisym(x).first);
  add_list(v.certificate, "sym_eigenvalue", sym.real_parts());
  return v;
}

} // namespace dilation
