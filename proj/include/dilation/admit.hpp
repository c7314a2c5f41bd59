#pragma once

#include "dilation/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace dilation {

enum class Status
{
  Admissible,
  NotAdmissible,
  Unknown,
};

enum class Criterion
{
  TwoByTwoTrace,
  DiagonalizableTrace,
  SymmetricPartSign,
  ComplexDiagSign,
  DiagonalTrace,
};

std::string_view to_string(Status s);
std::string_view to_string(Criterion c);
Status status_from_string(std::string_view s);
Criterion criterion_from_string(std::string_view s);

/// An admissibility decision plus the numbers that justify it.
struct Verdict
{
  Status status = Status::Unknown;
  std::optional<Criterion> criterion;
  /// Named scalars that reproduce the decision, e.g. "trace" and "threshold".
  std::map<std::string, double> certificate;
  /// Short description of the rule behind the decision (serialized as "paper_ref").
  std::string reference;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline constexpr double kDefaultDecisionTolerance = 1e-9;

/// Complete characterization for n = 2: admissible iff tr(X) != 0.
Verdict characterize_2x2(const Matrix& x, double tol = kDefaultDecisionTolerance);

/// Sufficient criterion: symmetric-part eigenvalues nonzero with a common sign.
std::optional<Verdict> criterion_symmetric_part(const Matrix& x, double tol = kDefaultDecisionTolerance);

/// For provably real-diagonalizable X: admissible iff tr(X) != 0, with an abstention band near zero.
std::optional<Verdict> criterion_diagonalizable_trace(const Matrix& x, double tol = kDefaultDecisionTolerance);

/// Sufficient criterion: distinct eigenvalues whose real parts are nonzero with a common sign.
std::optional<Verdict> criterion_complex_diag(const Matrix& x, double tol = kDefaultDecisionTolerance);

/// Runs, in order: 2x2 characterization, real-diagonalizable trace, symmetric-part sign,
/// complex-diagonalizable sign. The first conclusive criterion wins; otherwise Unknown.
Verdict decide(const Matrix& x, double tol = kDefaultDecisionTolerance);

} // namespace dilation
