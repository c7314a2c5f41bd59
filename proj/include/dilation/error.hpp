#pragma once

#include <stdexcept>
#include <string>

namespace dilation {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract arguments (non-finite entries, wrong shape, singular similarity).
class InvalidInput : public Error
{
public:
  using Error::Error;
};

/// A serialized document is missing a field or has one of the wrong type.
class ParseError : public InvalidInput
{
public:
  using InvalidInput::InvalidInput;
};

/// Argument outside the domain of a mathematical function (log series radius, zero frequency).
class DomainError : public Error
{
public:
  using Error::Error;
};

/// An iterative kernel failed to converge.
class NumericError : public Error
{
public:
  using Error::Error;
};

/// The generator does not satisfy the same-sign symmetric-part hypothesis.
class HypothesisViolation : public Error
{
public:
  using Error::Error;
};

/// An integral over an unbounded range could not be truncated to the requested accuracy.
class TruncationError : public Error
{
public:
  using Error::Error;
};

/// The requested method does not apply to this kind of input.
class MethodError : public Error
{
public:
  using Error::Error;
};

/// An internal invariant was broken; indicates a bug rather than bad input.
class InvariantViolation : public Error
{
public:
  using Error::Error;
};

} // namespace dilation
