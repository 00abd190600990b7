//---------------------------------------------------------------------------//
//! \file meansir/errors.hh
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace meansir
{
//---------------------------------------------------------------------------//
//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Conditioning on an event of probability zero.
class EmptyConditioningError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Scheduling thins the network to zero intensity.
class EmptyNetworkError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Closed form requested for a model outside its regime.
class UnsupportedModelError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Query outside the sampled range of an interpolated curve.
class InterpolationRangeError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Objective is monotone on the search interval.
class NoInteriorMaximumError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Finite-difference step is not usable at the evaluation point.
class StepSizeError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! A function evaluation returned a non-finite value.
class PropagationError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Simulation cannot produce a valid realization.
class DegenerateConfigurationError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//---------------------------------------------------------------------------//
//! Malformed text input; carries the 1-based line number (0 if unknown).
class ParseError : public Error
{
  public:
    ParseError(std::string const& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg)
        , line_(line)
    {
    }

    int line() const { return line_; }

  private:
    int line_;
};

//! Bad command-line usage.
class UsageError : public Error
{
  public:
    using Error::Error;
};

//---------------------------------------------------------------------------//
}  // namespace meansir
