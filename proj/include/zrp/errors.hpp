#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zrp
{
//---------------------------------------------------------------------------//
//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Invalid input: out-of-domain arguments, unknown presets, bad targets.
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Malformed target JSON. Carries the byte offset reported by the parser.
class ParseError : public DomainError
{
  public:
    ParseError(std::string const& what, std::size_t byte)
        : DomainError(what), byte_(byte)
    {
    }

    std::size_t byte() const noexcept { return byte_; }

  private:
    std::size_t byte_;
};

//! A single-center cotangent hit its pole: |sin delta(k)| is below the floor.
class PoleError : public Error
{
  public:
    PoleError(std::string const& what, double k) : Error(what), k_(k) {}

    double k() const noexcept { return k_; }

  private:
    double k_;
};

//! Internal numerical inconsistency (negative discriminant, singular
//! system, non-converged extrapolation, non-finite integrand).
class NumericalError : public Error
{
  public:
    using Error::Error;
};

}  // namespace zrp
