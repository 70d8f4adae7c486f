#pragma once

#include <stdexcept>
#include <string>

namespace divkit {

// Base for every error raised by the library. Anything derived from Error is
// a problem with the caller's input; other exceptions are internal faults.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (weights, files, option values).
class ValidationError : public Error
{
public:
  using Error::Error;
};

// A scalar argument outside the domain of the operation.
class DomainError : public Error
{
public:
  using Error::Error;
};

// Relative information requested at an atom where both masses vanish.
class UndefinedAtomError : public Error
{
public:
  using Error::Error;
};

// A generator is not differentiable at the requested abscissa.
class KinkError : public Error
{
public:
  using Error::Error;
};

// An operation needs P << Q (or P <<>> Q) and the pair has singular mass.
class ContinuityError : public Error
{
public:
  using Error::Error;
};

// A value lies outside the range of an inverse function.
class RangeError : public Error
{
public:
  using Error::Error;
};

// The generator lacks a capability (second derivative, finite conjugate...).
class CapabilityError : public Error
{
public:
  using Error::Error;
};

// Root bracketing failed.
class RootError : public Error
{
public:
  using Error::Error;
};

// Unknown divergence kind, family or bound name.
class DispatchError : public Error
{
public:
  using Error::Error;
};

}  // namespace divkit
