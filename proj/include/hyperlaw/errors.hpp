#pragma once

#include <stdexcept>
#include <string>

#include "hyperlaw/algebra.hpp"

namespace hyperlaw {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

// Numerical failures. The CLI maps everything below to exit code 2.
class NumericalError : public Error {
public:
  using Error::Error;
};

class HyperbolicityError : public NumericalError {
public:
  HyperbolicityError(const std::string& what, Vec2 at)
      : NumericalError(what), point(at) {}
  Vec2 point;
};

class ContinuationError : public NumericalError {
public:
  ContinuationError(const std::string& what, Vec2 last_good)
      : NumericalError(what), last(last_good) {}
  Vec2 last;
};

class EmptyLevelError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StructuralError : public NumericalError {
public:
  StructuralError(const std::string& what, int i, int j)
      : NumericalError(what), first(i), second(j) {}
  int first;
  int second;
};

class ToleranceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DecompositionError : public NumericalError {
public:
  DecompositionError(const std::string& what, Vec2 at)
      : NumericalError(what), point(at) {}
  Vec2 point;
};

}  // namespace hyperlaw
