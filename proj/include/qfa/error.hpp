#pragma once

#include <stdexcept>
#include <string>

namespace qfa {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix shape does not fit the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Partially specified unitary cannot be completed.
class CompletionError : public Error {
 public:
  CompletionError(const std::string& what, long first, long second)
      : Error(what), first_(first), second_(second) {}
  long first() const { return first_; }
  long second() const { return second_; }

 private:
  long first_;
  long second_;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

// Input violates a structural contract (stochasticity, well-formedness...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-violating spec file.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Machine leaves mass unresolved where the model requires it to be resolved.
class IllFormedMachine : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfa
