#pragma once

#include <stdexcept>
#include <string>

namespace preq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A prefix, history or stream runs past the horizon of the object consuming it.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree on horizon or length.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (rational literals, JSON documents, CSV rows).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked in a state that does not admit it.
class StateError : public Error {
 public:
  using Error::Error;
};

/// A table is missing entries or has inconsistent shape.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A requested computation exceeds a documented size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A strategy failed certification and was not run.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace preq
