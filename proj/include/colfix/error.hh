#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace colfix {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed the configured cardinality cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A value refers to carrier elements outside the declared carrier, or two
/// structures over different functors/vocabularies were combined.
class CarrierMismatch : public Error {
 public:
  using Error::Error;
};

/// Syntax or well-formedness error in textual input; carries the offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A bound variable occurs under an odd number of negations.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// The formula lies outside the fragment the automaton translation handles.
class UnsupportedFragment : public Error {
 public:
  using Error::Error;
};

/// A proposition used by a formula is not part of the model's vocabulary.
class UnboundProp : public Error {
 public:
  using Error::Error;
};

/// A contract that the construction guarantees was violated at runtime.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace colfix
