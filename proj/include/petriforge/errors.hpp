#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace petriforge {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

/// A transition was fired from a marking that does not enable it.
class NotEnabledError : public Error {
 public:
  using Error::Error;
};

class EventNotEnabledError : public Error {
 public:
  using Error::Error;
};

/// Annotations do not fit the net or the chosen policy.
class AnnotationMismatchError : public Error {
 public:
  using Error::Error;
};

class IncompleteGraphError : public Error {
 public:
  using Error::Error;
};

/// A linear constraint was evaluated on a place holding omega.
class OmegaUnsupportedError : public Error {
 public:
  using Error::Error;
};

class InvalidInvariantError : public Error {
 public:
  using Error::Error;
};

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Errors tied to a position in a text document. Line and column are 1-based;
/// 0 means the position is unknown.
class PositionedError : public Error {
 public:
  PositionedError(const std::string& what, SourcePos pos)
      : Error(format(what, pos)), pos_(pos) {}

  SourcePos pos() const noexcept { return pos_; }

 private:
  static std::string format(const std::string& what, SourcePos pos) {
    if (pos.line == 0) return what;
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what;
  }

  SourcePos pos_;
};

class ParseError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

/// Syntactically fine input describing an ill-formed net.
class SemanticError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

class XmlError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

class UnsupportedFeatureError : public Error {
 public:
  UnsupportedFeatureError(const std::string& element_id, const std::string& what)
      : Error(element_id + ": " + what), element_id_(element_id) {}

  const std::string& element_id() const noexcept { return element_id_; }

 private:
  std::string element_id_;
};

class NameCollisionError : public Error {
 public:
  using Error::Error;
};

class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace petriforge
