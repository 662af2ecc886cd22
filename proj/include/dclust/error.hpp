#pragma once

#include <stdexcept>
#include <string>

namespace dclust {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an API precondition (dimension mismatch, unfinished labeling).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An algorithm or generator parameter is outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Dataset failed validation. `kind` tells which invariant was broken.
class DataError : public Error {
 public:
  enum class Kind { NonFinite, RaggedDimension, TruthLength, Empty };
  DataError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Malformed input text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A parameter required by the chosen algorithm was not supplied.
class MissingParameterError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The k-distance graph has no slope change to pick a radius from.
class NoKneeError : public Error {
 public:
  using Error::Error;
};

}  // namespace dclust
