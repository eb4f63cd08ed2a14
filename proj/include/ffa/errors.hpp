#pragma once

#include <stdexcept>
#include <string>

namespace ffa {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different fields, or a literal does not fit its sort.
class SortError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition (composite modulus,
/// malformed numeral, zero divisor polynomial, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A configured search, factorization, or enumeration budget was exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A script command was issued out of sequence, e.g. get-model when the last
/// check-sat did not answer sat.
class CommandError : public Error {
 public:
  using Error::Error;
};

/// Line/column of a token in a script; both 1-based.
struct SourcePos {
  int line = 0;
  int column = 0;

  bool operator==(const SourcePos&) const = default;
};

/// Lexical, syntactic, well-sortedness, or unsupported-feature error in an
/// SMT-LIB script. Carries the position of the offending token.
class ScriptError : public Error {
 public:
  enum class Kind { Lex, Parse, Sort, Unsupported };

  ScriptError(Kind kind, SourcePos pos, const std::string& msg)
      : Error(format(pos, msg)), kind_(kind), pos_(pos) {}

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  static std::string format(SourcePos pos, const std::string& msg) {
    return "line " + std::to_string(pos.line) + " column " +
           std::to_string(pos.column) + ": " + msg;
  }

  Kind kind_;
  SourcePos pos_;
};

}  // namespace ffa
