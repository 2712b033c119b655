#pragma once

#include <stdexcept>
#include <string>

namespace ias {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: parameters, files, expression text. The CLI maps these to exit 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Failure during computation (poles, quadrature, trust radius). CLI exit 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public InputError {
 public:
  AlgebraMismatch() : InputError("algebra mismatch: operands carry different eps") {}
};

class SingularDivisor : public NumericalError {
 public:
  explicit SingularDivisor(const std::string& where = {})
      : NumericalError(where.empty() ? "singular divisor (zero or on the null cone)"
                                     : "singular divisor in " + where) {}
};

class InvalidParameter : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    std::string s = "parse error";
    if (line > 0) s += " at line " + std::to_string(line);
    if (column > 0) s += (line > 0 ? ", column " : " at column ") + std::to_string(column);
    return s + ": " + what;
  }
  int line_;
  int column_;
};

class TrustRadiusError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PathSingularity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistentPeriod : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BlowUpError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FitDegenerate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidPair : public InputError {
 public:
  using InputError::InputError;
};

class CharacteristicDataError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistentData : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RiccatiViolation : public InputError {
 public:
  using InputError::InputError;
};

/// Unreadable or unwritable files.
class IoError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace ias
