#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffgal {

// Every exception raised by the library derives from Error, so callers that
// only care about "bad input" can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("zero denominator") {}
};

class ZeroInput : public Error {
 public:
  explicit ZeroInput(const std::string& what) : Error(what) {}
};

class SingularInput : public Error {
 public:
  explicit SingularInput(const std::string& what) : Error(what) {}
};

class NonConstantInput : public Error {
 public:
  explicit NonConstantInput(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class BadOperatorParameter : public Error {
 public:
  explicit BadOperatorParameter(const std::string& what) : Error(what) {}
};

class UnsupportedSpectrum : public Error {
 public:
  UnsupportedSpectrum()
      : Error("spectrum needs algebraic-number arithmetic (irrational, non-cyclotomic eigenvalues)") {}
};

class UnsupportedDescriptor : public Error {
 public:
  explicit UnsupportedDescriptor(const std::string& what) : Error(what) {}
};

class StatusUnknown : public Error {
 public:
  StatusUnknown() : Error("group shape requires a decided integrability status") {}
};

class DeadlineExceeded : public Error {
 public:
  DeadlineExceeded() : Error("deadline exceeded") {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error("schema error: " + what) {}
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, DivisionByZeroConstant, IrrationalConstant };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error(message + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

}  // namespace diffgal
