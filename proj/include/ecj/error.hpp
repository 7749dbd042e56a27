#pragma once

#include <stdexcept>
#include <string>

namespace ecj {

// Error taxonomy shared by every module. The CLI maps `Kind` onto exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    RegistryMismatch,
    ZeroDenominator,
    DivisionByZero,
    Infeasible,
    ResourceLimit,
    Pole,
    NotPrimeAssumed,
    UnitIdeal,
    SingularLocus,
    ConstantForced,
    Parse,
    InvalidInput,
    NoConstantCoordinate,
    FiberEmpty,
    ModularRelationAbsent,
    InsufficientOrder,
    LevelUnavailable,
    LiftSingular,
    Internal,
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Raised by the j-polynomial evaluators; `denominator` names the factor that vanished.
class PoleError : public Error {
 public:
  explicit PoleError(std::string denominator)
      : Error(Kind::Pole, "pole: denominator " + denominator + " vanishes"),
        denominator_(std::move(denominator)) {}

  const std::string& denominator() const noexcept { return denominator_; }

 private:
  std::string denominator_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error(Kind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                               ": " + msg),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

const char* kind_name(Error::Kind kind) noexcept;

}  // namespace ecj
