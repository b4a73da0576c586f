#pragma once

#include <stdexcept>
#include <string>

namespace snpvscs {

// Malformed input or a violated precondition. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure could not produce a result. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SNPVSCS_DEFINE_ERROR(Name, Base)     \
  class Name : public Base {                 \
   public:                                   \
    using Base::Base;                        \
  };

SNPVSCS_DEFINE_ERROR(DimensionMismatch, InputError)
SNPVSCS_DEFINE_ERROR(DomainError, InputError)
SNPVSCS_DEFINE_ERROR(MaskNotNested, InputError)
SNPVSCS_DEFINE_ERROR(TooManyPredictors, InputError)
SNPVSCS_DEFINE_ERROR(BadFoldCount, InputError)
SNPVSCS_DEFINE_ERROR(MissingValue, InputError)
SNPVSCS_DEFINE_ERROR(InvalidGenotype, InputError)

SNPVSCS_DEFINE_ERROR(SingularDesign, NumericalError)
SNPVSCS_DEFINE_ERROR(CholeskyFailure, NumericalError)
SNPVSCS_DEFINE_ERROR(DegenerateFold, NumericalError)
SNPVSCS_DEFINE_ERROR(EmptyLbmSet, NumericalError)
SNPVSCS_DEFINE_ERROR(NoPositiveImportance, NumericalError)

#undef SNPVSCS_DEFINE_ERROR

// Parse failure with the 1-based line and column of the offending cell.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace snpvscs
