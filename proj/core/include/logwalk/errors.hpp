#pragma once

#include <stdexcept>
#include <string>

namespace logwalk {

/// Coarse error category, used by the CLI to pick an exit code.
enum class ErrorKind {
  input,         // malformed or invalid input data / configuration
  precondition,  // valid input that violates an algorithm precondition
  budget,        // Monte-Carlo budget or work limit exceeded
  numerical,     // numerical routine failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LOGWALK_DEFINE_ERROR(Name, Kind)                         \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(Kind, what) {} \
  }

LOGWALK_DEFINE_ERROR(ParseError, ErrorKind::input);
LOGWALK_DEFINE_ERROR(IndexError, ErrorKind::input);
LOGWALK_DEFINE_ERROR(WeightError, ErrorKind::input);
LOGWALK_DEFINE_ERROR(AsymmetryError, ErrorKind::input);
LOGWALK_DEFINE_ERROR(DomainError, ErrorKind::input);

LOGWALK_DEFINE_ERROR(IsolatedVertexError, ErrorKind::precondition);
LOGWALK_DEFINE_ERROR(DisconnectedError, ErrorKind::precondition);
LOGWALK_DEFINE_ERROR(NotApplicableError, ErrorKind::precondition);
LOGWALK_DEFINE_ERROR(NotInImageError, ErrorKind::precondition);
LOGWALK_DEFINE_ERROR(SizeError, ErrorKind::precondition);
LOGWALK_DEFINE_ERROR(TooSmallError, ErrorKind::precondition);

LOGWALK_DEFINE_ERROR(BudgetError, ErrorKind::budget);

LOGWALK_DEFINE_ERROR(ConvergenceError, ErrorKind::numerical);

#undef LOGWALK_DEFINE_ERROR

}  // namespace logwalk
