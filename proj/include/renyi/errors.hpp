#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

// Base for all domain errors. `code()` is a stable machine-readable tag that
// the CLI emits in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define RENYI_DEFINE_ERROR(Name)                          \
  class Name : public Error {                             \
   public:                                                \
    explicit Name(const std::string& what)                \
        : Error(#Name, what) {}                           \
  }

RENYI_DEFINE_ERROR(AlphabetMismatch);
RENYI_DEFINE_ERROR(ZeroMeasure);
RENYI_DEFINE_ERROR(SupportMismatch);
RENYI_DEFINE_ERROR(OrderOutOfRange);
RENYI_DEFINE_ERROR(RhoOutOfRange);
RENYI_DEFINE_ERROR(DomainError);
RENYI_DEFINE_ERROR(InvalidPartition);
RENYI_DEFINE_ERROR(AlphabetTooLarge);
RENYI_DEFINE_ERROR(InfeasibleConstraint);
RENYI_DEFINE_ERROR(EmptyCore);
RENYI_DEFINE_ERROR(QuadratureFailure);
RENYI_DEFINE_ERROR(UnboundedIntensity);
RENYI_DEFINE_ERROR(VarianceBlowup);
RENYI_DEFINE_ERROR(BudgetExceeded);
RENYI_DEFINE_ERROR(UnknownSuite);
RENYI_DEFINE_ERROR(ParseError);

#undef RENYI_DEFINE_ERROR

}  // namespace renyi
