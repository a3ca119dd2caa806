#pragma once

#include <stdexcept>
#include <string>

namespace padicq {

// Base of every error raised by the library. Each subclass names one
// precondition failure; callers that audit many grid points catch this base.
class PadicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PADICQ_DECLARE_ERROR(Name)            \
  class Name : public PadicError {            \
   public:                                    \
    using PadicError::PadicError;             \
  }

PADICQ_DECLARE_ERROR(InvalidContext);
PADICQ_DECLARE_ERROR(ContextMismatch);
PADICQ_DECLARE_ERROR(NonUnitDenominator);
PADICQ_DECLARE_ERROR(NonUnit);
PADICQ_DECLARE_ERROR(InvalidLiteral);
PADICQ_DECLARE_ERROR(InvalidParameter);
PADICQ_DECLARE_ERROR(BudgetExceeded);
PADICQ_DECLARE_ERROR(BadLevel);
PADICQ_DECLARE_ERROR(NoStabilization);
PADICQ_DECLARE_ERROR(PrecisionLoss);
PADICQ_DECLARE_ERROR(InvalidSpec);
PADICQ_DECLARE_ERROR(IoFailure);

#undef PADICQ_DECLARE_ERROR

}  // namespace padicq
