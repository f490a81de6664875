#pragma once

#include <stdexcept>
#include <string>

namespace flatzeta {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define FLATZETA_DEFINE_ERROR(Name)            \
  class Name : public Error {                  \
  public:                                      \
    using Error::Error;                        \
  }

FLATZETA_DEFINE_ERROR(InvalidParams);
FLATZETA_DEFINE_ERROR(DomainError);
FLATZETA_DEFINE_ERROR(NonConvergence);
FLATZETA_DEFINE_ERROR(EnvelopeViolation);
FLATZETA_DEFINE_ERROR(OutOfWindow);
FLATZETA_DEFINE_ERROR(OddQNotSupported);
FLATZETA_DEFINE_ERROR(PoleHit);
FLATZETA_DEFINE_ERROR(WrongRegime);
FLATZETA_DEFINE_ERROR(DegenerateLowerLimit);
FLATZETA_DEFINE_ERROR(OptimizerBracketFailure);
FLATZETA_DEFINE_ERROR(IllConditionedFit);
FLATZETA_DEFINE_ERROR(OutsideDisc);
FLATZETA_DEFINE_ERROR(ConfigError);

#undef FLATZETA_DEFINE_ERROR

}  // namespace flatzeta
