#pragma once

#include <stdexcept>
#include <string>

namespace tomophase {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TOMOPHASE_DEFINE_ERROR(Name) \
  struct Name : Error {              \
    using Error::Error;              \
  }

TOMOPHASE_DEFINE_ERROR(InvalidSize);
TOMOPHASE_DEFINE_ERROR(SlopeOutOfRange);
TOMOPHASE_DEFINE_ERROR(SizeMismatch);
TOMOPHASE_DEFINE_ERROR(SingularNodes);
TOMOPHASE_DEFINE_ERROR(KadecViolation);
TOMOPHASE_DEFINE_ERROR(WrongNodeCount);
TOMOPHASE_DEFINE_ERROR(NegativeIntensity);
TOMOPHASE_DEFINE_ERROR(EvenPadding);
TOMOPHASE_DEFINE_ERROR(SupportOverflow);
TOMOPHASE_DEFINE_ERROR(GammaOutOfRange);
TOMOPHASE_DEFINE_ERROR(ZeroExtraDirection);
TOMOPHASE_DEFINE_ERROR(StrongCTFailure);
TOMOPHASE_DEFINE_ERROR(InconsistentSpectrum);
TOMOPHASE_DEFINE_ERROR(NonPositiveInput);
TOMOPHASE_DEFINE_ERROR(BudgetExceeded);
TOMOPHASE_DEFINE_ERROR(MalformedFile);
TOMOPHASE_DEFINE_ERROR(VersionMismatch);

#undef TOMOPHASE_DEFINE_ERROR

}  // namespace tomophase
