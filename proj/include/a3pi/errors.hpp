#pragma once

#include <stdexcept>
#include <string>

namespace a3pi {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define A3PI_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

A3PI_DEFINE_ERROR(DimensionMismatch)
A3PI_DEFINE_ERROR(IllDefinedMap)
A3PI_DEFINE_ERROR(NotASummand)
A3PI_DEFINE_ERROR(InvalidArgument)
A3PI_DEFINE_ERROR(OutOfRange)
A3PI_DEFINE_ERROR(UnknownRelation)
A3PI_DEFINE_ERROR(GuardViolation)
A3PI_DEFINE_ERROR(UnsupportedShape)
A3PI_DEFINE_ERROR(SignUnresolved)
A3PI_DEFINE_ERROR(NoConsistentSign)
A3PI_DEFINE_ERROR(MultipleConsistentSigns)
A3PI_DEFINE_ERROR(UnsupportedCase)
A3PI_DEFINE_ERROR(LedgerUnknown)

#undef A3PI_DEFINE_ERROR

}  // namespace a3pi
