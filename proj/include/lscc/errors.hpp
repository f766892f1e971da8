#pragma once

#include <stdexcept>
#include <string>

namespace lscc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LSCC_DECLARE_ERROR(Name)              \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

LSCC_DECLARE_ERROR(DimensionError);
LSCC_DECLARE_ERROR(FieldError);
LSCC_DECLARE_ERROR(EmptyGraphError);
LSCC_DECLARE_ERROR(BudgetExceeded);
LSCC_DECLARE_ERROR(TopologyError);
LSCC_DECLARE_ERROR(InvalidWeight);
LSCC_DECLARE_ERROR(SchemeError);
LSCC_DECLARE_ERROR(UnsupportedP);
LSCC_DECLARE_ERROR(UnsupportedField);
LSCC_DECLARE_ERROR(DegenerateFamily);
LSCC_DECLARE_ERROR(DegenerateFrame);
LSCC_DECLARE_ERROR(ClassError);
LSCC_DECLARE_ERROR(FormatError);

#undef LSCC_DECLARE_ERROR

}  // namespace lscc
