#pragma once

#include <stdexcept>
#include <string>

namespace tamarkin {

/// Base class of every error raised by the library. `kind()` is the stable,
/// machine-readable name reported by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TAMARKIN_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

TAMARKIN_DEFINE_ERROR(InvalidBarcode)
TAMARKIN_DEFINE_ERROR(NotCauchy)
TAMARKIN_DEFINE_ERROR(InvalidComplex)
TAMARKIN_DEFINE_ERROR(IncompatibleMap)
TAMARKIN_DEFINE_ERROR(CertificateInvalid)
TAMARKIN_DEFINE_ERROR(LengthMismatch)
TAMARKIN_DEFINE_ERROR(InvalidModule)
TAMARKIN_DEFINE_ERROR(NotExact)
TAMARKIN_DEFINE_ERROR(ZeroClass)
TAMARKIN_DEFINE_ERROR(EmptySpec)
TAMARKIN_DEFINE_ERROR(ActionUnavailable)
TAMARKIN_DEFINE_ERROR(UnsupportedComplex)
TAMARKIN_DEFINE_ERROR(ParseError)

#undef TAMARKIN_DEFINE_ERROR

}  // namespace tamarkin
