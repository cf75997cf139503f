#pragma once

#include <stdexcept>
#include <string>

namespace charclass {

// Base of every domain error raised by the engine. `kind()` is a stable
// machine-readable tag used by the CLI error object.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CHARCLASS_DEFINE_ERROR(Name, tag)                                   \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& message) : Error(tag, message) {}     \
  };

CHARCLASS_DEFINE_ERROR(InvalidArgument, "invalid-argument")
CHARCLASS_DEFINE_ERROR(PresentationMismatch, "presentation-mismatch")
CHARCLASS_DEFINE_ERROR(DegreeMismatch, "degree-mismatch")
CHARCLASS_DEFINE_ERROR(NonInvertible, "non-invertible")
CHARCLASS_DEFINE_ERROR(NonIntegralClass, "non-integral-class")
CHARCLASS_DEFINE_ERROR(InvalidDescriptor, "invalid-descriptor")
CHARCLASS_DEFINE_ERROR(ConfigurationError, "configuration-error")
CHARCLASS_DEFINE_ERROR(InternalInconsistency, "internal-inconsistency")
CHARCLASS_DEFINE_ERROR(ParseError, "parse-error")
CHARCLASS_DEFINE_ERROR(FixtureNotFound, "fixture-not-found")
CHARCLASS_DEFINE_ERROR(NoSplittingNeeded, "no-splitting-needed")

#undef CHARCLASS_DEFINE_ERROR

}  // namespace charclass
