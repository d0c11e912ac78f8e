#pragma once

#include <stdexcept>
#include <string>

namespace motionforge {

/// Broad failure class; the CLI and the HTTP service map these onto exit
/// codes and status codes.
enum class ErrorClass {
  Validation,  // bad input document or violated invariant
  Io,          // unreadable/unwritable file or undecodable raster
  Lookup,      // unknown id / index out of range
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorClass cls, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)), cls_(cls) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  std::string kind_;
  ErrorClass cls_;
};

#define MOTIONFORGE_DEFINE_ERROR(Name, Cls)                       \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& message)                     \
        : Error(#Name, ErrorClass::Cls, message) {}               \
  };

MOTIONFORGE_DEFINE_ERROR(SchemaError, Validation)
MOTIONFORGE_DEFINE_ERROR(ValidationError, Validation)
MOTIONFORGE_DEFINE_ERROR(DomainError, Validation)
MOTIONFORGE_DEFINE_ERROR(NoStaticRegionError, Validation)
MOTIONFORGE_DEFINE_ERROR(DimensionMismatchError, Validation)
MOTIONFORGE_DEFINE_ERROR(EmptyMaskError, Validation)
MOTIONFORGE_DEFINE_ERROR(BehindCameraError, Validation)
MOTIONFORGE_DEFINE_ERROR(OutsideParentError, Validation)
MOTIONFORGE_DEFINE_ERROR(DegenerateConfigurationError, Validation)
MOTIONFORGE_DEFINE_ERROR(LengthMismatchError, Validation)
MOTIONFORGE_DEFINE_ERROR(NonPositiveDepthError, Validation)
MOTIONFORGE_DEFINE_ERROR(FormatError, Io)
MOTIONFORGE_DEFINE_ERROR(IoError, Io)
MOTIONFORGE_DEFINE_ERROR(IndexError, Lookup)

#undef MOTIONFORGE_DEFINE_ERROR

}  // namespace motionforge
