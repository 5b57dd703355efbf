#pragma once

#include <stdexcept>
#include <string>

namespace vimod {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define VIMOD_DEFINE_ERROR(Name)                                       \
  struct Name : Error {                                                \
    explicit Name(const std::string& what_arg)                         \
        : Error(std::string(#Name) + ": " + what_arg) {}               \
  }

VIMOD_DEFINE_ERROR(DegenerateHomography);
VIMOD_DEFINE_ERROR(PointAtInfinity);
VIMOD_DEFINE_ERROR(InvalidPose);
VIMOD_DEFINE_ERROR(InsufficientCorrespondences);
VIMOD_DEFINE_ERROR(NoConsensus);
VIMOD_DEFINE_ERROR(InvalidRatio);
VIMOD_DEFINE_ERROR(SizeMismatch);
VIMOD_DEFINE_ERROR(ImageTooSmall);
VIMOD_DEFINE_ERROR(InvalidSpec);
VIMOD_DEFINE_ERROR(MissingGroundTruth);
VIMOD_DEFINE_ERROR(InputMismatch);
VIMOD_DEFINE_ERROR(ConfigError);
VIMOD_DEFINE_ERROR(IoError);

#undef VIMOD_DEFINE_ERROR

}  // namespace vimod
