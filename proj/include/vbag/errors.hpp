#pragma once

#include <stdexcept>
#include <string>

namespace vbag {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct InvalidSize : Error { using Error::Error; };
struct DegenerateVariance : Error { using Error::Error; };
struct NegativeDiscriminant : Error { using Error::Error; };
struct SingularDesign : Error { using Error::Error; };
struct SingularHessian : Error { using Error::Error; };
struct EmptyData : Error { using Error::Error; };
struct StructureMismatch : Error { using Error::Error; };
struct AllReplicatesFailed : Error { using Error::Error; };
struct ZeroReference : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace vbag
