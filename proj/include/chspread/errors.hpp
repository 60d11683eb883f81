#pragma once

#include <stdexcept>
#include <string>

namespace chspread {

/// Base class for all chspread errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadixMismatch : Error { using Error::Error; };
struct NonTerminatingExpansion : Error { using Error::Error; };
struct LengthNotPowerOfRadix : Error { using Error::Error; };
struct SizeLimitExceeded : Error { using Error::Error; };
struct RowOutOfRange : Error { using Error::Error; };
struct ZeroSeed : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct ZeroSignalEnergy : Error { using Error::Error; };
struct ZeroSpectrum : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace chspread
