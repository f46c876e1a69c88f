#pragma once

#include <stdexcept>
#include <string>

namespace qlnc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// formula engine
struct TerminatedQubitError : Error { using Error::Error; };
struct SelfTargetError : Error { using Error::Error; };
struct FormulaMismatchError : Error { using Error::Error; };

// stabilizer oracle
struct IndexOutOfRangeError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };

// network model
struct InvalidPartitionError : Error { using Error::Error; };
struct InvalidKError : Error { using Error::Error; };

// protocol engine
struct CapacityExceededError : Error { using Error::Error; };
struct MissingLinkError : Error { using Error::Error; };
struct NoBellPairError : Error { using Error::Error; };
struct InvalidArgsError : Error { using Error::Error; };

// decomposition
struct NotValidatedError : Error { using Error::Error; };

// cli
struct BadConfigError : Error { using Error::Error; };
struct FileError : Error { using Error::Error; };

}  // namespace qlnc
