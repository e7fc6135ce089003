#pragma once

#include <stdexcept>
#include <string>

namespace vnmlab {

/// Base class for all vnmlab contract violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// statecore
struct InvalidLayout : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };
struct InvalidAssignment : Error { using Error::Error; };
struct LayoutMismatch : Error { using Error::Error; };
struct InvalidWeights : Error { using Error::Error; };
struct UnknownRegister : Error { using Error::Error; };

// gates
struct WidthMismatch : Error { using Error::Error; };

// measure
struct LayoutCollision : Error { using Error::Error; };
struct UnreachableOutcome : Error { using Error::Error; };

// oracles
struct InvalidPeriod : Error { using Error::Error; };
struct NotCoprime : Error { using Error::Error; };
struct InvalidLabel : Error { using Error::Error; };
struct NoCollision : Error { using Error::Error; };
struct InvalidOracle : Error { using Error::Error; };

// algorithms
struct FamilyMismatch : Error { using Error::Error; };
struct UnsupportedInstance : Error { using Error::Error; };
struct InsufficientConstraints : Error { using Error::Error; };
struct Inconclusive : Error { using Error::Error; };

} // namespace vnmlab
