#pragma once

#include <stdexcept>
#include <string>

namespace hkcp {

/// Base class for all recoverable failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible.
struct DimensionError : Error {
    using Error::Error;
};

/// Determinant below the singularity threshold; inverse would be noise.
struct SingularMatrixError : Error {
    using Error::Error;
};

/// Input was required to be Hermitian within tolerance and is not.
struct NonHermitianError : Error {
    using Error::Error;
};

/// The matrix does not lie in the big cell U * U^- * L of the chart.
struct NotFactorizableError : Error {
    using Error::Error;
};

/// A chart transition was requested at a point outside the chart overlap.
struct OverlapError : Error {
    using Error::Error;
};

/// A profile or stencil was evaluated outside its domain of definition.
struct DomainError : Error {
    using Error::Error;
};

/// The matrix is not block-lower-triangular (not in the parabolic subalgebra).
struct NotInParabolicError : Error {
    using Error::Error;
};

}  // namespace hkcp
