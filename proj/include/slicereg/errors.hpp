#pragma once

#include <stdexcept>
#include <string>

namespace slicereg {

/// Inversion of a quaternion whose modulus is below the configured floor.
struct DivisionByNearZero : std::runtime_error {
    explicit DivisionByNearZero(const std::string& what) : std::runtime_error(what) {}
};

/// Regular reciprocal (or a transform needing one) of a series whose constant
/// coefficient is too small.
struct NonInvertibleAtOrigin : std::runtime_error {
    explicit NonInvertibleAtOrigin(const std::string& what) : std::runtime_error(what) {}
};

/// An evaluation landed too close to the zero set of a symmetrization.
struct EvalNearZeroSet : std::runtime_error {
    explicit EvalNearZeroSet(const std::string& what) : std::runtime_error(what) {}
};

/// Splitting requested with a J that is not orthogonal to I.
struct NotOrthogonal : std::runtime_error {
    explicit NotOrthogonal(const std::string& what) : std::runtime_error(what) {}
};

/// A radius parameter outside [0, 1) where the geometry requires |q| < 1.
struct RadiusOutOfRange : std::runtime_error {
    explicit RadiusOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

/// Mixture weights that are negative, mismatched in length, or do not sum to 1.
struct WeightsInvalid : std::runtime_error {
    explicit WeightsInvalid(const std::string& what) : std::runtime_error(what) {}
};

/// Affine normalization with A too close to Re f(0).
struct DegenerateNormalization : std::runtime_error {
    explicit DegenerateNormalization(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed JSON input; carries file/field context in the message.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration (counts, radii, tolerances).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace slicereg
