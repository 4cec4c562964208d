#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroVectorError : Error {
    explicit ZeroVectorError(const std::string& msg = "vector is numerically zero") : Error(msg) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg = "ambient dimensions do not match") : Error(msg) {}
};

struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& msg = "input list is empty") : Error(msg) {}
};

struct SingularError : Error {
    explicit SingularError(const std::string& msg = "matrix is numerically singular") : Error(msg) {}
};

struct IllConditionedError : Error {
    explicit IllConditionedError(const std::string& msg = "eigenvalue modulus clusters cannot be separated") : Error(msg) {}
};

struct FiniteOrderError : Error {
    explicit FiniteOrderError(const std::string& msg = "map has finite projective order") : Error(msg) {}
};

struct NonUnitarySpectrumError : Error {
    explicit NonUnitarySpectrumError(const std::string& msg = "spectrum is not of unit modulus") : Error(msg) {}
};

struct SpectralRadiusViolationError : Error {
    explicit SpectralRadiusViolationError(const std::string& msg = "spectral radius is not below the given modulus") : Error(msg) {}
};

struct BadDimensionError : Error {
    explicit BadDimensionError(const std::string& msg = "projective dimension must be odd") : Error(msg) {}
};

struct SubspacesNotDisjointError : Error {
    explicit SubspacesNotDisjointError(const std::string& msg = "configured subspaces are not pairwise disjoint") : Error(msg) {}
};

struct AlphaOutOfRangeError : Error {
    explicit AlphaOutOfRangeError(const std::string& msg = "alpha must lie in (0, 1/2)") : Error(msg) {}
};

struct NotReducedError : Error {
    explicit NotReducedError(const std::string& msg = "word is empty or not reduced") : Error(msg) {}
};

struct PointNotInDomainError : Error {
    explicit PointNotInDomainError(const std::string& msg = "point is not in the fundamental domain interior") : Error(msg) {}
};

struct SingleModulusClassError : Error {
    explicit SingleModulusClassError(const std::string& msg = "map has a single modulus class") : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace schottky
