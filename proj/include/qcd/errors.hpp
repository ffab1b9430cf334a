#pragma once

#include <stdexcept>
#include <string>

namespace qcd {

// Base of every error thrown by the library. Callers that do not care about
// the category can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input matrix is not Hermitian / unit-trace / PSD within tolerance.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

// Dimension mismatch or a dimension that is not a power of two.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Qubit index set is empty, unordered or out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

// Scalar argument outside its mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Dense materialization would exceed the configured qubit cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A closed form was requested outside the state structure it is derived for.
class UnsupportedStructureError : public Error {
public:
    using Error::Error;
};

// Two algebraically equivalent evaluations disagree beyond rounding noise.
class NumericalConsistencyError : public Error {
public:
    using Error::Error;
};

// Malformed input document (JSON amplitude file, config file).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace qcd
