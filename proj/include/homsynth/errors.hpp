#pragma once

#include <stdexcept>
#include <string>

namespace homsynth {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (graph text, JSON, variable spelling).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Input outside the documented size limits of an exact algorithm.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. delta < 1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Structurally inconsistent input (overlapping parts, decomposition not covering an edge, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class InvalidDecomposition : public InputError {
public:
    using InputError::InputError;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A parse-tree monomial is not a full colorful monomial.
class SupportError : public Error {
public:
    using Error::Error;
};

/// An ABP of the requested length cannot reach the polynomial's degree.
class DegreeError : public Error {
public:
    using Error::Error;
};

/// Internal cross-check failed (e.g. non-integral coefficient after automorphism scaling).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace homsynth
