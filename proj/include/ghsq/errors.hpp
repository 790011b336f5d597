#pragma once

#include <stdexcept>
#include <string>

namespace ghsq {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix shape, qubit count or label count not supported.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Bad argument to an operation (empty keep set, too-coarse grid, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A physical parameter is outside its allowed range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An eigenvalue is below the positivity tolerance.
class PositivityError : public Error {
public:
    using Error::Error;
};

/// A density matrix failed one of the state invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The state has weight outside the diagonal and anti-diagonal.
class NotXStateError : public Error {
public:
    using Error::Error;
};

/// Bob's marginal is (numerically) pure, so gamma_b diverges.
class PureMarginalError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Malformed input text (JSON, CSV tokens, angle expressions).
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ghsq
