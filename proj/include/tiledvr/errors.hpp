#pragma once

#include <stdexcept>
#include <string>

namespace tiledvr {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument is outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A requested configuration is unsatisfiable (e.g. indivisible tile grid).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Input text could not be read at the syntax level. Carries line/column.
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally well-formed input violates an invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A computation cannot proceed (degenerate sampling, empty viewport set).
class ComputationError : public Error {
public:
    using Error::Error;
};

}  // namespace tiledvr
