#pragma once

#include <stdexcept>
#include <string>

namespace micromorph {

/// Root of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failures of the numerical pipeline (eigensolver, assembly consistency).
class NumericalError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotHermitian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NegativeEigenvalue : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BlockLeakage : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroVector : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Bad inputs detected before any numerics run.
class InputError : public Error {
public:
    using Error::Error;
};

class DegenerateGrid : public InputError {
public:
    using InputError::InputError;
};

class InconsistentInputs : public InputError {
public:
    using InputError::InputError;
};

class ValidationFailure : public InputError {
public:
    using InputError::InputError;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

} // namespace micromorph
