#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gentess {

/// Base of all library errors. The CLI maps ValidationError to exit code 1
/// and NumericalError to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PreconditionViolated : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Mesh document rejected; carries the offending cell ids.
class MeshError : public ValidationError {
public:
    MeshError(const std::string& what, std::vector<int> cells)
        : ValidationError(what), cells_(std::move(cells)) {}

    const std::vector<int>& cells() const { return cells_; }

private:
    std::vector<int> cells_;
};

class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ProxyAccuracyError : public NumericalError {
public:
    ProxyAccuracyError(const std::string& what, int index, int level)
        : NumericalError(what), index_(index), level_(level) {}

    int index() const { return index_; }
    int level() const { return level_; }

private:
    int index_;
    int level_;
};

/// Global relative tolerance for rank and zero decisions. Defaults to 1e-9,
/// overridable through the GENTESS_TOL environment variable.
double tolerance();

} // namespace gentess
