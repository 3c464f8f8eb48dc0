#pragma once

#include <stdexcept>
#include <string>

namespace pf {

/// Base class of all library errors. `kind()` is a stable short tag used in
/// structured error output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error("invalid-argument", message) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& message) : Error("dimension-mismatch", message) {}
};

class UnsupportedOperation : public Error {
public:
    explicit UnsupportedOperation(const std::string& message) : Error("unsupported-operation", message) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain-error", message) {}
};

/// A numerical identity or closedness check failed. Carries the measured residual.
class VerificationFailure : public Error {
public:
    VerificationFailure(const std::string& message, double residual)
        : Error("verification-failure", message), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace pf
