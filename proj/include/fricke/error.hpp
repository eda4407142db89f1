#pragma once

#include <stdexcept>
#include <string>

namespace fricke {

// Root of every error the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonInvertibleSeries : public Error {
public:
    NonInvertibleSeries() : Error("non-invertible series") {}
};

class InsufficientTruncation : public Error {
public:
    explicit InsufficientTruncation(const std::string& detail)
        : Error("insufficient truncation order: " + detail) {}
};

class QuadratureNotConverged : public Error {
public:
    explicit QuadratureNotConverged(const std::string& detail)
        : Error("quadrature not converged: " + detail) {}
};

class PoleProximity : public Error {
public:
    explicit PoleProximity(const std::string& detail) : Error("pole proximity: " + detail) {}
};

// A construction produced something that must be impossible (e.g. a
// non-integral coefficient in the basis solve). Signals a bug, not bad input.
class InternalConsistencyError : public Error {
public:
    explicit InternalConsistencyError(const std::string& detail)
        : Error("internal consistency failure: " + detail) {}
};

}  // namespace fricke
