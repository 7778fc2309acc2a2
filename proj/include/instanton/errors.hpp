#pragma once

#include <stdexcept>
#include <string>

namespace instanton {

enum class ErrorKind {
    InvalidArgument,
    InvalidModulus,
    UnsupportedDegree,
    ZeroSection,
    PotentialDomain,
    OutsideEndRegion,
    DegenerateGrid,
    DegenerateForm,
    SingularMetric,
    InsufficientSamples,
    Uncalibrated,
    NotATriple,
    NotARoot,
    OnWall,
    NotAnIsometry,
    Io,
};

const char* to_string(ErrorKind kind);

/// Every precondition failure in the library surfaces as this exception.
/// `kind()` is stable and is what the report layer serializes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace instanton
