#include "instanton/errors.hpp"

namespace instanton {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidModulus: return "invalid-modulus";
    case ErrorKind::UnsupportedDegree: return "unsupported-degree";
    case ErrorKind::ZeroSection: return "zero-section";
    case ErrorKind::PotentialDomain: return "potential-domain";
    case ErrorKind::OutsideEndRegion: return "outside-end-region";
    case ErrorKind::DegenerateGrid: return "degenerate-grid";
    case ErrorKind::DegenerateForm: return "degenerate-form";
    case ErrorKind::SingularMetric: return "singular-metric";
    case ErrorKind::InsufficientSamples: return "insufficient-samples";
    case ErrorKind::Uncalibrated: return "uncalibrated";
    case ErrorKind::NotATriple: return "not-a-triple";
    case ErrorKind::NotARoot: return "not-a-root";
    case ErrorKind::OnWall: return "on-wall";
    case ErrorKind::NotAnIsometry: return "not-an-isometry";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace instanton
