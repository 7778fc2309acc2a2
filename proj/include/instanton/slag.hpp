#pragma once

#include <utility>
#include <vector>

#include "instanton/calabi.hpp"
#include "instanton/torus.hpp"
#include "instanton/triple.hpp"

namespace instanton::slag {

/// Deformations used as negative controls. The level modulation breaks the
/// Lagrangian condition; the base wiggle keeps it but makes the phase vary.
struct Perturbation {
    double level_amplitude = 0.0;  // N = level (1 + a sin 2 pi s)
    double base_amplitude = 0.0;   // z = offset + s d + a i d sin 2 pi s
};

/// Ansatz torus over a straight line of the curve at fixed norm N = level.
/// Parameterized by (s, phi) in [0,1) x [0, 2 pi): z moves along the line,
/// phi is the argument of w. (The level is a value of |xi|^2_h and is
/// unrelated to the semi-flat fibre size eps.)
struct AnsatzSLag {
    calabi::AnsatzChart chart;
    torus::TorusLine line;
    double level = 0.04;
    Perturbation perturbation;

    ChartPoint point(double s, double phi) const;
    /// Coordinate tangents d/ds and d/dphi at (s, phi).
    std::pair<Tangent, Tangent> tangents(double s, double phi) const;
};

AnsatzSLag build_slag(const calabi::AnsatzChart& chart, const torus::TorusLine& line, double level,
                      Perturbation perturbation = {});

inline constexpr std::size_t kDefaultGrid = 64;

/// sup over the grid of |omega(d_s, d_phi)| / (induced area element).
double lagrangian_residual(const AnsatzSLag& slag, const hk::TripleField& field, std::size_t grid = kDefaultGrid);

struct PhaseProfile {
    std::vector<double> theta;  // row-major over (s, phi), values in [0, 2 pi)
    std::size_t grid = 0;
    double mean_phase = 0.0;
    double max_deviation = 0.0;
    double max_gradient = 0.0;  // max |grad theta| in (s, phi) coordinates
};

/// theta from Omega(d_s, d_phi) = e^{i theta} |Omega(d_s, d_phi)|. Requires a Lagrangian torus.
PhaseProfile phase_profile(const AnsatzSLag& slag, const hk::TripleField& field, std::size_t grid = kDefaultGrid);

/// Integrals of (omega, Omega) over the torus.
struct SLagPeriods {
    double omega = 0.0;
    cplx Omega{};
};

SLagPeriods periods(const AnsatzSLag& slag, const hk::TripleField& field, std::size_t grid = kDefaultGrid);

/// Tori over the lines (1, 0) and (0, 1), generating H_2.
std::pair<AnsatzSLag, AnsatzSLag> h2_generators(const calabi::AnsatzChart& chart, double level = 0.04);

}  // namespace instanton::slag
