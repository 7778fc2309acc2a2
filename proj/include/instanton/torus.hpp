#pragma once

#include <complex>

#include "instanton/jet.hpp"

namespace instanton::torus {

/// Elliptic curve C / (Z + Z tau) of degree b with flat Kahler form
/// omega_D = lambda (i/2) dz ^ dzbar, normalized so its total area is 2 pi b.
struct EllipticCurveData {
    cplx tau;
    int b = 1;
    double lambda = 0.0;

    double im_tau() const { return tau.imag(); }
};

/// Largest degree a rational elliptic surface admits for an I_b fibre.
inline constexpr int kMaxDegree = 9;

/// Throws invalid-modulus when Im tau <= 0 and unsupported-degree when b is outside [1, 9].
EllipticCurveData make_curve(cplx tau, int b);

/// Coefficient c of Omega_D = c dz. Positive real, |c|^2 = lambda.
cplx holomorphic_volume(const EllipticCurveData& curve);

/// Straight line of class p [1] + q [tau] through `offset`.
struct TorusLine {
    int p = 1;
    int q = 0;
    cplx offset{};

    /// Direction p + q tau of the line in the z-plane.
    cplx direction(const EllipticCurveData& curve) const { return double(p) + double(q) * curve.tau; }
};

TorusLine make_line(int p, int q, cplx offset = {});

/// Phase in [0, 2 pi) of the line as a special Lagrangian of (omega_D, Omega_D).
double line_phase(const EllipticCurveData& curve, const TorusLine& line);

/// z = s + t tau on the unit square.
inline cplx fundamental_point(const EllipticCurveData& curve, double s, double t)
{
    return s + t * curve.tau;
}

/// Total omega_D area by periodic trapezoid quadrature over the fundamental domain.
double total_area(const EllipticCurveData& curve, std::size_t nodes = 32);

}  // namespace instanton::torus
