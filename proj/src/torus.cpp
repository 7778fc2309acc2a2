#include "instanton/torus.hpp"

#include <numbers>
#include <numeric>
#include <string>

#include "instanton/errors.hpp"
#include "instanton/forms.hpp"
#include "instanton/numerics.hpp"

namespace instanton::torus {

EllipticCurveData make_curve(cplx tau, int b)
{
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw Error(ErrorKind::InvalidModulus, "modulus must lie in the upper half-plane");
    if (b < 1 || b > kMaxDegree)
        throw Error(ErrorKind::UnsupportedDegree,
                    "degree " + std::to_string(b) + " outside [1, 9]; ALH*_b instantons exist only for b <= 9");
    EllipticCurveData curve;
    curve.tau = tau;
    curve.b = b;
    curve.lambda = 2.0 * std::numbers::pi * b / tau.imag();
    return curve;
}

cplx holomorphic_volume(const EllipticCurveData& curve)
{
    return std::sqrt(curve.lambda);
}

TorusLine make_line(int p, int q, cplx offset)
{
    if (std::gcd(p, q) != 1) throw Error(ErrorKind::InvalidArgument, "line class (p, q) must be coprime");
    return TorusLine{p, q, offset};
}

double line_phase(const EllipticCurveData& curve, const TorusLine& line)
{
    double theta = std::arg(holomorphic_volume(curve) * line.direction(curve));
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    return theta;
}

double total_area(const EllipticCurveData& curve, std::size_t nodes)
{
    // omega_D(d/ds, d/dt) with dz(d/ds) = 1, dz(d/dt) = tau
    const Form2 omega_d = [&] {
        Form2 f;
        f.set(0, 2, cplx(0, 0.5 * curve.lambda));
        return f;
    }();
    const Tangent ds{1.0, 0.0};
    const Tangent dt{curve.tau, 0.0};
    const numerics::Grid1D axis{0.0, 1.0, nodes, true};
    return numerics::quadrature_periodic(
        [&](double, double) { return std::real(omega_d(ds, dt)); }, numerics::Grid2D{axis, axis});
}

}  // namespace instanton::torus
