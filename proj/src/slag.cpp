#include "instanton/slag.hpp"

#include <cmath>
#include <numeric>
#include <numbers>

#include "instanton/errors.hpp"
#include "instanton/numerics.hpp"

namespace instanton::slag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double theta)
{
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0) theta += kTwoPi;
    return theta >= kTwoPi ? 0.0 : theta;
}

}  // namespace

ChartPoint AnsatzSLag::point(double s, double phi) const
{
    const cplx d = line.direction(chart.curve);
    const cplx z = line.offset + s * d + perturbation.base_amplitude * cplx(0.0, 1.0) * d * std::sin(kTwoPi * s);
    const double n = level * (1.0 + perturbation.level_amplitude * std::sin(kTwoPi * s));
    return calabi::point_at_level(chart, z, n, phi);
}

std::pair<Tangent, Tangent> AnsatzSLag::tangents(double s, double phi) const
{
    const cplx d = line.direction(chart.curve);
    const ChartPoint pt = point(s, phi);
    const double lambda = chart.curve.lambda;
    const double a = perturbation.level_amplitude;

    const cplx z_s = d * (1.0 + perturbation.base_amplitude * cplx(0.0, kTwoPi) * std::cos(kTwoPi * s));
    // log|w| = (log N(s) + lambda y^2) / 2
    const double dlog_level = a * kTwoPi * std::cos(kTwoPi * s) / (1.0 + a * std::sin(kTwoPi * s));
    const double dlog_rho = 0.5 * dlog_level + lambda * pt.z1.imag() * z_s.imag();
    const cplx w_s = pt.z2 * dlog_rho;
    const cplx w_phi = pt.z2 * cplx(0.0, 1.0);
    return {Tangent{z_s, w_s}, Tangent{0.0, w_phi}};
}

AnsatzSLag build_slag(const calabi::AnsatzChart& chart, const torus::TorusLine& line, double level,
                      Perturbation perturbation)
{
    if (!(level > 0.0) || !(level < 1.0)) throw Error(ErrorKind::InvalidArgument, "level must lie in (0, 1)");
    if (std::gcd(line.p, line.q) != 1) throw Error(ErrorKind::InvalidArgument, "line class must be coprime");
    const double top = level * (1.0 + std::abs(perturbation.level_amplitude));
    if (std::abs(perturbation.level_amplitude) >= 1.0 || !(top < 1.0))
        throw Error(ErrorKind::InvalidArgument, "perturbed level leaves (0, 1)");
    return AnsatzSLag{chart, line, level, perturbation};
}

namespace {

// Riemannian metric of a Kahler field in its own chart: g(X, Y) = omega(X, J Y).
double metric(const Form2& omega, const Tangent& x, const Tangent& y)
{
    const Tangent jy{cplx(0.0, 1.0) * y.c1, cplx(0.0, 1.0) * y.c2};
    return std::real(omega(x, jy));
}

double area_element(const Form2& omega, const Tangent& x, const Tangent& y)
{
    const double xx = metric(omega, x, x);
    const double yy = metric(omega, y, y);
    const double xy = metric(omega, x, y);
    const double a2 = xx * yy - xy * xy;
    if (!(a2 > 0.0)) throw Error(ErrorKind::DegenerateForm, "parameterization has dependent tangents");
    return std::sqrt(a2);
}

}  // namespace

double lagrangian_residual(const AnsatzSLag& slag, const hk::TripleField& field, std::size_t grid)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
            const double s = double(i) / double(grid);
            const double phi = kTwoPi * double(j) / double(grid);
            const auto [ts, tphi] = slag.tangents(s, phi);
            const hk::TriplePoint t = field(slag.point(s, phi));
            worst = std::max(worst, std::abs(std::real(t.omega(ts, tphi))) / area_element(t.omega, ts, tphi));
        }
    return worst;
}

PhaseProfile phase_profile(const AnsatzSLag& slag, const hk::TripleField& field, std::size_t grid)
{
    const double residual = lagrangian_residual(slag, field, grid);
    if (residual > 1e-6) throw Error(ErrorKind::InvalidArgument, "phase is defined only on Lagrangian tori");

    auto omega_on = [&](double s, double phi) {
        const auto [ts, tphi] = slag.tangents(s, phi);
        const cplx v = field(slag.point(s, phi)).Omega(ts, tphi);
        if (std::abs(v) == 0.0) throw Error(ErrorKind::DegenerateForm, "Omega vanishes on the torus");
        return v;
    };

    PhaseProfile out;
    out.grid = grid;
    out.theta.reserve(grid * grid);
    cplx mean_dir = 0.0;
    const double h = 1e-5;
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
            const double s = double(i) / double(grid);
            const double phi = kTwoPi * double(j) / double(grid);
            const cplx v = omega_on(s, phi);
            out.theta.push_back(wrap(std::arg(v)));
            mean_dir += v / std::abs(v);
            const double ds = std::arg(omega_on(s + h, phi) / omega_on(s - h, phi)) / (2 * h);
            const double dphi = std::arg(omega_on(s, phi + h) / omega_on(s, phi - h)) / (2 * h);
            out.max_gradient = std::max(out.max_gradient, std::hypot(ds, dphi));
        }
    out.mean_phase = wrap(std::arg(mean_dir));
    for (double th : out.theta) {
        const double diff = std::abs(std::remainder(th - out.mean_phase, kTwoPi));
        out.max_deviation = std::max(out.max_deviation, diff);
    }
    return out;
}

SLagPeriods periods(const AnsatzSLag& slag, const hk::TripleField& field, std::size_t grid)
{
    const numerics::Grid2D g{{0.0, 1.0, grid, true}, {0.0, kTwoPi, grid, true}};
    SLagPeriods out;
    out.omega = numerics::quadrature_periodic(
        [&](double s, double phi) {
            const auto [ts, tphi] = slag.tangents(s, phi);
            return std::real(field(slag.point(s, phi)).omega(ts, tphi));
        },
        g);
    out.Omega = numerics::quadrature_periodic(
        [&](double s, double phi) {
            const auto [ts, tphi] = slag.tangents(s, phi);
            return field(slag.point(s, phi)).Omega(ts, tphi);
        },
        g);
    return out;
}

std::pair<AnsatzSLag, AnsatzSLag> h2_generators(const calabi::AnsatzChart& chart, double level)
{
    return {build_slag(chart, torus::make_line(1, 0), level), build_slag(chart, torus::make_line(0, 1), level)};
}

}  // namespace instanton::slag
