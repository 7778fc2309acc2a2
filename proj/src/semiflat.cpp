#include "instanton/semiflat.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "instanton/errors.hpp"
#include "instanton/torus.hpp"

namespace instanton::semiflat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_disc(cplx u)
{
    const double r = std::abs(u);
    if (!(r > 0.0) || !(r < 1.0)) throw Error(ErrorKind::InvalidArgument, "u must satisfy 0 < |u| < 1");
}

void require_degree(int b)
{
    if (b < 1 || b > torus::kMaxDegree)
        throw Error(ErrorKind::UnsupportedDegree,
                    "degree " + std::to_string(b) + " outside [1, 9]; ALH*_b instantons exist only for b <= 9");
}

cplx require_kappa(const SemiFlatParams& params)
{
    if (!params.kappa) throw Error(ErrorKind::Uncalibrated, "kappa has not been calibrated");
    return *params.kappa;
}

}  // namespace

SemiFlatParams make_params(int b, double b0, double eps)
{
    require_degree(b);
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "fibre size eps must be positive");
    if (!std::isfinite(b0)) throw Error(ErrorKind::InvalidArgument, "b0 must be finite");
    return SemiFlatParams{b, b0, eps, std::nullopt};
}

cplx lattice_period(int b, cplx u)
{
    require_disc(u);
    return double(b) / cplx(0.0, 2.0 * kPi) * std::log(u);
}

cplx reduce_fibre(int b, cplx u, cplx v)
{
    const cplx tau = lattice_period(b, u);
    // v = s + t tau
    const double t = v.imag() / tau.imag();
    const double s = v.real() - t * tau.real();
    return (s - std::floor(s)) + (t - std::floor(t)) * tau;
}

MetricJet metric_jet(const SemiFlatParams& params, const ModelPoint& pt)
{
    require_disc(pt.u);
    const double kappa2 = params.kappa ? std::norm(*params.kappa) : 0.0;
    const double eps = params.eps;
    const double c = params.b0 / (2.0 * kPi * kPi);
    const cplx i(0.0, 1.0);

    const auto [u, v, ub, vb] = Jet::seed(pt.u, pt.v);
    const Jet big_l = -0.5 * log(u * ub);  // |log|u||
    const Jet w = (2.0 * kPi / params.b) / big_l;
    const Jet im_v = (v - vb) * cplx(0.0, -0.5);
    const Jet gamma = i * im_v / (u * big_l) + c * big_l / u;
    const Jet gamma_bar = -i * im_v / (ub * big_l) + c * big_l / ub;
    const Jet half_we = w * (0.5 * eps);

    MetricJet g;
    g[0][0] = kappa2 / (eps * w * u * ub) + half_we * gamma * gamma_bar;
    g[0][1] = half_we * gamma;
    g[1][0] = half_we * gamma_bar;
    g[1][1] = half_we;
    return g;
}

TensorsAtPoint semiflat_tensors(const SemiFlatParams& params, const ModelPoint& pt)
{
    const cplx kappa = require_kappa(params);
    TensorsAtPoint t;
    t.g = metric_value(metric_jet(params, pt));
    t.omega = Form2::kahler(t.g);
    t.omega_coeff = -kappa / pt.u;
    return t;
}

namespace {

// Integral over {|u| = radius, v = s real} parameterized by (s, theta), oriented d/ds, d/dtheta.
template <class F>
auto bad_cycle_integral(F&& integrand, double radius, std::size_t nodes)
{
    const numerics::Grid2D grid{{0.0, 1.0, nodes, true}, {0.0, 2.0 * kPi, nodes, true}};
    return numerics::quadrature_periodic(
        [&](double s, double theta) {
            const cplx u = std::polar(radius, theta);
            const Tangent ds{0.0, 1.0};
            const Tangent dtheta{cplx(0.0, 1.0) * u, 0.0};
            return integrand(ModelPoint{u, s}, ds, dtheta);
        },
        grid);
}

// Integral over the fibre over u, parameterized by v = s + t tau(u).
template <class F>
auto fibre_integral(F&& integrand, int b, cplx u, std::size_t nodes)
{
    const cplx tau = lattice_period(b, u);
    const numerics::Grid1D axis{0.0, 1.0, nodes, true};
    return numerics::quadrature_periodic(
        [&](double s, double t) {
            const Tangent ds{0.0, 1.0};
            const Tangent dt{0.0, tau};
            return integrand(ModelPoint{u, s + t * tau}, ds, dt);
        },
        numerics::Grid2D{axis, axis});
}

}  // namespace

cplx calibrate_kappa(const SemiFlatParams& params, double radius, std::size_t nodes)
{
    if (!(radius > 0.0) || !(radius < 1.0)) throw Error(ErrorKind::InvalidArgument, "radius must lie in (0, 1)");
    if (nodes < 2) throw Error(ErrorKind::DegenerateGrid, "calibration grid needs at least 2 nodes");
    require_degree(params.b);
    const cplx unit_period = bad_cycle_integral(
        [](const ModelPoint& pt, const Tangent& x, const Tangent& y) {
            return Form2::holomorphic(-1.0 / pt.u)(x, y);
        },
        radius, nodes);
    if (std::abs(unit_period) == 0.0) throw Error(ErrorKind::DegenerateGrid, "bad-cycle quadrature vanished");
    return 1.0 / unit_period;
}

SemiFlatParams calibrated(SemiFlatParams params)
{
    params.kappa = calibrate_kappa(params, 0.5);
    return params;
}

namespace {

double form_value(const SemiFlatParams& params, FormSelector form, const ModelPoint& pt, const Tangent& x,
                  const Tangent& y)
{
    const TensorsAtPoint t = semiflat_tensors(params, pt);
    switch (form) {
    case FormSelector::Omega: return std::real(t.omega(x, y));
    case FormSelector::ReHolomorphic: return std::real(Form2::holomorphic(t.omega_coeff)(x, y));
    case FormSelector::ImHolomorphic: return std::imag(Form2::holomorphic(t.omega_coeff)(x, y));
    }
    return 0.0;
}

}  // namespace

double period(const SemiFlatParams& params, FormSelector form, const CycleSpec& cycle, std::size_t nodes)
{
    require_kappa(params);
    if (!(cycle.radius > 0.0) || !(cycle.radius < 1.0))
        throw Error(ErrorKind::InvalidArgument, "cycle radius must lie in (0, 1)");
    auto integrand = [&](const ModelPoint& pt, const Tangent& x, const Tangent& y) {
        return form_value(params, form, pt, x, y);
    };
    auto fibre = [&] { return fibre_integral(integrand, params.b, cplx(cycle.radius), nodes); };
    auto bad = [&] { return bad_cycle_integral(integrand, cycle.radius, nodes); };

    switch (cycle.kind) {
    case CycleKind::Fibre: return fibre();
    case CycleKind::Bad: return bad();
    case CycleKind::QuasiBad: return double(cycle.m) * bad() + fibre();
    }
    return 0.0;
}

double fibre_size(const SemiFlatParams& params, cplx u, std::size_t nodes)
{
    SemiFlatParams p = params;
    if (!p.kappa) p.kappa = cplx(1.0);  // the fibre area does not involve kappa
    return fibre_integral(
        [&](const ModelPoint& pt, const Tangent& x, const Tangent& y) {
            return std::real(semiflat_tensors(p, pt).omega(x, y));
        },
        p.b, u, nodes);
}

double fibre_flatness(const SemiFlatParams& params, cplx u, std::size_t nodes)
{
    const cplx tau = lattice_period(params.b, u);
    const double ref = std::real(metric_jet(params, {u, 0.0})[1][1].v);
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes; ++i)
        for (std::size_t j = 0; j < nodes; ++j) {
            const cplx v = double(i) / nodes + double(j) / nodes * tau;
            const cplx gvv = metric_jet(params, {u, v})[1][1].v;
            worst = std::max(worst, std::abs(gvv - ref));
        }
    return worst;
}

FibrationVerdict fibration_criterion(const SemiFlatParams& params, int m, double tolerance)
{
    FibrationVerdict out;
    out.m = m;
    out.primitive = true;  // gcd(m, 1) = 1
    out.bad_period = period(params, FormSelector::Omega, {CycleKind::Bad, 0, 0.1});
    out.fibre_period = period(params, FormSelector::Omega, {CycleKind::Fibre, 0, 0.1});
    out.class_period = double(m) * out.bad_period + out.fibre_period;
    out.tolerance = tolerance;
    out.exists = std::abs(out.class_period) < tolerance;
    return out;
}

double solve_b0_for_fibration(SemiFlatParams params, int m, double radius)
{
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "class [F] alone has period eps > 0; no b0 solves it");
    if (!params.kappa) params = calibrated(params);
    auto residual = [&](double b0) {
        params.b0 = b0;
        return double(m) * period(params, FormSelector::Omega, {CycleKind::Bad, 0, radius}) +
               period(params, FormSelector::Omega, {CycleKind::Fibre, 0, radius});
    };
    double lo = -1.0, hi = 1.0;
    double flo = residual(lo), fhi = residual(hi);
    for (int k = 0; k < 60 && flo * fhi > 0; ++k) {
        lo *= 2;
        hi *= 2;
        flo = residual(lo);
        fhi = residual(hi);
    }
    if (flo * fhi > 0) throw Error(ErrorKind::InvalidArgument, "no sign change of the class period found");
    for (int k = 0; k < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

numerics::IntMatrix monodromy(int b, double radius, std::size_t steps)
{
    require_degree(b);
    if (!(radius > 0.0) || !(radius < 1.0)) throw Error(ErrorKind::InvalidArgument, "radius must lie in (0, 1)");

    // continue log u along u = radius e^{i theta}, theta: 0 -> 2 pi
    const cplx factor = double(b) / cplx(0.0, 2.0 * kPi);
    cplx log_u = std::log(cplx(radius));
    const cplx tau_start = factor * log_u;
    cplx prev = radius;
    for (std::size_t k = 1; k <= steps; ++k) {
        const cplx u = std::polar(radius, 2.0 * kPi * double(k) / double(steps));
        log_u += std::log(u / prev);  // small step: principal branch is the continuation
        prev = u;
    }
    const cplx tau_end = factor * log_u;

    // tau_end = a * 1 + c * tau_start
    const double c = tau_end.imag() / tau_start.imag();
    const double a = tau_end.real() - c * tau_start.real();
    const long ai = std::lround(a), ci = std::lround(c);
    if (std::abs(a - ai) > 1e-9 || std::abs(c - ci) > 1e-9)
        throw Error(ErrorKind::InvalidArgument, "transported basis is not an integral change of basis");
    return numerics::IntMatrix{{1, ai}, {0, ci}};
}

ModelPoint sample_point(std::mt19937_64& rng, int b, double radius_min, double radius_max)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius_min * std::pow(radius_max / radius_min, unit(rng));
    const cplx u = std::polar(r, 2.0 * kPi * unit(rng) - kPi);
    const cplx tau = lattice_period(b, u);
    const double s = unit(rng);
    const double t = unit(rng);
    return {u, s + t * tau};
}

}  // namespace instanton::semiflat
