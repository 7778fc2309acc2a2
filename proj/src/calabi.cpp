#include "instanton/calabi.hpp"

#include <cmath>
#include <numbers>

#include "instanton/errors.hpp"
#include "instanton/numerics.hpp"

namespace instanton::calabi {

namespace {

constexpr double kPi = std::numbers::pi;

void require_off_zero_section(const ChartPoint& pt)
{
    if (pt.z2 == cplx(0.0)) throw Error(ErrorKind::ZeroSection, "w = 0 lies on the excluded zero section");
}

}  // namespace

AnsatzChart make_chart(const torus::EllipticCurveData& curve, double exponent)
{
    if (!(exponent > 0.0)) throw Error(ErrorKind::InvalidArgument, "potential exponent must be positive");
    AnsatzChart chart;
    chart.curve = curve;
    chart.exponent = exponent;
    chart.f_modulus = std::sqrt(8.0 * kPi * kPi * kPi * curve.b / curve.im_tau());
    return chart;
}

double residue_normalization(const AnsatzChart& chart)
{
    return chart.f_modulus;
}

double norm_function(const AnsatzChart& chart, const ChartPoint& pt)
{
    require_off_zero_section(pt);
    const double y = pt.z1.imag();
    return std::norm(pt.z2) * std::exp(-chart.curve.lambda * y * y);
}

Jet minus_log_norm_jet(const AnsatzChart& chart, const ChartPoint& pt)
{
    require_off_zero_section(pt);
    const auto [z, w, zb, wb] = Jet::seed(pt.z1, pt.z2);
    const Jet y = (z - zb) * cplx(0.0, -0.5);
    return chart.curve.lambda * (y * y) - log(w * wb);
}

namespace {

// g_{i jbar} = F'(phi) phi_{i jbar} + F''(phi) phi_i phi_jbar for F = (2/3) phi^p,
// with phi = lambda y^2 - (fibre term); only phi_{z zbar} = lambda / 2 is nonzero.
MetricJet potential_metric(const AnsatzChart& chart, const Jet& phi, const Jet& y, const Jet& phi_w,
                           const Jet& phi_wb)
{
    const double lambda = chart.curve.lambda;
    const double p = chart.exponent;
    const Jet f1 = (2.0 * p / 3.0) * pow(phi, p - 1.0);
    const Jet f2 = (2.0 * p * (p - 1.0) / 3.0) * pow(phi, p - 2.0);
    const Jet phi_z = cplx(0.0, -lambda) * y;
    const Jet phi_zb = cplx(0.0, lambda) * y;

    MetricJet g;
    g[0][0] = f1 * (lambda / 2.0) + f2 * phi_z * phi_zb;
    g[0][1] = f2 * phi_z * phi_wb;
    g[1][0] = f2 * phi_w * phi_zb;
    g[1][1] = f2 * phi_w * phi_wb;
    return g;
}

}  // namespace

MetricJet metric_jet(const AnsatzChart& chart, const ChartPoint& pt)
{
    require_off_zero_section(pt);
    const auto [z, w, zb, wb] = Jet::seed(pt.z1, pt.z2);
    const Jet y = (z - zb) * cplx(0.0, -0.5);
    const Jet phi = chart.curve.lambda * (y * y) - log(w * wb);
    return potential_metric(chart, phi, y, -1.0 / w, -1.0 / wb);
}

MetricJet log_metric_jet(const AnsatzChart& chart, const LogChartPoint& pt)
{
    const auto [z, l, zb, lb] = Jet::seed(pt.z, pt.zeta);
    const Jet y = (z - zb) * cplx(0.0, -0.5);
    const Jet phi = chart.curve.lambda * (y * y) - (l + lb);
    return potential_metric(chart, phi, y, Jet(-1.0), Jet(-1.0));
}

TensorsAtPoint calabi_tensors(const AnsatzChart& chart, const ChartPoint& pt)
{
    const double n = norm_function(chart, pt);
    if (!(n < 1.0)) throw Error(ErrorKind::PotentialDomain, "potential requires N < 1 (so -log N > 0)");
    const MetricJet jet = metric_jet(chart, pt);
    TensorsAtPoint t;
    t.g = metric_value(jet);
    t.omega = Form2::kahler(t.g);
    t.omega_coeff = chart.f() / pt.z2;
    return t;
}

namespace {

// metric length of d/d(log rho) and of d/d(arg w): sqrt(2 g_{zeta zetabar}) in zeta = log w
double fibre_speed(const AnsatzChart& chart, cplx z, cplx zeta)
{
    const MetricJet g = log_metric_jet(chart, {z, zeta});
    return std::sqrt(2.0 * std::real(g[1][1].v));
}

}  // namespace

double radial_distance(const AnsatzChart& chart, const LogChartPoint& pt)
{
    const double phi1 = depth(chart, pt);
    const double phi0 = -std::log(kBaseLevel);
    if (phi1 < phi0 * (1.0 - 1e-12)) throw Error(ErrorKind::OutsideEndRegion, "point lies outside N <= 0.5");
    if (phi1 <= phi0) return 0.0;
    const double y = pt.z.imag();
    const double angle = pt.zeta.imag();

    // integrate in t = log rho between the two level sets, split into
    // segments equally spaced in log(-log N) to follow the power-law integrand
    auto t_of_phi = [&](double phi) { return 0.5 * (chart.curve.lambda * y * y - phi); };
    constexpr int kSegments = 8;
    double total = 0.0;
    for (int k = 0; k < kSegments; ++k) {
        const double pa = phi0 * std::pow(phi1 / phi0, double(k) / kSegments);
        const double pb = phi0 * std::pow(phi1 / phi0, double(k + 1) / kSegments);
        total += numerics::gauss_integrate([&](double t) { return fibre_speed(chart, pt.z, cplx(t, angle)); },
                                           t_of_phi(pb), t_of_phi(pa));
    }
    return total;
}

double radial_distance(const AnsatzChart& chart, const ChartPoint& pt)
{
    return radial_distance(chart, to_log_chart(pt));
}

double circle_length(const AnsatzChart& chart, const LogChartPoint& pt, std::size_t nodes)
{
    const numerics::Grid1D circle{0.0, 2.0 * kPi, nodes, true};
    return numerics::quadrature_periodic(
        [&](double angle) { return fibre_speed(chart, pt.z, cplx(pt.zeta.real(), angle)); }, circle);
}

double circle_length(const AnsatzChart& chart, const ChartPoint& pt, std::size_t nodes)
{
    return circle_length(chart, to_log_chart(pt), nodes);
}

LogChartPoint to_log_chart(const ChartPoint& pt)
{
    require_off_zero_section(pt);
    return {pt.z1, std::log(pt.z2)};
}

double depth(const AnsatzChart& chart, const LogChartPoint& pt)
{
    const double y = pt.z.imag();
    return chart.curve.lambda * y * y - 2.0 * pt.zeta.real();
}

LogChartPoint log_point_at_depth(const AnsatzChart& chart, cplx z, double phi, double angle)
{
    const double y = z.imag();
    return {z, cplx(0.5 * (chart.curve.lambda * y * y - phi), angle)};
}

ChartPoint point_at_level(const AnsatzChart& chart, cplx z, double level, double angle)
{
    if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
    const double y = z.imag();
    const double rho = std::sqrt(level * std::exp(chart.curve.lambda * y * y));
    return {z, std::polar(rho, angle)};
}

ChartPoint sample_end_point(const AnsatzChart& chart, std::mt19937_64& rng, double level_min, double level_max)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double s = unit(rng);
    const double t = unit(rng);
    const double level = level_min * std::pow(level_max / level_min, unit(rng));
    const double angle = 2.0 * kPi * unit(rng);
    return point_at_level(chart, torus::fundamental_point(chart.curve, s, t), level, angle);
}

}  // namespace instanton::calabi
