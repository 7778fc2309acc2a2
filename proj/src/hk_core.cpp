#include "instanton/hk_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "instanton/errors.hpp"
#include "instanton/parallel.hpp"
#include "instanton/slag.hpp"

namespace instanton::hk {

namespace {

constexpr double kPi = std::numbers::pi;

using Mat2 = std::array<std::array<cplx, 2>, 2>;

// Derivative data of g_{i jbar}: dk[k] = d_k g, dl[l] = d_lbar g, dkl[k][l] = d_k d_lbar g.
struct MetricDerivatives {
    Hermitian2 g;
    std::array<Mat2, 2> dk{};
    std::array<Mat2, 2> dl{};
    std::array<std::array<Mat2, 2>, 2> dkl{};
};

CurvatureTensor assemble(const MetricDerivatives& m)
{
    if (!m.g.positive_definite()) throw Error(ErrorKind::SingularMetric, "metric is not positive definite");
    const Hermitian2 inv = m.g.inverse();
    CurvatureTensor out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    cplx r = -m.dkl[k][l][i][j];
                    for (int p = 0; p < 2; ++p)
                        for (int q = 0; q < 2; ++q) r += inv(q, p) * m.dk[k][i][q] * m.dl[l][p][j];
                    out.R[i][j][k][l] = r;
                }
    return out;
}

// Columns of E form a unitary frame: E^T g conj(E) = I.
Mat2 unitary_frame(const Hermitian2& g)
{
    const double l00 = std::sqrt(std::real(g(0, 0)));
    const cplx l10 = g(1, 0) / l00;
    const double l11 = std::sqrt(std::real(g(1, 1)) - std::norm(l10));
    // L^{-1} for L = [[l00, 0], [l10, l11]], then transpose
    const cplx i00 = 1.0 / l00, i11 = 1.0 / l11, i10 = -l10 / (l00 * l11);
    Mat2 e{};
    e[0][0] = i00;
    e[0][1] = i10;
    e[1][0] = 0.0;
    e[1][1] = i11;
    return e;
}

CurvatureTensor to_frame(const Hermitian2& g, const CurvatureTensor& rm)
{
    const Mat2 e = unitary_frame(g);
    CurvatureTensor out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    cplx sum = 0.0;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            for (int k = 0; k < 2; ++k)
                                for (int l = 0; l < 2; ++l)
                                    sum += e[i][a] * std::conj(e[j][b]) * e[k][c] * std::conj(e[l][d]) *
                                           rm.R[i][j][k][l];
                    out.R[a][b][c][d] = sum;
                }
    return out;
}

MetricDerivatives from_jet(const MetricJet& jet)
{
    MetricDerivatives m;
    m.g = metric_value(jet);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                m.dk[k][i][j] = jet[i][j].d[k];
                m.dl[k][i][j] = jet[i][j].d[2 + k];
                for (int l = 0; l < 2; ++l) m.dkl[k][l][i][j] = jet[i][j].dd[k][2 + l];
            }
    return m;
}

// Real coordinates x = (Re z1, Im z1, Re z2, Im z2).
using Real4 = std::array<double, 4>;
using Values = std::array<cplx, 4>;  // g00, g01, g10, g11

Values& operator+=(Values& a, const Values& b)
{
    for (int i = 0; i < 4; ++i) a[i] += b[i];
    return a;
}

Values scaled(const Values& a, double s)
{
    Values out;
    for (int i = 0; i < 4; ++i) out[i] = a[i] * s;
    return out;
}

template <class F>
Values diff4(F&& f, Real4 x, int dir, double h)
{
    const double x0 = x[dir];
    auto at = [&](double off) {
        x[dir] = x0 + off;
        return f(x);
    };
    Values out = scaled(at(-2 * h), 1.0);
    out += scaled(at(-h), -8.0);
    out += scaled(at(h), 8.0);
    out += scaled(at(2 * h), -1.0);
    return scaled(out, 1.0 / (12.0 * h));
}

// Richardson combination of the 4th-order stencil at h and h/2.
template <class F>
Values diff6(F&& f, const Real4& x, int dir, double h)
{
    Values out = scaled(diff4(f, x, dir, 0.5 * h), 16.0 / 15.0);
    out += scaled(diff4(f, x, dir, h), -1.0 / 15.0);
    return out;
}

}  // namespace

CurvatureTensor curvature_tensor(const MetricJet& jet) { return assemble(from_jet(jet)); }

CurvatureReport curvature_norms(const Hermitian2& g, const CurvatureTensor& rm)
{
    const CurvatureTensor f = to_frame(g, rm);
    CurvatureReport out;
    double rm2 = 0.0, ric2 = 0.0;
    for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
            cplx ric = 0.0;
            for (int a = 0; a < 2; ++a) {
                ric += f.R[a][a][c][d];
                for (int b = 0; b < 2; ++b) rm2 += std::norm(f.R[a][b][c][d]);
            }
            ric2 += std::norm(ric);
        }
    out.rm_norm = std::sqrt(rm2);
    out.ricci_norm = std::sqrt(ric2);
    return out;
}

CurvatureReport kahler_curvature(const MetricJet& jet)
{
    const Hermitian2 g = metric_value(jet);
    return curvature_norms(g, curvature_tensor(jet));
}

CurvatureTensor fd_curvature_tensor(const MetricSource& source, const ChartPoint& pt)
{
    auto values = [&](const Real4& x) {
        const Hermitian2 g = metric_value(source({{x[0], x[1]}, {x[2], x[3]}}));
        return Values{g(0, 0), g(0, 1), g(1, 0), g(1, 1)};
    };
    const Real4 x{pt.z1.real(), pt.z1.imag(), pt.z2.real(), pt.z2.imag()};
    const double base = 4e-3;
    const std::array<double, 2> scale{std::min(1.0, std::abs(pt.z1)), std::min(1.0, std::abs(pt.z2))};
    std::array<double, 4> h{};
    for (int a = 0; a < 4; ++a) h[a] = base * std::max(scale[a / 2], 1e-3);

    std::array<Values, 4> first{};
    std::array<std::array<Values, 4>, 4> second{};
    for (int a = 0; a < 4; ++a) {
        first[a] = diff6(values, x, a, h[a]);
        for (int b = a; b < 4; ++b) {
            auto inner = [&](const Real4& y) { return diff6(values, y, b, h[b]); };
            second[a][b] = diff6(inner, x, a, h[a]);
            second[b][a] = second[a][b];
        }
    }

    const cplx I(0.0, 1.0);
    MetricDerivatives m;
    m.g = metric_value(source(pt));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int idx = 2 * i + j;
            for (int k = 0; k < 2; ++k) {
                const int xk = 2 * k, yk = 2 * k + 1;
                m.dk[k][i][j] = 0.5 * (first[xk][idx] - I * first[yk][idx]);
                m.dl[k][i][j] = 0.5 * (first[xk][idx] + I * first[yk][idx]);
                for (int l = 0; l < 2; ++l) {
                    const int xl = 2 * l, yl = 2 * l + 1;
                    m.dkl[k][l][i][j] = 0.25 * (second[xk][xl][idx] + second[yk][yl][idx] +
                                                I * (second[xk][yl][idx] - second[yk][xl][idx]));
                }
            }
        }
    return assemble(m);
}

double curvature_discrepancy(const MetricSource& source, const ChartPoint& pt)
{
    const MetricJet jet = source(pt);
    const Hermitian2 g = metric_value(jet);
    const CurvatureTensor exact = to_frame(g, curvature_tensor(jet));
    const CurvatureTensor fd = to_frame(g, fd_curvature_tensor(source, pt));
    double worst = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) worst = std::max(worst, std::abs(exact.R[a][b][c][d] - fd.R[a][b][c][d]));
    const double rm = curvature_norms(g, curvature_tensor(jet)).rm_norm;
    return worst / std::max(1.0, rm);
}

double closedness_defect(const MetricJet& jet)
{
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
        worst = std::max(worst, std::abs(jet[0][j].d[1] - jet[1][j].d[0]));
        worst = std::max(worst, std::abs(jet[j][0].d[3] - jet[j][1].d[2]));
    }
    return worst;
}

MetricSource calabi_metric_source(const calabi::AnsatzChart& chart)
{
    return [chart](const ChartPoint& pt) { return calabi::metric_jet(chart, pt); };
}

MetricSource semiflat_metric_source(const semiflat::SemiFlatParams& params)
{
    const semiflat::SemiFlatParams p = params.kappa ? params : semiflat::calibrated(params);
    return [p](const ChartPoint& pt) { return semiflat::metric_jet(p, {pt.z1, pt.z2}); };
}

MetricSource flat_metric_source()
{
    return [](const ChartPoint&) {
        MetricJet j;
        j[0][0] = Jet(1.0);
        j[1][1] = Jet(1.0);
        return j;
    };
}

// ---------------------------------------------------------------------------

RotationParams rotation_parameters(cplx tau, int b)
{
    const torus::EllipticCurveData curve = torus::make_curve(tau, b);  // validates
    RotationParams out;
    out.b0 = -0.5 * tau.real() * double(b) + 0.0;  // + 0.0 maps -0 to 0
    out.eps = 2.0 * std::numbers::sqrt2 * kPi / curve.im_tau();
    out.alpha = std::sqrt(double(b) * kPi * curve.im_tau());
    return out;
}

cplx tau_from_parameters(double b0, double eps, int b)
{
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    if (b < 1 || b > torus::kMaxDegree) throw Error(ErrorKind::UnsupportedDegree, "degree outside [1, 9]");
    return {-2.0 * b0 / double(b), 2.0 * std::numbers::sqrt2 * kPi / eps};
}

RotationConsistency rotation_consistency(cplx tau, int b, std::uint64_t seed, std::size_t samples)
{
    RotationConsistency out;
    out.params = rotation_parameters(tau, b);
    out.expected_period = out.params.alpha * out.params.eps;

    const calabi::AnsatzChart chart = calabi::make_chart(torus::make_curve(tau, b));
    const TripleField calabi = calabi_field(chart);
    const std::vector<ChartPoint> pts = calabi_samples(chart, samples, seed);
    out.calabi_constant = triple_residual(calabi, pts).mean_ratio;
    const TripleField rotated = rotate(calabi, pts);
    out.rotated_constant = triple_residual(rotated, pts).mean_ratio;

    const slag::AnsatzSLag torus = slag::build_slag(chart, torus::make_line(1, 0), 0.04);
    out.fibre_period = slag::periods(torus, rotated).omega;
    out.omega_period = slag::periods(torus, calabi).omega;
    out.period_relative_error = std::abs(out.fibre_period - out.expected_period) / out.expected_period;

    const semiflat::SemiFlatParams sf =
        semiflat::calibrated(semiflat::make_params(b, out.params.b0, out.params.eps));
    const std::vector<ChartPoint> sf_pts = semiflat_samples(sf, samples, seed);
    out.semiflat_constant = triple_residual(semiflat_field(sf), sf_pts).mean_ratio;
    return out;
}

// ---------------------------------------------------------------------------

DecayReport decay_report(DecayModel model, const calabi::AnsatzChart& chart, const RaySpec& ray)
{
    if (ray.count < 10) throw Error(ErrorKind::InsufficientSamples, "decay fit needs at least 10 samples");
    if (!(ray.depth_min > 0.0) || !(ray.depth_max > ray.depth_min))
        throw Error(ErrorKind::InvalidArgument, "ray depth window must satisfy 0 < min < max");

    std::vector<double> depths(ray.count);
    for (std::size_t i = 0; i < ray.count; ++i)
        depths[i] = ray.depth_min * std::pow(ray.depth_max / ray.depth_min, double(i) / double(ray.count - 1));

    DecayReport out;
    if (model == DecayModel::Flat) {
        // flat C^2 along a ray: distance |w|, circle length 2 pi |w|, no curvature
        for (double d : depths) out.samples.push_back({d, 0.0, 2.0 * kPi * d});
        out.degenerate = true;
        out.reason = "no decay to fit: |Rm| vanishes identically";
        return out;
    }

    out.samples = parallel_map<DecaySample>(ray.count, [&](std::size_t i) {
        const calabi::LogChartPoint pt = calabi::log_point_at_depth(chart, ray.z, depths[i], ray.angle);
        DecaySample s;
        s.r = calabi::radial_distance(chart, pt);
        s.rm = kahler_curvature(calabi::log_metric_jet(chart, pt)).rm_norm;
        s.circle_length = calabi::circle_length(chart, pt);
        return s;
    });
    std::sort(out.samples.begin(), out.samples.end(), [](const auto& a, const auto& b) { return a.r < b.r; });

    if (!(out.samples.front().r > 0.0) || out.samples.back().r / out.samples.front().r < 10.0)
        throw Error(ErrorKind::InsufficientSamples, "samples span less than one decade of r");
    if (std::any_of(out.samples.begin(), out.samples.end(), [](const auto& s) { return !(s.rm > 0.0); })) {
        out.degenerate = true;
        out.reason = "no decay to fit: |Rm| vanishes at a sample";
        return out;
    }

    std::vector<numerics::Sample> rm, circle;
    for (const auto& s : out.samples) {
        rm.push_back({s.r, s.rm});
        circle.push_back({s.r, s.circle_length});
    }
    out.curvature = numerics::loglog_fit(rm);
    out.circle = numerics::loglog_fit(circle);
    return out;
}

ExponentialFit exponential_decay_fit(std::span<const numerics::Sample> samples)
{
    if (samples.size() < 3) throw Error(ErrorKind::InsufficientSamples, "exponential fit needs at least 3 samples");
    std::vector<double> x, y;
    for (const auto& s : samples) {
        if (!(s.y > 0.0) || !(s.r > 0.0)) throw Error(ErrorKind::InvalidArgument, "samples need r > 0 and y > 0");
        x.push_back(std::cbrt(s.r * s.r));
        y.push_back(std::log(s.y));
    }
    const numerics::FitResult fit = numerics::linear_fit(x, y);
    return {-fit.slope, fit.intercept, fit.residual_rms};
}

}  // namespace instanton::hk
