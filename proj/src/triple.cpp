#include "instanton/triple.hpp"

#include <cmath>
#include <random>

#include "instanton/errors.hpp"

namespace instanton::hk {

TripleField calabi_field(const calabi::AnsatzChart& chart)
{
    TripleField field;
    field.chart = "calabi";
    field.eval = [chart](const ChartPoint& pt) {
        const TensorsAtPoint t = calabi::calabi_tensors(chart, pt);
        return TriplePoint{t.omega, Form2::holomorphic(t.omega_coeff)};
    };
    return field;
}

TripleField semiflat_field(const semiflat::SemiFlatParams& params)
{
    TripleField field;
    field.chart = "semiflat";
    field.eval = [params](const ChartPoint& pt) {
        const TensorsAtPoint t = semiflat::semiflat_tensors(params, {pt.z1, pt.z2});
        return TriplePoint{t.omega, Form2::holomorphic(t.omega_coeff)};
    };
    return field;
}

TripleField flat_field()
{
    TripleField field;
    field.chart = "flat";
    field.eval = [](const ChartPoint&) {
        Hermitian2 g;
        g(0, 0) = 1.0;
        g(1, 1) = 1.0;
        return TriplePoint{Form2::kahler(g), Form2::holomorphic(1.0)};
    };
    return field;
}

double triple_ratio(const TriplePoint& t)
{
    const cplx top = wedge_top(t.Omega, t.Omega.conj());
    if (std::abs(top) == 0.0) throw Error(ErrorKind::DegenerateForm, "Omega ^ conj(Omega) vanishes");
    return std::real(2.0 * wedge_top(t.omega, t.omega) / top);
}

TripleResidual triple_residual(const TripleField& field, std::span<const ChartPoint> sample)
{
    if (sample.size() < 2) throw Error(ErrorKind::InsufficientSamples, "triple residual needs at least 2 points");
    std::vector<double> ratios;
    ratios.reserve(sample.size());
    double sum = 0.0;
    for (const auto& pt : sample) {
        ratios.push_back(triple_ratio(field(pt)));
        sum += ratios.back();
    }
    TripleResidual out;
    out.samples = sample.size();
    out.mean_ratio = sum / double(sample.size());
    for (double r : ratios)
        out.max_deviation = std::max(out.max_deviation, std::abs(r - out.mean_ratio) / std::abs(out.mean_ratio));
    return out;
}

TripleField normalize_triple(const TripleField& field, std::span<const ChartPoint> sample)
{
    const TripleResidual res = triple_residual(field, sample);
    if (res.max_deviation > kRotationTolerance)
        throw Error(ErrorKind::NotATriple, "ratio 2 omega^2 / (Omega ^ conj Omega) is not point-independent");
    if (!(res.mean_ratio > 0.0)) throw Error(ErrorKind::NotATriple, "triple constant is not positive");

    // ratio scales as 1 / |Omega|^2
    const double scale = std::sqrt(res.mean_ratio);
    TripleField out = field;
    out.omega_scale = field.omega_scale * scale;
    out.eval = [inner = field.eval, scale](const ChartPoint& pt) {
        TriplePoint t = inner(pt);
        t.Omega *= scale;
        return t;
    };
    return out;
}

TripleField rotate(const TripleField& field, std::span<const ChartPoint> sample)
{
    const TripleField unit = normalize_triple(field, sample);
    TripleField out = unit;
    out.rotations = field.rotations + 1;
    out.chart = field.chart;
    out.eval = [inner = unit.eval](const ChartPoint& pt) {
        const TriplePoint t = inner(pt);
        TriplePoint r;
        r.omega = t.Omega.real_part();
        r.Omega = t.omega - cplx(0.0, 1.0) * t.Omega.imag_part();
        return r;
    };
    return out;
}

std::vector<ChartPoint> calabi_samples(const calabi::AnsatzChart& chart, std::size_t count, std::uint64_t seed,
                                       double level_min, double level_max)
{
    std::mt19937_64 rng(seed);
    std::vector<ChartPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(calabi::sample_end_point(chart, rng, level_min, level_max));
    return out;
}

std::vector<ChartPoint> semiflat_samples(const semiflat::SemiFlatParams& params, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<ChartPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(semiflat::sample_point(rng, params.b).chart());
    return out;
}

}  // namespace instanton::hk
