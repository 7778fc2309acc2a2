#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "instanton/calabi.hpp"
#include "instanton/forms.hpp"
#include "instanton/semiflat.hpp"

namespace instanton::hk {

/// Pointwise values of a triple: a real 2-form omega and a complex 2-form Omega.
struct TriplePoint {
    Form2 omega;
    Form2 Omega;
};

/// A pointwise-evaluable hyperKahler triple on a chart of C^2. Evaluation is
/// pure, so a field may be sampled from any number of threads.
struct TripleField {
    std::string chart;
    std::function<TriplePoint(const ChartPoint&)> eval;
    /// Factor applied to Omega by normalize_triple (1 for native fields).
    double omega_scale = 1.0;
    int rotations = 0;

    TriplePoint operator()(const ChartPoint& pt) const { return eval(pt); }
};

TripleField calabi_field(const calabi::AnsatzChart& chart);
TripleField semiflat_field(const semiflat::SemiFlatParams& params);
/// Flat C^2 with potential |z|^2 + |w|^2 and Omega = dz ^ dw.
TripleField flat_field();

/// 2 omega^2 / (Omega ^ conj Omega) at one point. Throws degenerate-form when the denominator vanishes.
double triple_ratio(const TriplePoint& t);

struct TripleResidual {
    double mean_ratio = 0.0;
    double max_deviation = 0.0;  // max |ratio - mean| / |mean|
    std::size_t samples = 0;
};

TripleResidual triple_residual(const TripleField& field, std::span<const ChartPoint> sample);

/// Same triple with Omega rescaled by a positive constant so that 2 omega^2 = Omega ^ conj Omega.
TripleField normalize_triple(const TripleField& field, std::span<const ChartPoint> sample);

/// Deviation threshold below which a field counts as a triple for rotation.
inline constexpr double kRotationTolerance = 1e-6;

/// HyperKahler rotation: omega' = Re Omega, Omega' = omega - i Im Omega, applied
/// to the unit-normalized triple. Refuses fields whose residual deviation
/// exceeds kRotationTolerance or whose constant is not positive.
TripleField rotate(const TripleField& field, std::span<const ChartPoint> sample);

/// Sample points for each model family.
std::vector<ChartPoint> calabi_samples(const calabi::AnsatzChart& chart, std::size_t count, std::uint64_t seed,
                                       double level_min = 0.01, double level_max = 0.5);
std::vector<ChartPoint> semiflat_samples(const semiflat::SemiFlatParams& params, std::size_t count,
                                         std::uint64_t seed);

}  // namespace instanton::hk
