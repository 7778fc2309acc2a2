#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "instanton/calabi.hpp"
#include "instanton/numerics.hpp"
#include "instanton/triple.hpp"

namespace instanton::hk {

// ---------------------------------------------------------------------------
// Curvature

/// Metric jets g_{i jbar} with exact derivatives up to second order.
using MetricSource = std::function<MetricJet(const ChartPoint&)>;

struct CurvatureTensor {
    // R[i][j][k][l] = R_{i jbar k lbar}
    std::array<std::array<std::array<std::array<cplx, 2>, 2>, 2>, 2> R{};
};

struct CurvatureReport {
    double rm_norm = 0.0;     // |Rm| in a unitary frame
    double ricci_norm = 0.0;  // |Ric| in a unitary frame
};

/// R_{i jbar k lbar} = -d_k d_lbar g_{i jbar} + g^{qbar p} (d_k g_{i qbar}) (d_lbar g_{p jbar}).
CurvatureTensor curvature_tensor(const MetricJet& jet);
CurvatureReport curvature_norms(const Hermitian2& g, const CurvatureTensor& rm);
CurvatureReport kahler_curvature(const MetricJet& jet);

/// Curvature from metric values alone, by nested 4th-order central differences.
CurvatureTensor fd_curvature_tensor(const MetricSource& source, const ChartPoint& pt);

/// Largest frame-component difference between jet and difference curvature,
/// relative to max(1, |Rm|).
double curvature_discrepancy(const MetricSource& source, const ChartPoint& pt);

/// max |d_k g_{i jbar} - d_i g_{k jbar}| (zero iff omega is closed at the point).
double closedness_defect(const MetricJet& jet);

MetricSource calabi_metric_source(const calabi::AnsatzChart& chart);
MetricSource semiflat_metric_source(const semiflat::SemiFlatParams& params);
MetricSource flat_metric_source();

// ---------------------------------------------------------------------------
// Parameter correspondence

struct RotationParams {
    double b0 = 0.0;
    double eps = 0.0;
    double alpha = 0.0;
};

/// b0 = -Re(tau) b / 2, eps = 2 sqrt(2) pi / Im(tau), alpha = sqrt(b pi Im(tau)).
RotationParams rotation_parameters(cplx tau, int b);

/// Inverse of the (b0, eps) part: tau = -2 b0 / b + i 2 sqrt(2) pi / eps.
cplx tau_from_parameters(double b0, double eps, int b);

struct RotationConsistency {
    RotationParams params;
    double fibre_period = 0.0;       // period of the rotated omega over the torus over (1, 0)
    double expected_period = 0.0;    // alpha * eps
    double period_relative_error = 0.0;
    double omega_period = 0.0;       // period of omega_C over the same torus
    double calabi_constant = 0.0;    // measured 2 omega^2 / (Omega ^ conj Omega)
    double semiflat_constant = 0.0;
    double rotated_constant = 0.0;   // constant of the rotated Calabi triple
};

RotationConsistency rotation_consistency(cplx tau, int b, std::uint64_t seed = 42, std::size_t samples = 64);

// ---------------------------------------------------------------------------
// Decay

struct DecaySample {
    double r = 0.0;
    double rm = 0.0;
    double circle_length = 0.0;
};

enum class DecayModel { Calabi, Flat };

/// Points along a ray of the end: fixed z and arg w, -log N log-spaced in [depth_min, depth_max].
struct RaySpec {
    cplx z{0.25, 0.3};
    double angle = 0.0;
    double depth_min = 10.0;
    double depth_max = 1000.0;
    std::size_t count = 24;
};

struct DecayReport {
    bool degenerate = false;
    std::string reason;
    numerics::FitResult curvature;
    numerics::FitResult circle;
    std::vector<DecaySample> samples;  // sorted by r
};

/// Requires at least 10 samples spanning at least one decade of r.
DecayReport decay_report(DecayModel model, const calabi::AnsatzChart& chart, const RaySpec& ray);

struct ExponentialFit {
    double delta = 0.0;      // y ~ C exp(-delta r^{2/3})
    double log_c = 0.0;
    double residual_rms = 0.0;
};

/// Fit of a difference-field magnitude against exp(-delta r^{2/3}). Samples need y > 0.
ExponentialFit exponential_decay_fit(std::span<const numerics::Sample> samples);

}  // namespace instanton::hk
