#pragma once

#include <random>

#include "instanton/forms.hpp"
#include "instanton/torus.hpp"

namespace instanton::calabi {

/// Calabi ansatz on the complement of the zero section of a degree-b line
/// bundle over the curve: Kahler potential (2/3) (-log N)^p and
/// Omega = f / w dz ^ dw with constant f.
///
/// The phase of f is fixed to -i, which makes the ansatz special Lagrangian
/// over the line (1, 0) have phase zero, matching torus::line_phase.
struct AnsatzChart {
    torus::EllipticCurveData curve;
    double exponent = 1.5;
    double f_modulus = 0.0;

    cplx f() const { return {0.0, -f_modulus}; }
};

AnsatzChart make_chart(const torus::EllipticCurveData& curve, double exponent = 1.5);

/// |f| forced by the residue normalization: |f|^2 Im(tau) / (4 pi^2) = 2 pi b.
double residue_normalization(const AnsatzChart& chart);

/// Hermitian norm N = |w|^2 exp(-lambda (Im z)^2). Throws zero-section for w = 0.
double norm_function(const AnsatzChart& chart, const ChartPoint& pt);

/// Jet of -log N in the polarized variables.
Jet minus_log_norm_jet(const AnsatzChart& chart, const ChartPoint& pt);

/// Metric components with exact first and second derivatives.
MetricJet metric_jet(const AnsatzChart& chart, const ChartPoint& pt);

/// The same point in the holomorphic chart (z, zeta = log w). Deep end points
/// (N far below double range) are only representable here.
struct LogChartPoint {
    cplx z;
    cplx zeta;
};

LogChartPoint to_log_chart(const ChartPoint& pt);

/// -log N at a log-chart point.
double depth(const AnsatzChart& chart, const LogChartPoint& pt);

/// Point over z with -log N = phi and arg w = angle.
LogChartPoint log_point_at_depth(const AnsatzChart& chart, cplx z, double phi, double angle = 0.0);

/// Metric jets in the (z, zeta) chart.
MetricJet log_metric_jet(const AnsatzChart& chart, const LogChartPoint& pt);

/// Pointwise g, omega and Omega. Requires 0 < N < 1.
TensorsAtPoint calabi_tensors(const AnsatzChart& chart, const ChartPoint& pt);

/// Base level set for radial distances.
inline constexpr double kBaseLevel = 0.5;

/// Arclength along the ray rho -> (z, rho w/|w|) from N = 0.5 down to N(pt).
double radial_distance(const AnsatzChart& chart, const ChartPoint& pt);
double radial_distance(const AnsatzChart& chart, const LogChartPoint& pt);

/// Length of the circle {z fixed, |w| fixed}.
double circle_length(const AnsatzChart& chart, const ChartPoint& pt, std::size_t nodes = 64);
double circle_length(const AnsatzChart& chart, const LogChartPoint& pt, std::size_t nodes = 64);

/// Point over z whose fibre coordinate has norm N = level and argument `angle`.
ChartPoint point_at_level(const AnsatzChart& chart, cplx z, double level, double angle = 0.0);

/// Uniform z in the fundamental domain, log-uniform N in [level_min, level_max].
ChartPoint sample_end_point(const AnsatzChart& chart, std::mt19937_64& rng, double level_min = 0.01,
                            double level_max = 0.5);

}  // namespace instanton::calabi
