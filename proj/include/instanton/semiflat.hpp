#pragma once

#include <optional>
#include <random>

#include "instanton/forms.hpp"
#include "instanton/numerics.hpp"

namespace instanton::semiflat {

/// Parameters of the (possibly non-standard) semi-flat metric on
/// Delta^* x C / Lambda(u), Lambda(u) = Z + Z (b / 2 pi i) log u.
///
/// kappa is the constant in Omega_sf = kappa / u dv ^ du; it is unset until
/// calibrate_kappa fixes it by the unit period over the bad cycle.
struct SemiFlatParams {
    int b = 1;
    double b0 = 0.0;
    double eps = 1.0;
    std::optional<cplx> kappa;
};

SemiFlatParams make_params(int b, double b0, double eps);

/// Chart point (u, v), 0 < |u| < 1.
struct ModelPoint {
    cplx u;
    cplx v;

    ChartPoint chart() const { return {u, v}; }
};

/// Second generator of Lambda(u), using the principal branch of log u.
cplx lattice_period(int b, cplx u);

/// v reduced into the fundamental parallelogram of Lambda(u).
cplx reduce_fibre(int b, cplx u, cplx v);

/// Metric components with exact derivatives. k in W = 2 pi / (k |log|u||) is b.
MetricJet metric_jet(const SemiFlatParams& params, const ModelPoint& pt);

/// g, omega and Omega = -kappa/u du ^ dv. Throws uncalibrated without kappa.
TensorsAtPoint semiflat_tensors(const SemiFlatParams& params, const ModelPoint& pt);

/// kappa making the integral of Omega_sf over the bad cycle {|u| = radius, v real} equal to 1.
cplx calibrate_kappa(const SemiFlatParams& params, double radius, std::size_t nodes = 64);

/// Copy of params with kappa calibrated at radius 1/2.
SemiFlatParams calibrated(SemiFlatParams params);

enum class CycleKind { Fibre, Bad, QuasiBad };
enum class FormSelector { Omega, ReHolomorphic, ImHolomorphic };

/// Fibre F over u = radius; bad cycle C over |u| = radius; quasi-bad m C + F.
struct CycleSpec {
    CycleKind kind = CycleKind::Fibre;
    int m = 0;
    double radius = 0.1;
};

double period(const SemiFlatParams& params, FormSelector form, const CycleSpec& cycle, std::size_t nodes = 64);

/// Symplectic area of the fibre over u.
double fibre_size(const SemiFlatParams& params, cplx u, std::size_t nodes = 32);

/// Largest change of the fibre metric coefficient g_{v vbar} across the fibre over u.
double fibre_flatness(const SemiFlatParams& params, cplx u, std::size_t nodes = 16);

struct FibrationVerdict {
    bool exists = false;
    int m = 0;
    bool primitive = true;
    double bad_period = 0.0;
    double fibre_period = 0.0;
    double class_period = 0.0;
    double tolerance = 0.0;
};

/// A special Lagrangian fibration in class m[C] + [F] exists iff its omega-period vanishes.
FibrationVerdict fibration_criterion(const SemiFlatParams& params, int m, double tolerance = 1e-8);

/// b0 at which the class m[C] + [F] has zero omega-period, found by bracketing
/// and bisection on the measured period function. Requires m != 0.
double solve_b0_for_fibration(SemiFlatParams params, int m, double radius = 0.1);

/// Monodromy of Lambda(u) around the puncture, tracked along |u| = radius.
numerics::IntMatrix monodromy(int b, double radius = 0.5, std::size_t steps = 256);

ModelPoint sample_point(std::mt19937_64& rng, int b, double radius_min = 0.01, double radius_max = 0.5);

}  // namespace instanton::semiflat
