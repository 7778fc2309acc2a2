#include <cmath>
#include <numbers>

#include "doctest.h"
#include "instanton/errors.hpp"
#include "instanton/hk_core.hpp"

using namespace instanton;
using namespace instanton::hk;

constexpr double kPi = std::numbers::pi;

namespace {

calabi::AnsatzChart standard() { return calabi::make_chart(torus::make_curve({0, 1}, 1)); }

}  // namespace

TEST_CASE("flat model has no curvature")
{
    const MetricSource src = flat_metric_source();
    const ChartPoint pt{cplx(0.3, 0.1), cplx(-0.2, 0.5)};
    const CurvatureReport r = kahler_curvature(src(pt));
    CHECK(r.rm_norm < 1e-12);
    CHECK(r.ricci_norm < 1e-12);
    CHECK(closedness_defect(src(pt)) == 0.0);
}

TEST_CASE("Calabi metric is Ricci-flat and matches difference curvature")
{
    const auto chart = standard();
    const MetricSource src = calabi_metric_source(chart);
    for (const auto& pt : calabi_samples(chart, 20, 7)) {
        const MetricJet jet = src(pt);
        const CurvatureReport r = kahler_curvature(jet);
        CHECK(r.ricci_norm < 1e-8);
        CHECK(r.rm_norm > 1e-3);
        CHECK(curvature_discrepancy(src, pt) < 1e-6);
        CHECK(closedness_defect(jet) < 1e-10);
    }
}

TEST_CASE("semi-flat metric is Ricci-flat")
{
    for (double b0 : {0.0, -0.7}) {
        const auto params = semiflat::calibrated(semiflat::make_params(1, b0, 0.3));
        const MetricSource src = semiflat_metric_source(params);
        for (const auto& pt : semiflat_samples(params, 10, 11)) {
            CHECK(kahler_curvature(src(pt)).ricci_norm < 1e-8);
            CHECK(curvature_discrepancy(src, pt) < 1e-6);
        }
    }
}

TEST_CASE("triple residuals and constants")
{
    const auto chart = standard();
    const auto pts = calabi_samples(chart, 1000, 42);
    const TripleResidual r = triple_residual(calabi_field(chart), pts);
    CHECK(r.max_deviation < 1e-8);
    CHECK(std::abs(r.mean_ratio - 1 / (4 * kPi * kPi)) < 1e-12);
    CHECK(r.samples == 1000);
    const auto flat_pts = calabi_samples(chart, 10, 1);
    CHECK(triple_residual(flat_field(), flat_pts).max_deviation < 1e-14);
}

TEST_CASE("rotation")
{
    const auto chart = standard();
    const auto pts = calabi_samples(chart, 64, 42);
    const TripleField base = normalize_triple(calabi_field(chart), pts);
    CHECK(std::abs(triple_residual(base, pts).mean_ratio - 1.0) < 1e-12);

    const TripleField once = rotate(base, pts);
    const TripleField thrice = rotate(rotate(once, pts), pts);
    for (const auto& pt : pts) {
        const TriplePoint t0 = base(pt), t1 = once(pt), t3 = thrice(pt);
        // omega-check = Re Omega; rotating three times lands on the single rotation
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                CHECK(std::abs(t1.omega.c[a][b] - t0.Omega.real_part().c[a][b]) < 1e-12);
                CHECK(std::abs(t3.omega.c[a][b] - t1.omega.c[a][b]) < 1e-12);
            }
        const double scale = std::abs(wedge_top(t1.Omega, t1.Omega.conj()));
        CHECK(std::abs(wedge_top(t1.Omega, t1.Omega)) / scale < 1e-10);
    }
    CHECK(std::abs(triple_residual(once, pts).mean_ratio - 1.0) < 1e-8);
}

TEST_CASE("rotated Calabi omega at a hand-checked point")
{
    const auto chart = standard();
    const auto pts = calabi_samples(chart, 64, 42);
    const TripleField base = normalize_triple(calabi_field(chart), pts);
    const TripleField once = rotate(base, pts);
    const ChartPoint pt{cplx(0.2, 0.3), cplx(0.15, -0.1)};
    const cplx coeff = base.omega_scale * chart.f() / pt.z2;
    const Form2 w = once(pt).omega;
    CHECK(std::abs(w.c[0][1] - coeff / 2.0) < 1e-12);
    CHECK(std::abs(w.c[2][3] - std::conj(coeff) / 2.0) < 1e-12);
    CHECK(std::abs(w.c[0][2]) < 1e-12);
}

TEST_CASE("rotate refuses a non-triple")
{
    const auto chart = calabi::make_chart(torus::make_curve({0, 1}, 1), 2.0 / 3.0);
    const auto pts = calabi_samples(chart, 64, 42);
    try {
        rotate(calabi_field(chart), pts);
        FAIL("expected not-a-triple");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotATriple);
    }
}

TEST_CASE("rotation parameters")
{
    const RotationParams a = rotation_parameters({0, 1}, 1);
    CHECK(a.b0 == 0.0);
    CHECK(a.eps == 2 * std::sqrt(2.0) * kPi);
    CHECK(std::abs(a.eps - 8.8858) < 1e-4);
    CHECK(a.alpha == std::sqrt(kPi));
    CHECK(std::abs(a.alpha - 1.7725) < 1e-4);

    const RotationParams b = rotation_parameters({1, 1}, 2);
    CHECK(b.b0 == -1.0);
    CHECK(b.eps == 2 * std::sqrt(2.0) * kPi);
    CHECK(b.alpha == std::sqrt(2 * kPi));

    for (int k = 1; k <= 9; ++k) CHECK(rotation_parameters({0, 0.7}, k).b0 == 0.0);
    for (cplx tau : {cplx(0.3, 0.2), cplx(-1.7, 3.1)})
        for (int k : {1, 5, 9}) {
            const RotationParams p = rotation_parameters(tau, k);
            CHECK(std::abs(tau_from_parameters(p.b0, p.eps, k) - tau) < 1e-12);
        }
    CHECK_THROWS_AS(rotation_parameters({0, 1}, 10), Error);
}

TEST_CASE("rotation consistency")
{
    const RotationConsistency r = rotation_consistency({0, 1}, 1);
    CHECK(r.period_relative_error < 1e-4);
    CHECK(std::abs(r.expected_period - 2 * std::sqrt(2.0) * kPi * std::sqrt(kPi)) < 1e-12);
    CHECK(std::abs(r.omega_period) < 1e-10);
    const RotationConsistency r2 = rotation_consistency({0, 1}, 2);
    CHECK(std::abs(r2.fibre_period / r.fibre_period - std::sqrt(2.0)) < 1e-4);
}

TEST_CASE("decay fits")
{
    const auto chart = standard();
    const DecayReport d = decay_report(DecayModel::Calabi, chart, RaySpec{});
    CHECK_FALSE(d.degenerate);
    CHECK(d.curvature.slope >= -2.1);
    CHECK(d.curvature.slope <= -1.9);
    CHECK(d.circle.slope >= -0.38);
    CHECK(d.circle.slope <= -0.28);
    CHECK(d.samples.back().r / d.samples.front().r >= 10.0);

    const DecayReport flat = decay_report(DecayModel::Flat, chart, RaySpec{});
    CHECK(flat.degenerate);
    CHECK(flat.reason.find("no decay to fit") != std::string::npos);

    RaySpec few;
    few.count = 5;
    CHECK_THROWS_AS(decay_report(DecayModel::Calabi, chart, few), Error);
    RaySpec narrow;
    narrow.depth_min = 100;
    narrow.depth_max = 150;
    CHECK_THROWS_AS(decay_report(DecayModel::Calabi, chart, narrow), Error);
}

TEST_CASE("exponential fit recovers a planted rate")
{
    std::vector<numerics::Sample> s;
    for (int k = 0; k < 20; ++k) {
        const double r = 1.0 + k;
        s.push_back({r, 3.0 * std::exp(-0.8 * std::pow(r, 2.0 / 3.0))});
    }
    const ExponentialFit f = exponential_decay_fit(s);
    CHECK(std::abs(f.delta - 0.8) < 1e-10);
    CHECK(std::abs(f.log_c - std::log(3.0)) < 1e-10);
}
