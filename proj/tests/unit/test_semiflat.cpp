#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "instanton/errors.hpp"
#include "instanton/semiflat.hpp"
#include "instanton/triple.hpp"

using namespace instanton;
using namespace instanton::semiflat;

constexpr double kPi = std::numbers::pi;

TEST_CASE("fibre size is eps")
{
    for (double b0 : {0.0, -0.7})
        for (double eps : {0.3, 2.0})
            for (double radius : {0.1, 0.01}) {
                const SemiFlatParams p = make_params(2, b0, eps);
                CHECK(std::abs(fibre_size(p, radius) - eps) < 1e-8);
                CHECK(fibre_flatness(p, cplx(0.0, radius)) < 1e-12);
            }
}

TEST_CASE("b0 = 0 reproduces the standard metric")
{
    std::mt19937_64 rng(3);
    const SemiFlatParams p = calibrated(make_params(3, 0.0, 0.5));
    const double kappa2 = std::norm(*p.kappa);
    for (int k = 0; k < 20; ++k) {
        const ModelPoint pt = sample_point(rng, 3);
        const double l = -std::log(std::abs(pt.u));
        const double w = 2 * kPi / (3 * l);
        const cplx beta = cplx(0.0, pt.v.imag()) / (pt.u * l);
        const double e = 0.5;
        const MetricJet j = metric_jet(p, pt);
        CHECK(std::abs(j[1][1].v - e * w / 2) < 1e-13);
        CHECK(std::abs(j[0][1].v - e * w / 2 * beta) < 1e-13);
        const double guu = kappa2 / (e * w * std::norm(pt.u)) + e * w / 2 * std::norm(beta);
        CHECK(std::abs(j[0][0].v - guu) / guu < 1e-13);
    }
}

TEST_CASE("kappa calibration")
{
    const SemiFlatParams p = make_params(1, 0.0, 0.3);
    const cplx k1 = calibrate_kappa(p, 0.1);
    const cplx k2 = calibrate_kappa(p, 0.01);
    CHECK(std::abs(std::abs(k1) - 1 / (2 * kPi)) < 1e-12);
    CHECK(std::abs(std::abs(std::arg(k1)) - kPi / 2) < 1e-12);
    CHECK(std::abs(k1 - k2) < 1e-10);

    const SemiFlatParams c = calibrated(p);
    for (double radius : {0.1, 0.01}) {
        const double re = period(c, FormSelector::ReHolomorphic, {CycleKind::Bad, 0, radius});
        const double im = period(c, FormSelector::ImHolomorphic, {CycleKind::Bad, 0, radius});
        CHECK(std::abs(re - 1.0) < 1e-10);
        CHECK(std::abs(im) < 1e-10);
    }
}

TEST_CASE("uncalibrated params are refused")
{
    try {
        semiflat_tensors(make_params(1, 0.0, 1.0), {cplx(0.1, 0.0), cplx(0.2, 0.0)});
        FAIL("expected uncalibrated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Uncalibrated);
    }
}

TEST_CASE("periods")
{
    const SemiFlatParams p = calibrated(make_params(2, -0.4, 0.7));
    CHECK(std::abs(period(p, FormSelector::Omega, {CycleKind::Fibre, 0, 0.1}) - 0.7) < 1e-8);
    const double c1 = period(p, FormSelector::Omega, {CycleKind::Bad, 0, 0.1});
    const double c2 = period(p, FormSelector::Omega, {CycleKind::Bad, 0, 0.01});
    CHECK(std::abs(c1 - c2) < 1e-8);
    for (int m : {-2, 1, 3}) {
        const double q = period(p, FormSelector::Omega, {CycleKind::QuasiBad, m, 0.1});
        CHECK(std::abs(q - (m * c1 + 0.7)) < 1e-8);
    }
    const SemiFlatParams s = calibrated(make_params(2, 0.0, 0.7));
    const double p0 = period(s, FormSelector::Omega, {CycleKind::Bad, 0, 0.1});
    CHECK(std::abs(p0 - period(s, FormSelector::Omega, {CycleKind::Bad, 0, 0.01})) < 1e-8);
}

TEST_CASE("fibration criterion")
{
    const SemiFlatParams standard = calibrated(make_params(1, 0.0, 0.3));
    for (int m : {-3, 0, 1, 4}) CHECK_FALSE(fibration_criterion(standard, m).exists);
    for (double b0 : {-2.0, -0.5, 0.0, 1.0}) CHECK_FALSE(fibration_criterion(calibrated(make_params(1, b0, 0.3)), 0).exists);

    const double tuned = solve_b0_for_fibration(standard, 1);
    const SemiFlatParams p = calibrated(make_params(1, tuned, 0.3));
    const FibrationVerdict v = fibration_criterion(p, 1);
    CHECK(v.exists);
    CHECK(std::abs(v.bad_period + 0.3) < 1e-8);
    CHECK(v.primitive);
    CHECK_THROWS_AS(solve_b0_for_fibration(standard, 0), Error);
}

TEST_CASE("monodromy")
{
    CHECK(monodromy(1) == numerics::IntMatrix{{1, 1}, {0, 1}});
    CHECK(monodromy(9) == numerics::IntMatrix{{1, 9}, {0, 1}});
    for (int b = 1; b <= 9; ++b) {
        const numerics::IntMatrix m = monodromy(b);
        CHECK(m.determinant() == 1);
        CHECK(m(0, 0) + m(1, 1) == 2);
    }
    CHECK_THROWS_AS(monodromy(10), Error);
}

TEST_CASE("semi-flat triples")
{
    for (double b0 : {0.0, -0.7}) {
        const SemiFlatParams p = calibrated(make_params(1, b0, 0.3));
        const auto pts = hk::semiflat_samples(p, 1000, 42);
        const hk::TripleResidual r = hk::triple_residual(hk::semiflat_field(p), pts);
        CHECK(r.max_deviation < 1e-8);
    }
}
