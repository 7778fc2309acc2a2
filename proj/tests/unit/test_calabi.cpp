#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "instanton/calabi.hpp"
#include "instanton/errors.hpp"
#include "instanton/triple.hpp"

using namespace instanton;
using namespace instanton::calabi;

constexpr double kPi = std::numbers::pi;

namespace {

AnsatzChart standard() { return make_chart(torus::make_curve({0, 1}, 1)); }

}  // namespace

TEST_CASE("norm_function at real z")
{
    const AnsatzChart c = standard();
    CHECK(norm_function(c, {cplx(0.3, 0.0), cplx(0.5, 0.0)}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(norm_function(c, {cplx(0.3, 0.0), cplx(0.0, 0.0)}), Error);
}

TEST_CASE("norm_function is invariant under z -> z + 1")
{
    const AnsatzChart c = make_chart(torus::make_curve({0.5, 2}, 3));
    for (double y : {0.1, 0.7, 1.3}) {
        const cplx z(0.2, y), w(0.1, 0.3);
        CHECK(norm_function(c, {z + 1.0, w}) == norm_function(c, {z, w}));
    }
}

TEST_CASE("i ddbar(-log N) is omega_D")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int b : {1, 4}) {
        const AnsatzChart c = make_chart(torus::make_curve({0.3, 1.4}, b));
        for (int k = 0; k < 20; ++k) {
            const cplx z = torus::fundamental_point(c.curve, u(rng), u(rng));
            const Jet phi = minus_log_norm_jet(c, {z, cplx(0.2, 0.1)});
            // omega_D = lambda (i/2) dz ^ dzbar; index 0 = z, 2 = conj z
            CHECK(std::abs(phi.dd[0][2] - c.curve.lambda / 2) < 1e-10);
            CHECK(std::abs(phi.dd[1][3]) < 1e-10);
            CHECK(std::abs(phi.dd[0][3]) < 1e-10);
        }
    }
}

TEST_CASE("residue normalization")
{
    const double expected = std::sqrt(8 * kPi * kPi * kPi);
    CHECK(std::abs(standard().f_modulus - expected) < 1e-12);
    CHECK(std::abs(standard().f_modulus - 15.749) < 1e-3);
    CHECK(std::abs(make_chart(torus::make_curve({0, 2}, 2)).f_modulus - expected) < 1e-12);
    const double ratio = make_chart(torus::make_curve({0, 1}, 2)).f_modulus / standard().f_modulus;
    CHECK(std::abs(ratio - std::sqrt(2.0)) < 1e-14);
    const AnsatzChart c = standard();
    CHECK(std::abs(residue_normalization(c) - c.f_modulus) < 1e-12);
    CHECK(std::abs(c.f() - cplx(0.0, -c.f_modulus)) == 0.0);
}

TEST_CASE("metric determinant matches the hand expansion")
{
    // K = (2/3) phi^{3/2}: det g = lambda / (4 |w|^2), so the triple ratio is lambda / |f|^2
    const AnsatzChart c = standard();
    const ChartPoint pts[] = {{cplx(0.1, 0.2), cplx(0.3, 0.0)},
                              {cplx(0.6, 0.9), cplx(0.05, 0.1)},
                              {cplx(0.4, 0.5), cplx(-0.2, 0.25)}};
    for (const auto& pt : pts) {
        const Hermitian2 g = metric_value(metric_jet(c, pt));
        CHECK(g.positive_definite());
        const double expected = c.curve.lambda / (4 * std::norm(pt.z2));
        CHECK(std::abs(g.det() - expected) / expected < 1e-12);
        const hk::TriplePoint t = hk::calabi_field(c)(pt);
        CHECK(std::abs(hk::triple_ratio(t) - c.curve.lambda / (c.f_modulus * c.f_modulus)) < 1e-12);
    }
}

TEST_CASE("metric is positive definite on the sampled end")
{
    const AnsatzChart c = standard();
    std::mt19937_64 rng(42);
    for (int k = 0; k < 1000; ++k) {
        const ChartPoint pt = sample_end_point(c, rng);
        const double n = norm_function(c, pt);
        CHECK(n > 0.01 * (1 - 1e-12));
        CHECK(n < 0.5 * (1 + 1e-12));
        CHECK(calabi_tensors(c, pt).g.positive_definite());
    }
}

TEST_CASE("radial distance")
{
    const AnsatzChart c = standard();
    const cplx z(0.25, 0.3);
    CHECK(std::abs(radial_distance(c, point_at_level(c, z, kBaseLevel))) < 1e-12);

    double previous = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double level = kBaseLevel * std::pow(0.5, k);
        const double r = radial_distance(c, point_at_level(c, z, level));
        CHECK(r > previous);
        previous = r;
    }

    // r / phi^{3/4} over the last decade of depth
    double lo = 1e300, hi = 0.0;
    for (double phi = 100.0; phi <= 1000.0; phi *= 1.2589254117941673) {
        const double ratio = radial_distance(c, log_point_at_depth(c, z, phi)) / std::pow(phi, 0.75);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK((hi - lo) / hi < 0.02);
}

TEST_CASE("log chart agrees with the direct chart")
{
    const AnsatzChart c = standard();
    const ChartPoint pt{cplx(0.3, 0.4), cplx(0.1, -0.2)};
    const LogChartPoint lp = to_log_chart(pt);
    CHECK(std::abs(depth(c, lp) + std::log(norm_function(c, pt))) < 1e-13);
    CHECK(std::abs(circle_length(c, lp) - circle_length(c, pt)) < 1e-10);
}

TEST_CASE("p = 2/3 is not a triple")
{
    const AnsatzChart c = make_chart(torus::make_curve({0, 1}, 1), 2.0 / 3.0);
    const auto pts = hk::calabi_samples(c, 1000, 42);
    CHECK(hk::triple_residual(hk::calabi_field(c), pts).max_deviation > 0.1);
}
