#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "instanton/numerics.hpp"

using namespace instanton;
using namespace instanton::numerics;

TEST_CASE("central_diff of x^2 at 3")
{
    CHECK(std::abs(central_diff_1d([](double x) { return x * x; }, 3.0, 1e-3) - 6.0) < 1e-9);
}

TEST_CASE("central_diff of a constant is exactly zero")
{
    CHECK(central_diff_1d([](double) { return 4.25; }, -1.7, 1e-2) == 0.0);
}

TEST_CASE("central_diff of exp at 0")
{
    CHECK(std::abs(central_diff_1d([](double x) { return std::exp(x); }, 0.0, 1e-2) - 1.0) < 1e-10);
}

TEST_CASE("central_diff rejects bad input")
{
    const std::vector<double> p{1.0};
    auto f = [](std::span<const double> v) { return v[0]; };
    CHECK_THROWS_AS(central_diff(f, std::span<const double>(p), 0, 0.0), Error);
    CHECK_THROWS_AS(central_diff(f, std::span<const double>(p), 1, 1e-3), Error);
}

TEST_CASE("periodic quadrature")
{
    const double two_pi = 2 * std::numbers::pi;
    Grid2D unit{{0, 1, 16, true}, {0, 1, 16, true}};
    CHECK(quadrature_periodic([](double, double) { return 1.0; }, unit) == 1.0);

    Grid1D g{0, 1, 64, true};
    CHECK(std::abs(quadrature_periodic([&](double x) { return std::sin(two_pi * x); }, g)) < 1e-14);

    auto f = [&](double x) { return std::exp(std::sin(two_pi * x)); };
    Grid1D fine{0, 1, 256, true};
    CHECK(std::abs(quadrature_periodic(f, g) - quadrature_periodic(f, fine)) < 1e-12);

    Grid1D open{0, 1, 8, false};
    CHECK_THROWS_AS(quadrature_periodic(f, open), Error);
    Grid1D tiny{0, 1, 1, true};
    CHECK_THROWS_AS(quadrature_periodic(f, tiny), Error);
}

TEST_CASE("gauss_legendre integrates polynomials")
{
    CHECK(std::abs(gauss_integrate([](double x) { return x * x * x * x; }, 0.0, 2.0, 8) - 32.0 / 5.0) < 1e-13);
}

TEST_CASE("loglog_fit of power laws")
{
    std::vector<Sample> exact, flat, wobble;
    for (double r : {1.0, 2.0, 4.0, 8.0}) {
        exact.push_back({r, 1.0 / (r * r)});
        flat.push_back({r, 3.0});
    }
    CHECK(std::abs(loglog_fit(exact).slope + 2.0) < 1e-12);
    CHECK(std::abs(loglog_fit(flat).slope) < 1e-15);
    for (int k = 0; k < 40; ++k) {
        const double r = std::pow(10.0, k / 13.0);
        wobble.push_back({r, (1.0 + 0.01 * std::sin(std::log(r))) / (r * r)});
    }
    const double s = loglog_fit(wobble).slope;
    CHECK(s >= -2.02);
    CHECK(s <= -1.98);
}

namespace {

bool unimodular(const IntMatrix& m)
{
    const Int d = m.determinant();
    return d == 1 || d == -1;
}

void check_smith(const IntMatrix& m, const IntMatrix& expected)
{
    const SmithForm f = smith_normal_form(m);
    CHECK(f.S == expected);
    CHECK(f.U * m * f.V == f.S);
    CHECK(unimodular(f.U));
    CHECK(unimodular(f.V));
}

}  // namespace

TEST_CASE("smith_normal_form examples")
{
    check_smith(IntMatrix::identity(3), IntMatrix::identity(3));
    check_smith(IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{1, 0}, {0, 6}});
    check_smith(IntMatrix{{0}}, IntMatrix{{0}});
}

TEST_CASE("smith_normal_form divisibility chain")
{
    const IntMatrix m{{4, 6, 2}, {8, 2, -6}, {0, 10, 14}};
    const SmithForm f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.S);
    const auto d = f.invariants();
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
    CHECK(m.rank() == d.size());
}

TEST_CASE("determinant and rank")
{
    CHECK(IntMatrix{{1, 2}, {3, 4}}.determinant() == -2);
    CHECK(IntMatrix{{1, 2}, {2, 4}}.rank() == 1);
}
