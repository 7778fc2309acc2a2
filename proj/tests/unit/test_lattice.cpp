#include <random>
#include <set>

#include "doctest.h"
#include "instanton/errors.hpp"
#include "instanton/lattice.hpp"
#include "instanton/lattice_io.hpp"

using namespace instanton;
using namespace instanton::lattice;

namespace {

Vec v10(std::initializer_list<long> xs)
{
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Vec diff(std::size_t i, std::size_t j)
{
    Vec v = unit(10, i);
    v[j] -= 1;
    return v;
}

RatVec rat(const Vec& v)
{
    RatVec out;
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("standard lattice")
{
    const IntLattice L = standard_res_lattice();
    CHECK(L.square(fiber_class()) == 0);
    CHECK(L.square(unit(10, 0)) == 1);
    for (std::size_t i = 1; i < 10; ++i)
        for (std::size_t j = 1; j < 10; ++j) CHECK(L.pair(unit(10, i), unit(10, j)) == (i == j ? -1 : 0));
    CHECK(L.gram.determinant() == -1);
}

TEST_CASE("I_b fixtures validate")
{
    for (int b = 1; b <= 9; ++b) {
        const MarkedLattice m = ib_fixture(b);
        CHECK(m.components.size() == std::size_t(b));
        CHECK(validate(m).empty());
        for (const auto& a : m.nodal) {
            CHECK(m.lattice.square(a) == -2);
            CHECK(m.period(a) == ComplexQ{0, 0});
        }
    }
    MarkedLattice broken = ib_fixture(3);
    broken.nodal.push_back(diff(1, 2));
    CHECK_FALSE(validate(broken).empty());
}

TEST_CASE("reflections")
{
    const IntLattice L = standard_res_lattice();
    const Vec a = diff(1, 2), b = diff(2, 3);
    CHECK(reflect(a, b, L) == diff(1, 3));
    Vec minus_a = a;
    for (auto& x : minus_a) x = -x;
    CHECK(reflect(a, a, L) == minus_a);

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> e(-9, 9);
    for (int k = 0; k < 100; ++k) {
        Vec beta(10);
        for (auto& x : beta) x = e(rng);
        CHECK(reflect(a, reflect(a, beta, L), L) == beta);
    }
    CHECK_THROWS_AS(reflect(unit(10, 1), b, L), Error);

    const IntMatrix s = reflection_matrix(a, L);
    CHECK_FALSE(pairing_witness(s, L, L).has_value());
    CHECK(s * b == reflect(a, b, L));
}

TEST_CASE("reflections fix the boundary components")
{
    const MarkedLattice m = ib_fixture(4);
    for (const auto& a : m.nodal)
        for (const auto& d : m.components) CHECK(reflect(a, d, m.lattice) == d);
}

TEST_CASE("cpp membership")
{
    const MarkedLattice m = ib_fixture(1);
    CHECK(cpp_membership(unit(10, 0), m).member);
    CHECK_FALSE(cpp_membership(unit(10, 1), m).member);
    CHECK_FALSE(cpp_membership(v10({1, -2, 0, 0, 0, 0, 0, 0, 0, 0}), m).member);
    MarkedLattice bare = m;
    bare.exceptional.clear();
    CHECK(cpp_membership(unit(10, 0), bare).relative_to_empty_set);
}

TEST_CASE("chamber signatures")
{
    const IntLattice L = standard_res_lattice();
    const Vec a = diff(1, 2);
    const RatVec x = rat(v10({5, -3, -1, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(chamber_signature(x, {a}, L) == std::vector<int>{1});
    CHECK(chamber_signature(reflect(a, x, L), {a}, L) == std::vector<int>{-1});
    CHECK_THROWS_AS(chamber_signature(rat(unit(10, 0)), {a}, L), Error);

    const std::vector<Vec> roots{diff(1, 2), diff(2, 3), diff(1, 3)};
    std::set<std::vector<int>> seen;
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> n(-50, 50);
    for (int k = 0; k < 3000; ++k) {
        RatVec y(10);
        for (auto& c : y) c = Rat(n(rng), 11);
        try {
            seen.insert(chamber_signature(y, roots, L));
        } catch (const Error&) {
        }
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("A2 Weyl group and transport")
{
    const IntLattice L = standard_res_lattice();
    const std::vector<Vec> delta{diff(1, 2), diff(2, 3)};
    const WeylEnumeration g = enumerate_weyl(delta, L);
    CHECK(g.elements.size() == 6);
    CHECK(g.closed);
    CHECK(root_orbit(delta, g).size() == 3);

    const RatVec x = rat(v10({7, -3, -2, -1, 0, 0, 0, 0, 0, 0}));
    const TransportResult id = chamber_transport(x, x, delta, L);
    REQUIRE(id.element);
    CHECK(id.element->word.empty());
    CHECK(id.unique);

    for (const auto& h : g.elements) {
        const RatVec y = act(h.matrix, x);
        const TransportResult t = chamber_transport(x, y, delta, L);
        REQUIRE(t.element);
        CHECK(t.unique);
        CHECK(t.element->matrix == h.matrix);
    }

    const TransportResult single = chamber_transport(x, reflect(delta[0], x, L), {delta[0]}, L);
    REQUIRE(single.element);
    CHECK(single.element->word == std::vector<std::size_t>{0});
    CHECK(single.unique);
}

TEST_CASE("restriction sequence")
{
    for (int b = 1; b <= 9; ++b) {
        const MarkedLattice m = ib_fixture(b);
        const Quotient q = les_restriction(m);
        IntMatrix a(10, m.components.size());
        for (std::size_t c = 0; c < m.components.size(); ++c)
            for (std::size_t r = 0; r < 10; ++r) a(r, c) = m.components[c][r];
        CHECK(q.free_rank == 10 - a.rank());
        CHECK(q.free_rank == std::size_t(10 - b));
    }
    const MarkedLattice m = ib_fixture(1);
    const Quotient q = les_restriction(m);
    CHECK(q.free_rank == 9);
    Vec shifted = unit(10, 0);
    for (std::size_t i = 0; i < 10; ++i) shifted[i] += m.fiber[i];
    CHECK(same_restriction(q, unit(10, 0), shifted));
    CHECK_FALSE(same_restriction(q, unit(10, 0), v10({1, 1, 0, 0, 0, 0, 0, 0, 0, 0})));
    CHECK_FALSE(les_restriction(ib_fixture(9)).torsion.empty());
}

TEST_CASE("inverse_unimodular")
{
    const IntMatrix m{{2, 1}, {1, 1}};
    CHECK(inverse_unimodular(m) * m == IntMatrix::identity(2));
    CHECK_THROWS_AS(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("Torelli matching")
{
    const MarkedLattice m = ib_fixture(3);
    const TorelliVerdict id = torelli_match(m, m, IntMatrix::identity(10));
    CHECK(id.failing_condition.empty());
    REQUIRE(id.g);
    CHECK(id.g->word.empty());
    CHECK(id.unique);

    std::mt19937_64 rng(42);
    for (int k = 0; k < 20; ++k) {
        const TorelliCase c = random_torelli_case(rng);
        const TorelliVerdict v = torelli_match(c.source, c.target, c.mu);
        CHECK(v.failing_condition.empty());
        REQUIRE(v.g);
        CHECK(v.unique);
        CHECK(v.g->matrix == c.planted);
    }

    const TorelliCase pc = period_mismatch_case(rng);
    const TorelliVerdict pv = torelli_match(pc.source, pc.target, pc.mu);
    CHECK(pv.failing_condition == "condition3");
    CHECK_FALSE(pv.g);

    const TorelliCase mc = marking_mismatch_case(rng);
    const TorelliVerdict mv = torelli_match(mc.source, mc.target, mc.mu);
    CHECK(mv.failing_condition == "condition1");
    CHECK_FALSE(mv.g);
}

TEST_CASE("Torelli recovers a single planted reflection")
{
    const MarkedLattice m = ib_fixture(3);
    REQUIRE_FALSE(m.nodal.empty());
    const IntMatrix s = reflection_matrix(m.nodal[0], m.lattice);
    // mu = s_alpha^{-1}: the target is the source with the ample class moved by s_alpha
    const TorelliVerdict v = torelli_match(m, m, s);
    CHECK(v.failing_condition.empty());
    REQUIRE(v.g);
    CHECK(v.unique);
    CHECK(v.g->matrix == s);
}

TEST_CASE("non-isometry is reported with a witness")
{
    const MarkedLattice m = ib_fixture(2);
    IntMatrix twice = IntMatrix::identity(10);
    twice(0, 0) = 2;
    const TorelliVerdict v = torelli_match(m, m, twice);
    CHECK(v.failing_condition == "pairing");
    REQUIRE(v.witness);
    CHECK(*v.witness == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("unipotent centralizer")
{
    for (long b : {1L, 3L, 9L}) {
        const auto c = unipotent_centralizer(b, 3);
        CHECK(c.size() == 14);
        const IntMatrix t{{1, b}, {0, 1}};
        for (const auto& m : c) {
            CHECK(m * t == t * m);
            CHECK(m(1, 0) == 0);
        }
    }
}

TEST_CASE("fixture json round trip")
{
    const MarkedLattice m = ib_fixture(4);
    const MarkedLattice back = marked_from_json(to_json(m));
    CHECK(back.lattice.gram == m.lattice.gram);
    CHECK(back.components == m.components);
    CHECK(back.nodal == m.nodal);
    CHECK(back.periods == m.periods);

    CHECK(rat_from_json("3/6") == Rat(1, 2));
    CHECK(rat_from_json("-0.125") == Rat(-1, 8));
    CHECK(rat_from_json(7) == Rat(7));
    CHECK(int_from_json("-123456789012345678901234567890") == Int("-123456789012345678901234567890"));
    CHECK_THROWS_AS(rat_from_json("1/0"), Error);
    CHECK_THROWS_AS(rat_from_json("x"), Error);

    nlohmann::json j = to_json(m);
    j["components"][0][1] = 5;
    CHECK_THROWS_AS(marked_from_json(j), Error);
}
