#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "instanton/numerics.hpp"

namespace instanton::lattice {

using numerics::Int;
using numerics::IntMatrix;
using Rat = mpq_class;
using Vec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Free Z-module with a symmetric integer pairing.
struct IntLattice {
    IntMatrix gram;

    std::size_t rank() const { return gram.rows(); }
    Int pair(const Vec& a, const Vec& b) const;
    Rat pair(const RatVec& a, const RatVec& b) const;
    Int square(const Vec& a) const { return pair(a, a); }
};

IntLattice make_lattice(IntMatrix gram);

/// Exact complex rational.
struct ComplexQ {
    Rat re;
    Rat im;

    bool operator==(const ComplexQ& o) const { return re == o.re && im == o.im; }
};

/// Lattice with fibre class, boundary cycle, nodal roots, (-1)-classes and a
/// Z-linear period map given by its values on the basis.
struct MarkedLattice {
    std::string name;
    IntLattice lattice;
    Vec fiber;
    std::vector<Vec> components;
    std::vector<Vec> nodal;
    std::vector<Vec> exceptional;
    std::vector<ComplexQ> periods;
    std::optional<RatVec> ample;
    std::vector<Vec> cone_probes;

    ComplexQ period(const Vec& v) const;
};

/// Violated invariants, empty when the marking is consistent. The cycle
/// combinatorics are checked as D_i^2 = -2, D_i D_{i+1} = 1 for b >= 3; for
/// b = 2 the two components meet twice and for b = 1 the single component is F.
std::vector<std::string> validate(const MarkedLattice& m);

/// Basis h, e1..e9 with gram diag(1, -1, ..., -1).
IntLattice standard_res_lattice();
Vec unit(std::size_t rank, std::size_t i);
/// F = 3h - sum e_i.
Vec fiber_class();

/// Standard fixture with an I_b cycle D_i = e_i - e_{i+1} (i < b),
/// D_b = F - sum_{i<b} D_i, nodal roots e_j - e_{j+1} for b < j < 9 (at most
/// `max_nodal`), exceptional set {e_1..e_9}, ample class 10h - sum c_i e_i and
/// periods vanishing on every D_i and nodal root.
MarkedLattice ib_fixture(int b, std::size_t max_nodal = 8);

// ---------------------------------------------------------------------------
// Reflections and Weyl group

/// s_alpha(beta) = beta + <alpha, beta> alpha. Requires alpha^2 = -2.
Vec reflect(const Vec& alpha, const Vec& beta, const IntLattice& lattice);
RatVec reflect(const Vec& alpha, const RatVec& beta, const IntLattice& lattice);
IntMatrix reflection_matrix(const Vec& alpha, const IntLattice& lattice);

RatVec act(const IntMatrix& m, const RatVec& v);

/// M^T G_target M == G_source. On failure returns the first basis pair whose pairing changes.
std::optional<std::pair<std::size_t, std::size_t>> pairing_witness(const IntMatrix& m, const IntLattice& source,
                                                                   const IntLattice& target);

struct WeylElement {
    IntMatrix matrix;
    std::vector<std::size_t> word;  // g = s_{word[0]} s_{word[1]} ...
};

/// Distinct group elements reachable by words of length <= bound, each with its
/// shortlex-first word, in breadth-first lexicographic order.
struct WeylEnumeration {
    std::vector<WeylElement> elements;
    bool closed = false;  // every product stayed inside the list
};

WeylEnumeration enumerate_weyl(const std::vector<Vec>& generators, const IntLattice& lattice, std::size_t bound = 8);

/// Images of the generators under the enumerated elements, up to sign.
std::vector<Vec> root_orbit(const std::vector<Vec>& generators, const WeylEnumeration& group);

struct CppVerdict {
    bool member = false;
    bool relative_to_empty_set = false;
};

/// beta^2 > 0 and beta E >= 0 for every supplied (-1)-class E.
CppVerdict cpp_membership(const Vec& beta, const MarkedLattice& marked);

/// Signs of x alpha. Throws on-wall naming the first root with x alpha = 0.
std::vector<int> chamber_signature(const RatVec& x, const std::vector<Vec>& roots, const IntLattice& lattice);

struct TransportResult {
    std::optional<WeylElement> element;
    std::size_t matches = 0;
    bool unique = false;
    std::size_t searched = 0;
    bool group_closed = false;
};

/// Group elements g with signature(g x) = signature(y) over the root orbit of delta.
TransportResult chamber_transport(const RatVec& x, const RatVec& y, const std::vector<Vec>& delta,
                                  const IntLattice& lattice, std::size_t bound = 8);

// ---------------------------------------------------------------------------
// Restriction to the complement of the cycle

struct Quotient {
    std::size_t span_rank = 0;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // invariants > 1
    IntMatrix U;               // left transform of the Smith form of [D_1 ... D_b]
    std::vector<Int> invariants;
    IntMatrix projection;      // rows of U beyond the span rank
};

Quotient les_restriction(const MarkedLattice& marked);
bool same_restriction(const Quotient& q, const Vec& d1, const Vec& d2);

IntMatrix inverse_unimodular(const IntMatrix& m);

/// Integer basis of {p : p . c = 0 for every c}.
std::vector<Vec> orthogonal_complement(const std::vector<Vec>& constraints, const IntLattice& lattice);

// ---------------------------------------------------------------------------
// Torelli matching

struct TorelliVerdict {
    bool pairing_ok = false;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    bool condition1 = false;
    bool condition2 = false;
    bool condition3 = false;
    std::string failing_condition;  // empty when all hold
    std::optional<WeylElement> g;
    bool unique = false;
    std::size_t matches = 0;
};

TorelliVerdict torelli_match(const MarkedLattice& source, const MarkedLattice& target, const IntMatrix& mu,
                             std::size_t bound = 8);

struct TorelliCase {
    MarkedLattice source;
    MarkedLattice target;
    IntMatrix mu;
    std::vector<std::size_t> planted_word;
    IntMatrix planted;
};

/// Random source fixture, a marking-compatible isometry psi, and mu = psi g0^{-1}
/// for a random word g0 of length <= max_length in the nodal reflections.
TorelliCase random_torelli_case(std::mt19937_64& rng, std::size_t max_length = 6);

/// Target whose periods are negated.
TorelliCase period_mismatch_case(std::mt19937_64& rng);
/// mu moves a boundary component.
TorelliCase marking_mismatch_case(std::mt19937_64& rng);

/// Elements of GL_2(Z) with entries in [-bound, bound] commuting with [[1, b], [0, 1]].
std::vector<IntMatrix> unipotent_centralizer(long b, long bound);

}  // namespace instanton::lattice
