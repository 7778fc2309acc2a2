#include "instanton/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "instanton/errors.hpp"

namespace instanton::lattice {

namespace {

constexpr std::size_t kResRank = 10;

void require_size(const Vec& v, std::size_t n, const char* what)
{
    if (v.size() != n) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has the wrong rank");
}

std::string key(const IntMatrix& m)
{
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += m(r, c).get_str();
            out += ',';
        }
    return out;
}

std::string key(const Vec& v)
{
    std::string out;
    for (const auto& x : v) {
        out += x.get_str();
        out += ',';
    }
    return out;
}

Vec add(Vec a, const Vec& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

Vec scale(Vec a, const Int& s)
{
    for (auto& x : a) x *= s;
    return a;
}

Vec canonical_sign(Vec v)
{
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0) v = scale(std::move(v), -1);
        break;
    }
    return v;
}

IntMatrix permutation_matrix(const std::vector<std::size_t>& perm)
{
    IntMatrix p(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1;
    return p;
}

}  // namespace

Int IntLattice::pair(const Vec& a, const Vec& b) const
{
    require_size(a, rank(), "vector");
    require_size(b, rank(), "vector");
    Int sum = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) sum += a[i] * gram(i, j) * b[j];
    }
    return sum;
}

Rat IntLattice::pair(const RatVec& a, const RatVec& b) const
{
    if (a.size() != rank() || b.size() != rank()) throw Error(ErrorKind::InvalidArgument, "vector has the wrong rank");
    Rat sum = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) sum += a[i] * Rat(gram(i, j)) * b[j];
    sum.canonicalize();
    return sum;
}

IntLattice make_lattice(IntMatrix gram)
{
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        throw Error(ErrorKind::InvalidArgument, "gram matrix must be square and non-empty");
    if (!(gram.transpose() == gram)) throw Error(ErrorKind::InvalidArgument, "gram matrix must be symmetric");
    return IntLattice{std::move(gram)};
}

ComplexQ MarkedLattice::period(const Vec& v) const
{
    if (periods.size() != v.size()) throw Error(ErrorKind::InvalidArgument, "period map has the wrong rank");
    ComplexQ out{0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.re += Rat(v[i]) * periods[i].re;
        out.im += Rat(v[i]) * periods[i].im;
    }
    out.re.canonicalize();
    out.im.canonicalize();
    return out;
}

std::vector<std::string> validate(const MarkedLattice& m)
{
    std::vector<std::string> issues;
    const IntLattice& L = m.lattice;
    const std::size_t n = L.rank();
    auto sized = [&](const Vec& v) { return v.size() == n; };
    if (!sized(m.fiber)) issues.push_back("fiber class has the wrong rank");
    for (const auto& d : m.components)
        if (!sized(d)) issues.push_back("component has the wrong rank");
    for (const auto& a : m.nodal)
        if (!sized(a)) issues.push_back("nodal class has the wrong rank");
    for (const auto& e : m.exceptional)
        if (!sized(e)) issues.push_back("exceptional class has the wrong rank");
    if (!m.periods.empty() && m.periods.size() != n) issues.push_back("period map has the wrong rank");
    if (!issues.empty()) return issues;

    const std::size_t b = m.components.size();
    if (b == 0) {
        issues.push_back("no cycle components");
    } else {
        Vec sum(n, 0);
        for (const auto& d : m.components) sum = add(sum, d);
        if (sum != m.fiber) issues.push_back("components do not sum to the fiber class");
        if (b == 1) {
            if (L.square(m.components[0]) != 0) issues.push_back("single component must have square 0");
        } else {
            for (std::size_t i = 0; i < b; ++i) {
                if (L.square(m.components[i]) != -2)
                    issues.push_back("component " + std::to_string(i + 1) + " does not have square -2");
                for (std::size_t j = i + 1; j < b; ++j) {
                    const bool adjacent = j == i + 1 || (i == 0 && j == b - 1);
                    const long expected = b == 2 ? 2 : (adjacent ? 1 : 0);
                    if (L.pair(m.components[i], m.components[j]) != expected)
                        issues.push_back("components " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                         " break the cycle intersections");
                }
            }
        }
    }
    for (std::size_t k = 0; k < m.nodal.size(); ++k) {
        if (L.square(m.nodal[k]) != -2) issues.push_back("nodal class " + std::to_string(k + 1) + " is not a root");
        for (const auto& d : m.components)
            if (L.pair(m.nodal[k], d) != 0)
                issues.push_back("nodal class " + std::to_string(k + 1) + " meets the cycle");
    }
    for (std::size_t k = 0; k < m.exceptional.size(); ++k)
        if (L.square(m.exceptional[k]) != -1)
            issues.push_back("exceptional class " + std::to_string(k + 1) + " does not have square -1");
    return issues;
}

IntLattice standard_res_lattice()
{
    IntMatrix g(kResRank, kResRank);
    g(0, 0) = 1;
    for (std::size_t i = 1; i < kResRank; ++i) g(i, i) = -1;
    return IntLattice{g};
}

Vec unit(std::size_t rank, std::size_t i)
{
    Vec v(rank, 0);
    v.at(i) = 1;
    return v;
}

Vec fiber_class()
{
    Vec f(kResRank, -1);
    f[0] = 3;
    return f;
}

std::vector<Vec> orthogonal_complement(const std::vector<Vec>& constraints, const IntLattice& lattice)
{
    const std::size_t n = lattice.rank();
    if (constraints.empty()) {
        std::vector<Vec> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(unit(n, i));
        return all;
    }
    IntMatrix c(constraints.size(), n);
    for (std::size_t r = 0; r < constraints.size(); ++r) {
        const Vec row = lattice.gram * constraints[r];
        for (std::size_t k = 0; k < n; ++k) c(r, k) = row[k];
    }
    const numerics::SmithForm snf = numerics::smith_normal_form(c);
    const std::size_t rank = snf.invariants().size();
    std::vector<Vec> basis;
    for (std::size_t col = rank; col < n; ++col) {
        Vec v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = snf.V(k, col);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

std::vector<ComplexQ> periods_from(const IntLattice& lattice, const Vec& p_re, const Vec& p_im, const Int& denom)
{
    const Vec gre = lattice.gram * p_re;
    const Vec gim = lattice.gram * p_im;
    std::vector<ComplexQ> out(lattice.rank());
    for (std::size_t k = 0; k < lattice.rank(); ++k) {
        out[k].re = Rat(gre[k], denom);
        out[k].im = Rat(gim[k], denom);
        out[k].re.canonicalize();
        out[k].im.canonicalize();
    }
    return out;
}

std::vector<ComplexQ> generic_periods(const MarkedLattice& m, std::mt19937_64& rng)
{
    std::vector<Vec> constraints = m.components;
    constraints.insert(constraints.end(), m.nodal.begin(), m.nodal.end());
    const std::vector<Vec> basis = orthogonal_complement(constraints, m.lattice);
    std::uniform_int_distribution<int> coeff(-3, 3);
    Vec re(m.lattice.rank(), 0), im(m.lattice.rank(), 0);
    for (const auto& v : basis) {
        re = add(re, scale(v, coeff(rng)));
        im = add(im, scale(v, coeff(rng)));
    }
    if (std::all_of(re.begin(), re.end(), [](const Int& x) { return x == 0; }) && !basis.empty()) re = basis[0];
    return periods_from(m.lattice, re, im, 7);
}

MarkedLattice base_fixture(int b)
{
    if (b < 1 || b > 9) throw Error(ErrorKind::UnsupportedDegree, "I_b fixtures exist for b in [1, 9]");
    MarkedLattice m;
    m.name = "I_" + std::to_string(b);
    m.lattice = standard_res_lattice();
    m.fiber = fiber_class();
    Vec rest = m.fiber;
    for (int i = 1; i < b; ++i) {
        Vec d = add(unit(kResRank, i), scale(unit(kResRank, i + 1), -1));
        rest = add(rest, scale(d, -1));
        m.components.push_back(std::move(d));
    }
    m.components.push_back(rest);
    for (std::size_t i = 1; i < kResRank; ++i) m.exceptional.push_back(unit(kResRank, i));
    return m;
}

RatVec default_ample(const std::vector<std::size_t>& order)
{
    RatVec x(kResRank);
    x[0] = 10;
    for (std::size_t i = 1; i < kResRank; ++i) x[i] = -Rat(long(order[i - 1]), 3);
    return x;
}

std::vector<Vec> default_probes()
{
    Vec h = unit(kResRank, 0);
    Vec e1 = unit(kResRank, 1);
    Vec h2e1 = add(h, scale(e1, -2));
    Vec big = scale(h, 4);
    for (std::size_t i = 1; i < kResRank; ++i) big = add(big, scale(unit(kResRank, i), -1));
    Vec neg = add(scale(h, 2), e1);
    return {h, e1, h2e1, big, neg};
}

}  // namespace

MarkedLattice ib_fixture(int b, std::size_t max_nodal)
{
    MarkedLattice m = base_fixture(b);
    for (int j = b + 1; j < 9 && m.nodal.size() < max_nodal; ++j)
        m.nodal.push_back(add(unit(kResRank, j), scale(unit(kResRank, j + 1), -1)));
    m.ample = default_ample({1, 2, 3, 4, 5, 6, 7, 8, 9});
    m.cone_probes = default_probes();
    std::mt19937_64 rng(std::uint64_t(1000 + b));
    m.periods = generic_periods(m, rng);
    return m;
}

// ---------------------------------------------------------------------------

Vec reflect(const Vec& alpha, const Vec& beta, const IntLattice& lattice)
{
    if (lattice.square(alpha) != -2) throw Error(ErrorKind::NotARoot, "reflection needs alpha^2 = -2");
    return add(beta, scale(alpha, lattice.pair(alpha, beta)));
}

RatVec reflect(const Vec& alpha, const RatVec& beta, const IntLattice& lattice)
{
    if (lattice.square(alpha) != -2) throw Error(ErrorKind::NotARoot, "reflection needs alpha^2 = -2");
    RatVec a(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) a[i] = alpha[i];
    const Rat c = lattice.pair(a, beta);
    RatVec out = beta;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * a[i];
    return out;
}

IntMatrix reflection_matrix(const Vec& alpha, const IntLattice& lattice)
{
    if (lattice.square(alpha) != -2) throw Error(ErrorKind::NotARoot, "reflection needs alpha^2 = -2");
    const std::size_t n = lattice.rank();
    const Vec ga = lattice.gram * alpha;  // alpha^T G as a column, G symmetric
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) += alpha[r] * ga[c];
    return m;
}

RatVec act(const IntMatrix& m, const RatVec& v)
{
    if (m.cols() != v.size()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
    RatVec out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += Rat(m(r, c)) * v[c];
        out[r].canonicalize();
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> pairing_witness(const IntMatrix& m, const IntLattice& source,
                                                                   const IntLattice& target)
{
    if (m.rows() != target.rank() || m.cols() != source.rank())
        throw Error(ErrorKind::NotAnIsometry, "map has the wrong shape");
    const IntMatrix pulled = m.transpose() * target.gram * m;
    for (std::size_t i = 0; i < source.rank(); ++i)
        for (std::size_t j = i; j < source.rank(); ++j)
            if (pulled(i, j) != source.gram(i, j)) return std::make_pair(i, j);
    return std::nullopt;
}

WeylEnumeration enumerate_weyl(const std::vector<Vec>& generators, const IntLattice& lattice, std::size_t bound)
{
    std::vector<IntMatrix> gens;
    for (const auto& a : generators) gens.push_back(reflection_matrix(a, lattice));

    WeylEnumeration out;
    std::set<std::string> seen;
    out.elements.push_back({IntMatrix::identity(lattice.rank()), {}});
    seen.insert(key(out.elements[0].matrix));
    std::size_t begin = 0, end = 1;
    for (std::size_t length = 1; length <= bound && begin < end; ++length) {
        for (std::size_t k = begin; k < end; ++k)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                IntMatrix next = out.elements[k].matrix * gens[i];
                if (!seen.insert(key(next)).second) continue;
                std::vector<std::size_t> word = out.elements[k].word;
                word.push_back(i);
                out.elements.push_back({std::move(next), std::move(word)});
            }
        begin = end;
        end = out.elements.size();
    }
    // closed iff one more layer adds nothing
    out.closed = true;
    for (std::size_t k = begin; k < end && out.closed; ++k)
        for (const auto& g : gens)
            if (!seen.count(key(out.elements[k].matrix * g))) {
                out.closed = false;
                break;
            }
    return out;
}

std::vector<Vec> root_orbit(const std::vector<Vec>& generators, const WeylEnumeration& group)
{
    std::vector<Vec> out;
    std::set<std::string> seen;
    for (const auto& g : group.elements)
        for (const auto& a : generators) {
            Vec r = canonical_sign(g.matrix * a);
            if (seen.insert(key(r)).second) out.push_back(std::move(r));
        }
    return out;
}

CppVerdict cpp_membership(const Vec& beta, const MarkedLattice& marked)
{
    CppVerdict out;
    out.relative_to_empty_set = marked.exceptional.empty();
    if (marked.lattice.square(beta) <= 0) return out;
    for (const auto& e : marked.exceptional)
        if (marked.lattice.pair(beta, e) < 0) return out;
    out.member = true;
    return out;
}

std::vector<int> chamber_signature(const RatVec& x, const std::vector<Vec>& roots, const IntLattice& lattice)
{
    std::vector<int> sig;
    sig.reserve(roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        RatVec a(roots[k].begin(), roots[k].end());
        const int s = sgn(lattice.pair(x, a));
        if (s == 0) throw Error(ErrorKind::OnWall, "point lies on the wall of root " + std::to_string(k));
        sig.push_back(s);
    }
    return sig;
}

TransportResult chamber_transport(const RatVec& x, const RatVec& y, const std::vector<Vec>& delta,
                                  const IntLattice& lattice, std::size_t bound)
{
    const WeylEnumeration group = enumerate_weyl(delta, lattice, bound);
    const std::vector<Vec> roots = root_orbit(delta, group);
    const std::vector<int> target = chamber_signature(y, roots, lattice);

    TransportResult out;
    out.searched = group.elements.size();
    out.group_closed = group.closed;
    for (const auto& g : group.elements) {
        if (chamber_signature(act(g.matrix, x), roots, lattice) != target) continue;
        if (!out.element) out.element = g;
        ++out.matches;
    }
    out.unique = out.matches == 1;
    return out;
}

// ---------------------------------------------------------------------------

Quotient les_restriction(const MarkedLattice& marked)
{
    const std::size_t n = marked.lattice.rank();
    if (marked.components.empty()) throw Error(ErrorKind::InvalidArgument, "no cycle components");
    IntMatrix a(n, marked.components.size());
    for (std::size_t c = 0; c < marked.components.size(); ++c) {
        require_size(marked.components[c], n, "component");
        for (std::size_t r = 0; r < n; ++r) a(r, c) = marked.components[c][r];
    }
    const numerics::SmithForm snf = numerics::smith_normal_form(a);
    Quotient q;
    q.U = snf.U;
    q.invariants = snf.invariants();
    q.span_rank = q.invariants.size();
    q.free_rank = n - q.span_rank;
    for (const auto& d : q.invariants)
        if (d > 1) q.torsion.push_back(d);
    q.projection = IntMatrix(q.free_rank, n);
    for (std::size_t r = 0; r < q.free_rank; ++r)
        for (std::size_t c = 0; c < n; ++c) q.projection(r, c) = snf.U(q.span_rank + r, c);
    return q;
}

bool same_restriction(const Quotient& q, const Vec& d1, const Vec& d2)
{
    Vec diff = d2;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= d1[i];
    const Vec y = q.U * diff;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < q.span_rank) {
            if (y[i] % q.invariants[i] != 0) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

IntMatrix inverse_unimodular(const IntMatrix& m)
{
    if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "inverse needs a square matrix");
    const numerics::SmithForm snf = numerics::smith_normal_form(m);
    const auto inv = snf.invariants();
    if (inv.size() != m.rows() || std::any_of(inv.begin(), inv.end(), [](const Int& d) { return d != 1; }))
        throw Error(ErrorKind::InvalidArgument, "matrix is not unimodular");
    // U M V = I  =>  M^{-1} = V U
    return snf.V * snf.U;
}

// ---------------------------------------------------------------------------

TorelliVerdict torelli_match(const MarkedLattice& source, const MarkedLattice& target, const IntMatrix& mu,
                             std::size_t bound)
{
    TorelliVerdict v;
    v.witness = pairing_witness(mu, source.lattice, target.lattice);
    v.pairing_ok = !v.witness;
    if (!v.pairing_ok) {
        v.failing_condition = "pairing";
        return v;
    }

    v.condition1 = source.components.size() == target.components.size();
    for (std::size_t i = 0; v.condition1 && i < source.components.size(); ++i)
        v.condition1 = mu * source.components[i] == target.components[i];

    v.condition2 = true;
    for (const auto& beta : source.cone_probes)
        if (cpp_membership(beta, source).member != cpp_membership(mu * beta, target).member) v.condition2 = false;
    std::set<std::string> target_exceptional;
    for (const auto& e : target.exceptional) target_exceptional.insert(key(e));
    for (const auto& e : source.exceptional)
        if (!target_exceptional.count(key(mu * e))) v.condition2 = false;
    if (source.exceptional.size() != target.exceptional.size()) v.condition2 = false;

    v.condition3 = source.periods.size() == source.lattice.rank() && target.periods.size() == target.lattice.rank();
    for (std::size_t k = 0; v.condition3 && k < source.lattice.rank(); ++k) {
        const Vec ek = unit(source.lattice.rank(), k);
        v.condition3 = target.period(mu * ek) == source.period(ek);
    }

    if (!v.condition1)
        v.failing_condition = "condition1";
    else if (!v.condition2)
        v.failing_condition = "condition2";
    else if (!v.condition3)
        v.failing_condition = "condition3";
    if (!v.failing_condition.empty()) return v;

    if (!source.ample || !target.ample) throw Error(ErrorKind::InvalidArgument, "Weyl search needs ample classes");
    const RatVec y = act(inverse_unimodular(mu), *target.ample);
    const TransportResult t = chamber_transport(*source.ample, y, source.nodal, source.lattice, bound);
    v.g = t.element;
    v.matches = t.matches;
    v.unique = t.unique;
    return v;
}

namespace {

MarkedLattice transported(const MarkedLattice& s, const IntMatrix& psi)
{
    const IntMatrix inv = inverse_unimodular(psi);
    MarkedLattice t = s;
    t.name = s.name + " (transported)";
    t.fiber = psi * s.fiber;
    for (auto& d : t.components) d = psi * d;
    for (auto& a : t.nodal) a = psi * a;
    for (auto& e : t.exceptional) e = psi * e;
    for (auto& p : t.cone_probes) p = psi * p;
    if (s.ample) t.ample = act(psi, *s.ample);
    for (std::size_t k = 0; k < s.lattice.rank(); ++k) t.periods[k] = s.period(inv * unit(s.lattice.rank(), k));
    return t;
}

MarkedLattice random_source(std::mt19937_64& rng, int b_min, int b_max)
{
    std::uniform_int_distribution<int> pick_b(b_min, b_max);
    const int b = pick_b(rng);
    MarkedLattice m = base_fixture(b);
    // simple roots e_j - e_{j+1} of an A_k block inside b < j <= 9
    const int room = 9 - b - 1;
    std::uniform_int_distribution<int> pick_k(1, std::min(3, room));
    const int k = pick_k(rng);
    std::uniform_int_distribution<int> pick_start(b + 1, 9 - k);
    const int start = pick_start(rng);
    for (int j = start; j < start + k; ++j)
        m.nodal.push_back(add(unit(kResRank, j), scale(unit(kResRank, j + 1), -1)));

    std::vector<std::size_t> order(9);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    m.ample = default_ample(order);
    m.cone_probes = default_probes();
    m.periods = generic_periods(m, rng);
    m.name = "random I_" + std::to_string(b);
    return m;
}

// Permutation of e_{b+1}, ..., e_9: fixes every D_i and the fibre.
IntMatrix random_compatible_isometry(std::mt19937_64& rng, int b)
{
    std::vector<std::size_t> perm(kResRank);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + b + 1, perm.end(), rng);
    return permutation_matrix(perm);
}

}  // namespace

TorelliCase random_torelli_case(std::mt19937_64& rng, std::size_t max_length)
{
    TorelliCase c;
    c.source = random_source(rng, 1, 6);
    const int b = int(c.source.components.size());
    const IntMatrix psi = random_compatible_isometry(rng, b);
    c.target = transported(c.source, psi);

    std::uniform_int_distribution<std::size_t> pick_len(0, max_length);
    std::uniform_int_distribution<std::size_t> pick_gen(0, c.source.nodal.size() - 1);
    const std::size_t len = pick_len(rng);
    c.planted = IntMatrix::identity(kResRank);
    IntMatrix inverse = IntMatrix::identity(kResRank);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t g = pick_gen(rng);
        c.planted_word.push_back(g);
        const IntMatrix s = reflection_matrix(c.source.nodal[g], c.source.lattice);
        c.planted = c.planted * s;
        inverse = s * inverse;
    }
    c.mu = psi * inverse;
    return c;
}

TorelliCase period_mismatch_case(std::mt19937_64& rng)
{
    TorelliCase c;
    c.source = random_source(rng, 1, 6);
    c.target = c.source;
    for (auto& p : c.target.periods) {
        p.re = -p.re;
        p.im = -p.im;
    }
    c.mu = IntMatrix::identity(kResRank);
    c.planted = c.mu;
    return c;
}

TorelliCase marking_mismatch_case(std::mt19937_64& rng)
{
    TorelliCase c;
    c.source = random_source(rng, 2, 6);
    c.target = c.source;
    // swapping e_1 and e_2 negates D_1 = e_1 - e_2
    std::vector<std::size_t> perm(kResRank);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[1], perm[2]);
    c.mu = permutation_matrix(perm);
    c.planted = IntMatrix::identity(kResRank);
    return c;
}

std::vector<IntMatrix> unipotent_centralizer(long b, long bound)
{
    const IntMatrix t{{1, b}, {0, 1}};
    std::vector<IntMatrix> out;
    for (long a = -bound; a <= bound; ++a)
        for (long x = -bound; x <= bound; ++x)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d) {
                    const long det = a * d - x * c;
                    if (det != 1 && det != -1) continue;
                    const IntMatrix m{{a, x}, {c, d}};
                    if (m * t == t * m) out.push_back(m);
                }
    return out;
}

}  // namespace instanton::lattice
