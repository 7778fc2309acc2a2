#pragma once

#include <array>
#include <complex>

#include "instanton/jet.hpp"

namespace instanton {

/// A point of a two-dimensional complex chart.
struct ChartPoint {
    cplx z1;
    cplx z2;
};

/// A real tangent vector, given by its holomorphic components (dz1(X), dz2(X)).
struct Tangent {
    cplx c1;
    cplx c2;
};

/// 2x2 hermitian matrix g_{i jbar}.
struct Hermitian2 {
    std::array<std::array<cplx, 2>, 2> m{};

    cplx operator()(int i, int j) const { return m[i][j]; }
    cplx& operator()(int i, int j) { return m[i][j]; }

    double det() const { return std::real(m[0][0] * m[1][1] - m[0][1] * m[1][0]); }
    bool positive_definite() const { return std::real(m[0][0]) > 0 && det() > 0; }
    /// Inverse with index convention inv(j, i) = g^{jbar i}, so sum_j g_{ij} inv(j, k) = delta.
    Hermitian2 inverse() const;
    /// Riemannian inner product of real tangent vectors: 2 Re g(X, conj Y).
    double inner(const Tangent& x, const Tangent& y) const;
    double norm(const Tangent& x) const;
};

/// Complex 2-form on C^2, stored as the antisymmetric coefficient matrix over
/// the coframe (dz1, dz2, dz1bar, dz2bar): form = sum_{a<b} c[a][b] e^a ^ e^b.
struct Form2 {
    std::array<std::array<cplx, 4>, 4> c{};

    void set(int a, int b, cplx value)
    {
        c[a][b] = value;
        c[b][a] = -value;
    }

    Form2& operator+=(const Form2& o);
    Form2& operator*=(cplx s);
    friend Form2 operator+(Form2 a, const Form2& b) { return a += b; }
    friend Form2 operator-(Form2 a, const Form2& b)
    {
        Form2 nb = b;
        nb *= -1.0;
        return a += nb;
    }
    friend Form2 operator*(Form2 a, cplx s) { return a *= s; }
    friend Form2 operator*(cplx s, Form2 a) { return a *= s; }

    /// Complex conjugate form.
    Form2 conj() const;
    Form2 real_part() const;
    Form2 imag_part() const;

    /// Evaluation on a pair of real tangent vectors.
    cplx operator()(const Tangent& x, const Tangent& y) const;

    /// i sum g_{ij} dz^i ^ dzbar^j.
    static Form2 kahler(const Hermitian2& g);
    /// coeff * dz1 ^ dz2.
    static Form2 holomorphic(cplx coeff);
};

/// Coefficient of a ^ b on dz1 ^ dz2 ^ dz1bar ^ dz2bar.
cplx wedge_top(const Form2& a, const Form2& b);

/// Pointwise data of a hyperKahler triple in its own chart.
struct TensorsAtPoint {
    Hermitian2 g;
    Form2 omega;
    cplx omega_coeff;  // Omega = omega_coeff * dz1 ^ dz2
};

/// Jets of the metric components, used by the curvature evaluator.
using MetricJet = std::array<std::array<Jet, 2>, 2>;

inline Hermitian2 metric_value(const MetricJet& j)
{
    Hermitian2 g;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(a, b) = j[a][b].v;
    return g;
}

}  // namespace instanton
