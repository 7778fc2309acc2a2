#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace instanton {

using cplx = std::complex<double>;

/// Second-order jet of a function of the four Wirtinger variables
/// (z1, z2, conj z1, conj z2), treated as independent. Real-analytic chart
/// formulas are written in polarized form (Im v = (v - vbar) / 2i, |u|^2 = u ubar)
/// so every derivative that the curvature formulas need is exact.
///
/// Variable index: 0 = z1, 1 = z2, 2 = conj z1, 3 = conj z2.
struct Jet {
    static constexpr int kVars = 4;

    cplx v{};
    std::array<cplx, kVars> d{};
    std::array<std::array<cplx, kVars>, kVars> dd{};

    Jet() = default;
    Jet(cplx value) : v(value) {}  // NOLINT: constants promote implicitly
    Jet(double value) : v(value) {}  // NOLINT

    static Jet variable(int index, cplx value)
    {
        Jet j(value);
        j.d[index] = 1.0;
        return j;
    }

    /// Seeds the four jets for the chart point (z1, z2).
    static std::array<Jet, 4> seed(cplx z1, cplx z2)
    {
        return {variable(0, z1), variable(1, z2), variable(2, std::conj(z1)), variable(3, std::conj(z2))};
    }

    Jet& operator+=(const Jet& o)
    {
        v += o.v;
        for (int i = 0; i < kVars; ++i) {
            d[i] += o.d[i];
            for (int k = 0; k < kVars; ++k) dd[i][k] += o.dd[i][k];
        }
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        v -= o.v;
        for (int i = 0; i < kVars; ++i) {
            d[i] -= o.d[i];
            for (int k = 0; k < kVars; ++k) dd[i][k] -= o.dd[i][k];
        }
        return *this;
    }
    Jet& operator*=(cplx s)
    {
        v *= s;
        for (int i = 0; i < kVars; ++i) {
            d[i] *= s;
            for (int k = 0; k < kVars; ++k) dd[i][k] *= s;
        }
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a)
    {
        a *= -1.0;
        return a;
    }
    friend Jet operator*(Jet a, cplx s) { return a *= s; }
    friend Jet operator*(cplx s, Jet a) { return a *= s; }
    friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
    friend Jet operator*(double s, Jet a) { return a *= cplx(s); }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        r.v = a.v * b.v;
        for (int i = 0; i < kVars; ++i) {
            r.d[i] = a.d[i] * b.v + a.v * b.d[i];
            for (int k = 0; k < kVars; ++k)
                r.dd[i][k] = a.dd[i][k] * b.v + a.d[i] * b.d[k] + a.d[k] * b.d[i] + a.v * b.dd[i][k];
        }
        return r;
    }

    /// Applies a scalar function given its value and first two derivatives.
    Jet compose(cplx f0, cplx f1, cplx f2) const
    {
        Jet r;
        r.v = f0;
        for (int i = 0; i < kVars; ++i) {
            r.d[i] = f1 * d[i];
            for (int k = 0; k < kVars; ++k) r.dd[i][k] = f1 * dd[i][k] + f2 * d[i] * d[k];
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }
    friend Jet operator/(const Jet& a, cplx s) { return a * (1.0 / s); }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(cplx s, const Jet& b) { return b.reciprocal() * s; }
    friend Jet operator/(double s, const Jet& b) { return b.reciprocal() * s; }

    Jet reciprocal() const
    {
        const cplx inv = 1.0 / v;
        return compose(inv, -inv * inv, 2.0 * inv * inv * inv);
    }
};

inline Jet log(const Jet& a)
{
    return a.compose(std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline Jet exp(const Jet& a)
{
    const cplx e = std::exp(a.v);
    return a.compose(e, e, e);
}

/// a^p for a real exponent; the base must lie off the negative real axis.
inline Jet pow(const Jet& a, double p)
{
    const cplx f0 = std::pow(a.v, p);
    return a.compose(f0, p * f0 / a.v, p * (p - 1.0) * f0 / (a.v * a.v));
}

inline Jet sqrt(const Jet& a) { return pow(a, 0.5); }

}  // namespace instanton
