#include "instanton/forms.hpp"

#include <cmath>

namespace instanton {

Hermitian2 Hermitian2::inverse() const
{
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Hermitian2 inv;
    inv(0, 0) = m[1][1] / det;
    inv(1, 1) = m[0][0] / det;
    inv(0, 1) = -m[0][1] / det;
    inv(1, 0) = -m[1][0] / det;
    return inv;
}

double Hermitian2::inner(const Tangent& x, const Tangent& y) const
{
    const std::array<cplx, 2> a{x.c1, x.c2};
    const std::array<cplx, 2> b{y.c1, y.c2};
    cplx s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += m[i][j] * a[i] * std::conj(b[j]);
    return 2.0 * std::real(s);
}

double Hermitian2::norm(const Tangent& x) const
{
    return std::sqrt(std::max(0.0, inner(x, x)));
}

Form2& Form2::operator+=(const Form2& o)
{
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) c[a][b] += o.c[a][b];
    return *this;
}

Form2& Form2::operator*=(cplx s)
{
    for (auto& row : c)
        for (auto& x : row) x *= s;
    return *this;
}

Form2 Form2::conj() const
{
    // conjugation swaps dz^i with dzbar^i
    constexpr int bar[4] = {2, 3, 0, 1};
    Form2 out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) out.c[bar[a]][bar[b]] = std::conj(c[a][b]);
    return out;
}

Form2 Form2::real_part() const
{
    return (*this + conj()) * cplx(0.5);
}

Form2 Form2::imag_part() const
{
    return (*this - conj()) * cplx(0.0, -0.5);
}

cplx Form2::operator()(const Tangent& x, const Tangent& y) const
{
    const std::array<cplx, 4> ex{x.c1, x.c2, std::conj(x.c1), std::conj(x.c2)};
    const std::array<cplx, 4> ey{y.c1, y.c2, std::conj(y.c1), std::conj(y.c2)};
    cplx s = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) s += c[a][b] * (ex[a] * ey[b] - ex[b] * ey[a]);
    return s;
}

Form2 Form2::kahler(const Hermitian2& g)
{
    const cplx i(0, 1);
    Form2 f;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) f.set(a, 2 + b, i * g(a, b));
    return f;
}

Form2 Form2::holomorphic(cplx coeff)
{
    Form2 f;
    f.set(0, 1, coeff);
    return f;
}

cplx wedge_top(const Form2& a, const Form2& b)
{
    const auto& x = a.c;
    const auto& y = b.c;
    return x[0][1] * y[2][3] - x[0][2] * y[1][3] + x[0][3] * y[1][2] + x[1][2] * y[0][3] - x[1][3] * y[0][2] +
           x[2][3] * y[0][1];
}

}  // namespace instanton
