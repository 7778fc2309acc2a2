#pragma once

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "instanton/errors.hpp"

namespace instanton::numerics {

struct Grid1D {
    double lower = 0.0;
    double upper = 1.0;
    std::size_t nodes = 2;
    bool periodic = false;

    void validate() const;
    double spacing() const;
    /// Node positions; periodic grids exclude the right endpoint.
    double node(std::size_t i) const;
};

struct Grid2D {
    Grid1D x;
    Grid1D y;

    void validate() const
    {
        x.validate();
        y.validate();
    }
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t sample_count = 0;
};

struct Sample {
    double r;
    double y;
};

// ---------------------------------------------------------------------------
// Differentiation

namespace detail {
template <class F>
double fourth_order_diff(F& f, std::vector<double>& x, std::size_t dir, double h)
{
    const double x0 = x[dir];
    auto at = [&](double offset) {
        x[dir] = x0 + offset;
        return static_cast<double>(f(std::span<const double>(x)));
    };
    const double d = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    x[dir] = x0;
    return d;
}
}  // namespace detail

/// Partial derivative along `dir`. Fourth-order central stencil at h and h/2,
/// combined by one Richardson step (sixth order overall).
template <class F>
double central_diff(F&& f, std::span<const double> point, std::size_t dir, double step)
{
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "central_diff step must be positive");
    if (dir >= point.size()) throw Error(ErrorKind::InvalidArgument, "central_diff direction out of range");
    std::vector<double> x(point.begin(), point.end());
    const double coarse = detail::fourth_order_diff(f, x, dir, step);
    const double fine = detail::fourth_order_diff(f, x, dir, step / 2);
    return (16.0 * fine - coarse) / 15.0;
}

/// One-dimensional convenience overload.
template <class F>
double central_diff_1d(F&& f, double x, double step)
{
    const std::array<double, 1> p{x};
    return central_diff([&](std::span<const double> v) { return f(v[0]); }, std::span<const double>(p), 0, step);
}

// ---------------------------------------------------------------------------
// Quadrature

/// Trapezoid rule on a periodic 1D grid: mean of samples times period.
template <class F>
auto quadrature_periodic(F&& f, const Grid1D& grid) -> decltype(f(0.0))
{
    grid.validate();
    if (!grid.periodic) throw Error(ErrorKind::DegenerateGrid, "quadrature_periodic needs a periodic grid");
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < grid.nodes; ++i) sum += f(grid.node(i));
    return sum * grid.spacing();
}

template <class F>
auto quadrature_periodic(F&& f, const Grid2D& grid) -> decltype(f(0.0, 0.0))
{
    grid.validate();
    if (!grid.x.periodic || !grid.y.periodic)
        throw Error(ErrorKind::DegenerateGrid, "quadrature_periodic needs periodic axes");
    using R = decltype(f(0.0, 0.0));
    R sum{};
    for (std::size_t i = 0; i < grid.x.nodes; ++i) {
        const double x = grid.x.node(i);
        for (std::size_t j = 0; j < grid.y.nodes; ++j) sum += f(x, grid.y.node(j));
    }
    return sum * (grid.x.spacing() * grid.y.spacing());
}

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b]. Rules are cached per node count.
GaussRule gauss_legendre(double a, double b, std::size_t n = 64);

template <class F>
auto gauss_integrate(F&& f, double a, double b, std::size_t n = 64) -> decltype(f(0.0))
{
    const GaussRule rule = gauss_legendre(a, b, n);
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

// ---------------------------------------------------------------------------
// Regression

/// Ordinary least squares y = slope * x + intercept.
FitResult linear_fit(std::span<const double> x, std::span<const double> y);

/// Least-squares line through (log r, log y).
FitResult loglog_fit(std::span<const Sample> samples);

// ---------------------------------------------------------------------------
// Exact integer linear algebra

using Int = mpz_class;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transpose() const;
    /// Exact determinant (Bareiss fraction-free elimination).
    Int determinant() const;
    std::size_t rank() const;

    bool operator==(const IntMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& v);

struct SmithForm {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;
    /// The nonzero diagonal entries of S in order.
    std::vector<Int> invariants() const;
};

/// U * M * V = S with S diagonal, d_i >= 0, d_i | d_{i+1}; U and V unimodular.
SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace instanton::numerics
