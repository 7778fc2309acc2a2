#include "instanton/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>

namespace instanton::numerics {

void Grid1D::validate() const
{
    if (nodes < 2) throw Error(ErrorKind::DegenerateGrid, "grid needs at least 2 nodes per axis");
    if (!std::isfinite(lower) || !std::isfinite(upper))
        throw Error(ErrorKind::DegenerateGrid, "grid bounds must be finite");
    if (!(upper > lower)) throw Error(ErrorKind::DegenerateGrid, "grid bounds must be strictly ordered");
}

double Grid1D::spacing() const
{
    const double n = static_cast<double>(periodic ? nodes : nodes - 1);
    return (upper - lower) / n;
}

double Grid1D::node(std::size_t i) const
{
    return lower + static_cast<double>(i) * spacing();
}

// ---------------------------------------------------------------------------

namespace {

GaussRule reference_rule(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    cache.emplace(n, rule);
    return rule;
}

}  // namespace

GaussRule gauss_legendre(double a, double b, std::size_t n)
{
    if (n < 2) throw Error(ErrorKind::DegenerateGrid, "Gauss-Legendre needs at least 2 nodes");
    GaussRule rule = reference_rule(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

// ---------------------------------------------------------------------------

FitResult linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "fit inputs differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw Error(ErrorKind::InsufficientSamples, "fit needs at least 2 samples");

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0)) throw Error(ErrorKind::InsufficientSamples, "fit abscissae are all equal");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    fit.sample_count = n;
    return fit;
}

FitResult loglog_fit(std::span<const Sample> samples)
{
    if (samples.size() < 2) throw Error(ErrorKind::InsufficientSamples, "loglog_fit needs at least 2 samples");
    std::vector<double> lx, ly;
    lx.reserve(samples.size());
    ly.reserve(samples.size());
    for (const auto& s : samples) {
        if (!(s.r > 0) || !(s.y > 0))
            throw Error(ErrorKind::InvalidArgument, "loglog_fit needs strictly positive coordinates");
        lx.push_back(std::log(s.r));
        ly.push_back(std::log(s.y));
    }
    return linear_fit(lx, ly);
}

// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
        for (long v : row) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Int IntMatrix::determinant() const
{
    if (rows_ != cols_) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const
{
    const SmithForm snf = smith_normal_form(*this);
    return snf.invariants().size();
}

bool IntMatrix::operator==(const IntMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& v)
{
    if (a.cols() != v.size()) throw Error(ErrorKind::InvalidArgument, "matrix-vector shape mismatch");
    std::vector<Int> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Int> SmithForm::invariants() const
{
    std::vector<Int> out;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
        if (S(i, i) != 0) out.push_back(S(i, i));
    return out;
}

namespace {

struct SmithWork {
    IntMatrix a, u, v;

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    }
    // row_i -= q * row_j
    void add_row(std::size_t i, std::size_t j, const Int& q)
    {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= q * a(j, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) -= q * u(j, c);
    }
    // col_i -= q * col_j
    void add_col(std::size_t i, std::size_t j, const Int& q)
    {
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) -= q * a(r, j);
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) -= q * v(r, j);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    }
};

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    SmithWork w{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};

    const std::size_t diag = std::min(rows, cols);
    for (std::size_t t = 0; t < diag; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (w.a(i, j) != 0 && (pr == rows || abs(w.a(i, j)) < abs(w.a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) break;  // trailing block is zero
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.a(i, t) == 0) continue;
                w.add_row(i, t, floor_div(w.a(i, t), w.a(t, t)));
                if (w.a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.a(t, j) == 0) continue;
                w.add_col(j, t, floor_div(w.a(t, j), w.a(t, t)));
                if (w.a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: fold an offending row into the pivot row and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(w.a(i, j).get_mpz_t(), w.a(t, t).get_mpz_t())) {
                        w.add_row(t, i, Int(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (w.a(t, t) < 0) w.negate_row(t);
    }

    SmithForm out{std::move(w.u), std::move(w.a), std::move(w.v)};
#ifndef NDEBUG
    if (!(out.U * m * out.V == out.S)) throw Error(ErrorKind::InvalidArgument, "SNF postcondition U*M*V = S violated");
    if (abs(out.U.determinant()) != 1 || abs(out.V.determinant()) != 1)
        throw Error(ErrorKind::InvalidArgument, "SNF transforms are not unimodular");
#endif
    return out;
}

}  // namespace instanton::numerics
