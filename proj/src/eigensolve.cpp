#include "wignerlab/eigensolve.hpp"

#include "wignerlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace wigner {

namespace {

/// Dot product with four independent partial sums. The fixed summation
/// order keeps results bitwise reproducible.
double dot(const double* x, const double* y, std::size_t len)
{
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    for (; i < len; ++i) s0 += x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i + 1; off[n - 1] = 0
};

/// Reduces the symmetric matrix held in the lower triangle of `a` to
/// tridiagonal form. On return the Householder vectors are stored below the
/// subdiagonal-shifted column: v_k occupies a(k + 1 .., k) with scalar tau[k].
Tridiagonal householder_reduce(Matrix& a, std::vector<double>& tau)
{
    const std::size_t n = a.rows();
    Tridiagonal t{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    tau.assign(n, 0.0);
    std::vector<double> v(n), p(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;  // trailing block size
        double tail = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            const double x = a(k + 1 + i, k);
            tail += x * x;
        }
        const double x0 = a(k + 1, k);
        t.diag[k] = a(k, k);
        if (tail == 0.0) {
            t.off[k] = x0;
            tau[k] = 0.0;
            continue;
        }
        const double norm = std::sqrt(x0 * x0 + tail);
        const double alpha = x0 > 0.0 ? -norm : norm;
        v[0] = x0 - alpha;
        for (std::size_t i = 1; i < m; ++i) v[i] = a(k + 1 + i, k);
        const double vtv = v[0] * v[0] + tail;
        const double tk = 2.0 / vtv;
        tau[k] = tk;
        t.off[k] = alpha;
        for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, k) = v[i];

        // p = tau * A22 v from the lower triangle of the trailing block.
        std::fill(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double* row = &a(k + 1 + i, k + 1);
            const double vi = v[i];
            double* pp = p.data();
            for (std::size_t j = 0; j < i; ++j) pp[j] += row[j] * vi;
            p[i] += dot(row, v.data(), i) + row[i] * vi;
        }
        for (std::size_t i = 0; i < m; ++i) p[i] *= tk;
        const double half = 0.5 * tk * dot(p.data(), v.data(), m);
        for (std::size_t i = 0; i < m; ++i) p[i] -= half * v[i];  // p becomes w

        // A22 -= v w^T + w v^T on the lower triangle.
        for (std::size_t i = 0; i < m; ++i) {
            double* row = &a(k + 1 + i, k + 1);
            const double vi = v[i];
            const double wi = p[i];
            const double* vv = v.data();
            const double* ww = p.data();
            for (std::size_t j = 0; j <= i; ++j) row[j] -= vi * ww[j] + wi * vv[j];
        }
    }
    if (n >= 2) {
        t.diag[n - 2] = a(n - 2, n - 2);
        t.off[n - 2] = a(n - 1, n - 2);
    }
    t.diag[n - 1] = a(n - 1, n - 1);
    t.off[n - 1] = 0.0;
    return t;
}

/// Q^T with Q = H_0 H_1 ... H_{n-3}, built by backward accumulation in
/// row-major Q and transposed once.
Matrix accumulate_transform_transposed(const Matrix& a, const std::vector<double>& tau)
{
    const std::size_t n = a.rows();
    Matrix q = Matrix::identity(n);
    std::vector<double> y(n);
    for (std::size_t kk = n >= 2 ? n - 2 : 0; kk-- > 0;) {
        const double tk = tau[kk];
        if (tk == 0.0) continue;
        const std::size_t off = kk + 1;
        const std::size_t m = n - off;
        // y = v^T Q[off:, off:]
        std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double vi = a(off + i, kk);
            const double* row = &q(off + i, off);
            for (std::size_t j = 0; j < m; ++j) y[j] += vi * row[j];
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double s = tk * a(off + i, kk);
            double* row = &q(off + i, off);
            for (std::size_t j = 0; j < m; ++j) row[j] -= s * y[j];
        }
    }
    return transpose(q);
}

/// Implicit QL with Wilkinson shifts on (diag, off). When `zt` is given,
/// its rows are rotated alongside so that row k ends up holding the
/// eigenvector for diag[k].
void implicit_ql(Tridiagonal& t, Matrix* zt)
{
    auto& d = t.diag;
    auto& e = t.off;
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    const std::size_t max_sweeps = 30 * n;
    std::size_t sweeps = 0;

    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++sweeps > max_sweeps)
                throw NumericError("eigh: QL iteration did not converge within 30 n sweeps");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool early_split = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early_split = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (zt != nullptr) {
                    double* lo = &(*zt)(i, 0);
                    double* hi = &(*zt)(i + 1, 0);
                    for (std::size_t k = 0; k < n; ++k) {
                        const double zf = hi[k];
                        hi[k] = s * lo[k] + c * zf;
                        lo[k] = c * lo[k] - s * zf;
                    }
                }
            }
            if (early_split) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

Matrix symmetrized_copy(const Matrix& a)
{
    if (!a.square()) throw DomainError("eigh: matrix is not square");
    if (a.rows() == 0) throw DomainError("eigh: empty matrix");
    for (double x : a.data())
        if (!std::isfinite(x)) throw DomainError("eigh: matrix has non-finite entries");
    const double asym = asymmetry(a);
    if (asym > kSymmetryTolerance)
        throw DomainError("eigh: matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    Matrix s = a;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double avg = 0.5 * (a(i, j) + a(j, i));
            s(i, j) = avg;
            s(j, i) = avg;
        }
    return s;
}

} // namespace

SpectralDecomposition eigh(const Matrix& a, bool want_vectors)
{
    Matrix work = symmetrized_copy(a);
    const std::size_t n = work.rows();
    std::vector<double> tau;
    Tridiagonal t = householder_reduce(work, tau);

    std::optional<Matrix> zt;
    if (want_vectors) zt = accumulate_transform_transposed(work, tau);
    implicit_ql(t, zt ? &*zt : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return t.diag[x] < t.diag[y]; });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = t.diag[order[k]];

    if (want_vectors) {
        Matrix u(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto src = zt->row(order[k]);
            double sign = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(src[j]) > kSignThreshold) {
                    sign = src[j] > 0.0 ? 1.0 : -1.0;
                    break;
                }
            }
            for (std::size_t j = 0; j < n; ++j) u(j, k) = sign * src[j];
        }
        out.eigenvectors = std::move(u);
    }
    return out;
}

std::vector<double> eigvalsh(const Matrix& a)
{
    return eigh(a, false).eigenvalues;
}

Matrix minor(const Matrix& a, std::size_t j)
{
    if (!a.square()) throw DomainError("minor: matrix is not square");
    const std::size_t n = a.rows();
    if (n < 2) throw DomainError("minor: need n >= 2");
    if (j >= n) throw DomainError("minor: index out of range");
    Matrix out(n - 1, n - 1);
    for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
            if (c == j) continue;
            out(rr, cc++) = a(r, c);
        }
        ++rr;
    }
    return out;
}

} // namespace wigner
