#include "wignerlab/matrix.hpp"

#include "wignerlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wigner {

double asymmetry(const Matrix& a)
{
    if (!a.square()) throw DomainError("asymmetry: matrix is not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
    return worst;
}

double frobenius_norm(const Matrix& a)
{
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

double trace(const Matrix& a)
{
    if (!a.square()) throw DomainError("trace: matrix is not square");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

Matrix transpose(const Matrix& a)
{
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw DomainError("multiply: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

} // namespace wigner
