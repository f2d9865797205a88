#include "wignerlab/semicircle.hpp"

#include "wignerlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wigner::semicircle {

namespace {

void require_finite(double x, const char* who)
{
    if (!std::isfinite(x)) throw DomainError(std::string(who) + ": argument is not finite");
}

} // namespace

double density(double x)
{
    require_finite(x, "density");
    if (std::abs(x) >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double cdf(double x)
{
    require_finite(x, "cdf");
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    const double value = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi)
        + std::asin(x / 2.0) / std::numbers::pi;
    return std::clamp(value, 0.0, 1.0);
}

double quantile(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile: p must lie in [0, 1]");
    if (p == 0.0) return -2.0;
    if (p == 1.0) return 2.0;
    double lo = -2.0;
    double hi = 2.0;
    // 64 halvings shrink the bracket to 4 * 2^-64 or to adjacent doubles.
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(cdf(lo) - p) < std::abs(cdf(hi) - p) ? lo : hi;
}

std::complex<double> stieltjes(std::complex<double> z)
{
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("stieltjes: requires finite z with Im z > 0");
    // The two roots multiply to 1; take the larger-magnitude one from the
    // quadratic formula without cancellation and the other as its reciprocal.
    const std::complex<double> root = std::sqrt(z * z - 4.0);
    const std::complex<double> plus = z + root;
    const std::complex<double> minus = z - root;
    const std::complex<double> big = -0.5 * (std::abs(plus) >= std::abs(minus) ? plus : minus);
    const std::complex<double> small = 1.0 / big;
    return big.imag() > 0.0 ? big : small;
}

double edge_distance(double x)
{
    return 2.0 - std::abs(x);
}

} // namespace wigner::semicircle
