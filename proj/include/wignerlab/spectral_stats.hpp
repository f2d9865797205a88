#pragma once

#include "wignerlab/eigensolve.hpp"
#include "wignerlab/matrix.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wigner {

struct KolmogorovReport {
    double delta_star = 0.0;  // sup_x |F_n(x) - G(x)|
    double argmax_x = 0.0;
    std::size_t n = 0;
};

/// Exact Kolmogorov distance between the empirical distribution of the
/// (ascending) eigenvalues and the semicircle law, evaluated at the jump
/// points: max_j max(|j/n - G(l_j)|, |(j-1)/n - G(l_j)|).
/// Throws DomainError on empty, unsorted or non-finite input.
KolmogorovReport kolmogorov_distance(std::span<const double> eigenvalues);

struct QuantileDeviation {
    double max_abs = 0.0;             // max_j |l_j - gamma_nj|
    double max_rigidity_ratio = 0.0;  // max_j |l_j - gamma_nj| / (min(j, n-j+1)^{-1/3} n^{-2/3})
};

/// Deviation of sorted eigenvalues from the classical locations gamma_nj
/// defined by G(gamma_nj) = j / n.
QuantileDeviation quantile_deviation(std::span<const double> eigenvalues);

/// gamma_nj for j = 1..n.
std::vector<double> classical_locations(std::size_t n);

struct TraceMoments {
    double m1_residual = 0.0;  // |sum l_j - Tr W|
    double m2_residual = 0.0;  // |sum l_j^2 - sum W_jk^2|
};

TraceMoments trace_moments(const Matrix& w, std::span<const double> eigenvalues);

struct DelocReport {
    double max_component_sq = 0.0;  // max_{j,k} u_jk^2
    double max_partial_dev = 0.0;   // max_{j,k} |sum_{nu<=k} u_{j nu}^2 - k/n|
    std::vector<double> row_partial_dev;  // the inner max for each row j
};

/// Delocalization statistics. Partial sums run over eigenvectors in
/// ascending eigenvalue order for a fixed coordinate j. Throws DomainError
/// without eigenvectors and NumericError when a column is not unit length
/// within 1e-10.
DelocReport deloc_stats(const SpectralDecomposition& decomp);

/// The spectral measure of coordinate j: mass u_jk^2 at each eigenvalue
/// l_k. Its Stieltjes transform is the resolvent entry R_jj(z).
class EigenvectorMeasure {
public:
    /// j is 0-based. Throws DomainError without vectors or for j >= n.
    EigenvectorMeasure(const SpectralDecomposition& decomp, std::size_t j);

    std::span<const double> atoms() const noexcept { return atoms_; }
    std::span<const double> weights() const noexcept { return weights_; }

    double total_mass() const;

    /// F_nj(x) = sum_k u_jk^2 [l_k <= x].
    double cdf(double x) const;

    /// sup_x |F_nj(x) - G(x)| with its location.
    KolmogorovReport kolmogorov_distance() const;

    /// sum_k u_jk^2 / (l_k - z). Requires Im z > 0.
    std::complex<double> stieltjes(std::complex<double> z) const;

private:
    std::vector<double> atoms_;
    std::vector<double> weights_;
};

/// Kolmogorov distance of an atomic measure (sorted atoms, nonnegative
/// weights) to the semicircle law, exact over left and right limits at
/// every atom.
KolmogorovReport weighted_kolmogorov_distance(std::span<const double> atoms, std::span<const double> weights);

/// Throws DomainError unless values are finite and non-decreasing.
void require_sorted(std::span<const double> values, const char* who);

} // namespace wigner
