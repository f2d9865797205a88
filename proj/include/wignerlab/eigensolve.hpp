#pragma once

#include "wignerlab/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace wigner {

/// Eigen-decomposition of a real symmetric matrix.
///
/// Index convention: eigenvectors(j, k) = u_jk is component j of the unit
/// eigenvector belonging to eigenvalues[k]; the columns are eigenvectors.
/// Each column is signed so that its first component of magnitude above
/// kSignThreshold is positive.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    std::optional<Matrix> eigenvectors;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    bool has_vectors() const noexcept { return eigenvectors.has_value(); }
};

inline constexpr double kSignThreshold = 1e-12;

/// Inputs whose largest |A_ij - A_ji| exceeds this are rejected.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Householder tridiagonalization followed by implicit QL with Wilkinson
/// shifts. The input is symmetrized as (A + A^T) / 2 first. Throws
/// DomainError for non-square, non-finite or asymmetric input and
/// NumericError if the QL iteration exceeds 30 n sweeps.
SpectralDecomposition eigh(const Matrix& a, bool want_vectors);

/// Eigenvalues only; same algorithm as eigh(a, false).
std::vector<double> eigvalsh(const Matrix& a);

/// Principal minor with row and column j (0-based) removed; survivors keep
/// their relative order.
Matrix minor(const Matrix& a, std::size_t j);

} // namespace wigner
