#pragma once

#include "wignerlab/eigensolve.hpp"
#include "wignerlab/matrix.hpp"

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace wigner {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Polylogarithmic scales

/// l_{n,alpha} = log n (log log n)^alpha. Requires log log n > 0 (n >= 3).
double log_scale(double n, double alpha);

/// beta_n = l_{n,alpha}^{1/kappa + 1/2}.
double beta_scale(double n, double alpha, double kappa);

/// v0 = d beta_n^4 / n.
double critical_height(double n, double d, double alpha, double kappa);

// ---------------------------------------------------------------------------
// Stieltjes transforms and resolvent entries

/// m_n(z) = (1/n) sum_k 1 / (l_k - z). Requires Im z > 0.
cplx stieltjes_empirical(std::span<const double> eigenvalues, cplx z);

/// Tr R(z)^2 = sum_k 1 / (l_k - z)^2.
cplx trace_resolvent_squared(std::span<const double> eigenvalues, cplx z);

/// R_jj(z) = sum_k u_jk^2 / (l_k - z) for every j. Requires eigenvectors.
std::vector<cplx> resolvent_diag(const SpectralDecomposition& decomp, cplx z);

/// Full resolvent (W - z)^{-1} = U diag(1 / (l - z)) U^T.
CMatrix resolvent_matrix(const SpectralDecomposition& decomp, cplx z);

enum class MinorNormalization {
    by_n,          // (1/n) Tr R^{(j)}
    by_n_minus_1,  // (1/(n-1)) Tr R^{(j)}
};

/// Normalized trace of the minor resolvent from the minor's eigenvalues;
/// `n` is the dimension of the full matrix.
cplx minor_stieltjes(std::span<const double> minor_eigenvalues, std::size_t n, cplx z,
                     MinorNormalization norm);

// ---------------------------------------------------------------------------
// Self-consistent decomposition of R_jj
//
// With x the j-th column of X = sqrt(n) W with entry j removed, the Schur
// complement formula reads
//
//   1 / R_jj = -z + X_jj / sqrt(n) - (1/n) x^T R^{(j)} x.
//
// Writing it as R_jj = -1/(z + m_n) + eps_j R_jj / (z + m_n) fixes
//
//   eps_j1 =  X_jj / sqrt(n)
//   eps_j2 = -(1/n) sum_k (x_k^2 - 1) R^{(j)}_kk
//   eps_j3 = -(1/n) sum_{k != l} x_k x_l R^{(j)}_kl
//   eps_j4 =  (1/n) (Tr R - Tr R^{(j)})
//
// and eps_j = eps_j1 + eps_j2 + eps_j3 + eps_j4 exactly.

struct EpsilonDiagnostics {
    std::size_t j = 0;
    cplx eps1, eps2, eps3, eps4, eps_total;
    cplx r_jj;            // from the full decomposition
    cplx trace_minor;     // Tr R^{(j)}
    cplx m_minor;         // Tr R^{(j)} / (n - 1)
    double minor_diag_sq = 0.0;     // (1/n) sum_l |R^{(j)}_ll|^2
    double minor_offdiag_sq = 0.0;  // (1/n) sum_{k != l} |R^{(j)}_kl|^2
    double schur_residual = 0.0;    // |R_jj - 1/(-z + X_jj/sqrt(n) - x^T R^{(j)} x / n)|
    double repr_residual = 0.0;     // |R_jj + 1/(z + m_n) - eps_j R_jj / (z + m_n)|
};

struct DeltaAggregates {
    cplx delta_n;   // (1/n) sum_j eps_j R_jj
    cplx delta_n1;  // (1/n) sum_j X_jj / sqrt(n)
    cplx delta_n2;  // (1/n^2) sum_j sum_{l != j} (X_jl^2 - 1) R^{(j)}_ll
    cplx delta_n3;  // (1/n^2) sum_j sum_{k != l} X_jk X_jl R^{(j)}_kl
    cplx delta_n4;  // (1/n^2) sum_j (Tr R - Tr R^{(j)}) R_jj
    cplx delta_prime;  // delta_n1 + delta_n2 + delta_n3
    cplx delta_bar;    // (1/n) sum_{nu <= 3} sum_j eps_{j nu} eps_j R_jj
    cplx trace_r_squared;
    double delta4_identity_residual = 0.0;  // |delta_n4 - Tr R^2 / n^2|
    cplx m_n, s, g_n;
    double gn_identity_residual = 0.0;  // |g_n (z + m_n + s) - delta_n|
};

/// How R^{(j)} is obtained.
enum class MinorRoute {
    direct,    // eigen-decomposition of the minor W^{(j)}: independent of R
    downdate,  // R^{(j)}_kl = R_kl - R_kj R_jl / R_jj: O(n^3) per z for all j
};

/// Resolvent analysis of one symmetric matrix at arbitrary spectral
/// parameters. The full eigen-decomposition is computed once.
class ResolventAnalysis {
public:
    explicit ResolventAnalysis(const Matrix& w, MinorRoute route = MinorRoute::direct);

    std::size_t size() const noexcept { return w_.rows(); }
    const SpectralDecomposition& spectrum() const noexcept { return full_; }
    MinorRoute route() const noexcept { return route_; }

    cplx m_n(cplx z) const;

    /// j is 0-based. Requires n >= 2 and Im z > 0.
    EpsilonDiagnostics epsilon(cplx z, std::size_t j) const;
    std::vector<EpsilonDiagnostics> epsilon_all(cplx z) const;

    DeltaAggregates deltas(cplx z) const;
    DeltaAggregates deltas(cplx z, std::span<const EpsilonDiagnostics> eps) const;

private:
    EpsilonDiagnostics finish(cplx z, std::size_t j, cplx r_jj, cplx m, cplx trace_r, cplx quad,
                              cplx diag_weighted, cplx a2, cplx trace_minor, double minor_frob_sq,
                              double minor_diag_sq) const;
    std::vector<EpsilonDiagnostics> epsilon_downdate(cplx z) const;

    Matrix w_;
    SpectralDecomposition full_;
    MinorRoute route_;
};

/// Convenience wrappers constructing a direct-route analysis.
EpsilonDiagnostics epsilon_decomposition(const Matrix& w, cplx z, std::size_t j);
DeltaAggregates delta_aggregates(const Matrix& w, cplx z);

// ---------------------------------------------------------------------------
// Kolmogorov distance bound through Stieltjes transforms

/// a with (1/pi) * integral_{|u| <= a} du / (1 + u^2) = 3/4, i.e. tan(3 pi / 8).
inline constexpr double kDefaultSmoothingA = 1.0 + std::numbers::sqrt2;

/// (1/pi) * integral_{|u| <= a} du / (1 + u^2) = (2/pi) atan(a).
double smoothing_mass(double a);

struct BoundParams {
    double v = 0.0;       // smoothing height
    double V = 4.0;       // height of the horizontal contour
    double eps_cut = 0.0; // edge cut epsilon
    double a = kDefaultSmoothingA;
    double C1 = 10.0;
    double C2 = 10.0;
    double d = 1.0;
    double alpha = 1.0;
    double kappa = 2.0;
    int x_grid = 2048;    // points for the sup over J'_eps

    /// v = v_multiplier * v0 and eps = (2 a v0)^{2/3} with v0 = d beta_n^4 / n.
    static BoundParams from_critical_height(std::size_t n, double d = 1.0, double alpha = 1.0,
                                            double kappa = 2.0, double v_multiplier = 2.0);
};

struct Admissibility {
    bool admissible = true;
    std::string reason;  // empty when admissible
};

/// Throws DomainError for structurally invalid parameters (non-positive v,
/// V, eps, a; negative constants; d < 1; non-positive alpha or kappa).
/// Otherwise reports whether 0 < eps < 1/2, 2 v a <= eps^{3/2}, v < V and
/// the mass condition for a hold.
Admissibility check_admissibility(const BoundParams& p);

enum class AdmissibilityPolicy {
    enforce,  // throw DomainError for inadmissible parameters
    report,   // evaluate anyway and flag the result
};

struct SmoothingBound {
    double I_horizontal = 0.0;  // 2 * integral |S_F - S_G|(u + iV) du, tail bound included
    double I_vertical = 0.0;    // 2 * sup_{x in J'_eps} integral_{v'}^{V} |S_F - S_G|(x + iu) du
    double penalty = 0.0;       // C1 v + C2 eps^{3/2}
    double total = 0.0;
    double horizontal_tail = 0.0;  // analytic bound for |u| > U_max (before doubling)
    double u_max = 0.0;
    double sup_x = 0.0;            // location of the vertical sup; NaN if J'_eps is empty
    bool quadrature_converged = true;
    Admissibility admissibility;
};

/// Evaluates the three-term upper bound for the Kolmogorov distance between
/// the empirical distribution of `eigenvalues` and the semicircle law.
///
/// The horizontal integral is computed on |u| <= U_max = max(8, n, 2L) by
/// adaptive Simpson (absolute tolerance 1e-8 per segment). Beyond U_max the
/// expansion 1/(x - z) = -1/z - x/z^2 + x^2 / (z^2 (x - z)) bounds the
/// integrand by |mean| / u^2 + (h^2 + 1) / (u^2 (|u| - L)), L the larger of
/// 2 and the spectral radius, which is integrated in closed form. The
/// vertical sup runs over a uniform x_grid on J'_eps refined twice around the
/// running maximum; the vertical integrals use u = e^t.
SmoothingBound smoothing_bound(std::span<const double> eigenvalues, const BoundParams& params,
                               AdmissibilityPolicy policy = AdmissibilityPolicy::enforce);

} // namespace wigner
