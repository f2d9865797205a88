#include "wignerlab/resolvent.hpp"

#include "wignerlab/errors.hpp"
#include "wignerlab/quadrature.hpp"
#include "wignerlab/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

namespace wigner {

namespace {

void require_upper(cplx z, const char* who)
{
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": requires finite z with Im z > 0");
}

void require_spectrum(std::span<const double> eigenvalues, const char* who)
{
    if (eigenvalues.empty()) throw DomainError(std::string(who) + ": empty spectrum");
    for (double l : eigenvalues)
        if (!std::isfinite(l)) throw DomainError(std::string(who) + ": non-finite eigenvalue");
}

} // namespace

double log_scale(double n, double alpha)
{
    if (!(std::isfinite(n) && n > std::numbers::e))
        throw DomainError("log_scale: requires n > e so that log log n > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("log_scale: alpha must be positive");
    const double ln = std::log(n);
    return ln * std::pow(std::log(ln), alpha);
}

double beta_scale(double n, double alpha, double kappa)
{
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("beta_scale: kappa must be positive");
    return std::pow(log_scale(n, alpha), 1.0 / kappa + 0.5);
}

double critical_height(double n, double d, double alpha, double kappa)
{
    if (!(d >= 1.0) || !std::isfinite(d)) throw DomainError("critical_height: d must be at least 1");
    const double b = beta_scale(n, alpha, kappa);
    return d * b * b * b * b / n;
}

cplx stieltjes_empirical(std::span<const double> eigenvalues, cplx z)
{
    require_spectrum(eigenvalues, "stieltjes_empirical");
    require_upper(z, "stieltjes_empirical");
    cplx s = 0.0;
    for (double l : eigenvalues) s += 1.0 / (l - z);
    return s / static_cast<double>(eigenvalues.size());
}

cplx trace_resolvent_squared(std::span<const double> eigenvalues, cplx z)
{
    require_spectrum(eigenvalues, "trace_resolvent_squared");
    require_upper(z, "trace_resolvent_squared");
    cplx s = 0.0;
    for (double l : eigenvalues) {
        const cplx r = 1.0 / (l - z);
        s += r * r;
    }
    return s;
}

std::vector<cplx> resolvent_diag(const SpectralDecomposition& decomp, cplx z)
{
    if (!decomp.has_vectors()) throw DomainError("resolvent_diag: decomposition has no eigenvectors");
    require_upper(z, "resolvent_diag");
    const std::size_t n = decomp.size();
    std::vector<cplx> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = 1.0 / (decomp.eigenvalues[k] - z);
    std::vector<cplx> out(n);
    const Matrix& u = *decomp.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const auto row = u.row(j);
        cplx s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += row[k] * row[k] * d[k];
        out[j] = s;
    }
    return out;
}

CMatrix resolvent_matrix(const SpectralDecomposition& decomp, cplx z)
{
    if (!decomp.has_vectors()) throw DomainError("resolvent_matrix: decomposition has no eigenvectors");
    require_upper(z, "resolvent_matrix");
    const std::size_t n = decomp.size();
    const Matrix& u = *decomp.eigenvectors;
    std::vector<cplx> d(n);
    for (std::size_t m = 0; m < n; ++m) d[m] = 1.0 / (decomp.eigenvalues[m] - z);

    CMatrix scaled(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) scaled(k, m) = u(k, m) * d[m];

    CMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto sk = scaled.row(k);
        for (std::size_t l = k; l < n; ++l) {
            const auto ul = u.row(l);
            cplx s = 0.0;
            for (std::size_t m = 0; m < n; ++m) s += sk[m] * ul[m];
            r(k, l) = s;
            r(l, k) = s;
        }
    }
    return r;
}

cplx minor_stieltjes(std::span<const double> minor_eigenvalues, std::size_t n, cplx z, MinorNormalization norm)
{
    require_spectrum(minor_eigenvalues, "minor_stieltjes");
    require_upper(z, "minor_stieltjes");
    if (minor_eigenvalues.size() + 1 != n)
        throw DomainError("minor_stieltjes: minor must have dimension n - 1");
    cplx s = 0.0;
    for (double l : minor_eigenvalues) s += 1.0 / (l - z);
    const double denom = norm == MinorNormalization::by_n ? static_cast<double>(n) : static_cast<double>(n - 1);
    return s / denom;
}

// ---------------------------------------------------------------------------

ResolventAnalysis::ResolventAnalysis(const Matrix& w, MinorRoute route)
    : w_(w), full_(eigh(w, true)), route_(route)
{
    if (w_.rows() < 2) throw DomainError("resolvent analysis: requires n >= 2");
}

cplx ResolventAnalysis::m_n(cplx z) const
{
    return stieltjes_empirical(full_.eigenvalues, z);
}

EpsilonDiagnostics ResolventAnalysis::finish(cplx z, std::size_t j, cplx r_jj, cplx m, cplx trace_r, cplx quad,
                                             cplx diag_weighted, cplx a2, cplx trace_minor,
                                             double minor_frob_sq, double minor_diag_sq) const
{
    const double n = static_cast<double>(size());
    EpsilonDiagnostics e;
    e.j = j;
    e.eps1 = w_(j, j);
    e.eps2 = -a2;
    e.eps3 = -(quad - diag_weighted) / n;
    e.eps4 = (trace_r - trace_minor) / n;
    e.eps_total = e.eps1 + e.eps2 + e.eps3 + e.eps4;
    e.r_jj = r_jj;
    e.trace_minor = trace_minor;
    e.m_minor = trace_minor / (n - 1.0);
    e.minor_diag_sq = minor_diag_sq / n;
    e.minor_offdiag_sq = std::max(0.0, minor_frob_sq - minor_diag_sq) / n;
    e.schur_residual = std::abs(r_jj - 1.0 / (-z + w_(j, j) - quad / n));
    e.repr_residual = std::abs(r_jj + 1.0 / (z + m) - e.eps_total * r_jj / (z + m));
    return e;
}

EpsilonDiagnostics ResolventAnalysis::epsilon(cplx z, std::size_t j) const
{
    require_upper(z, "epsilon");
    const std::size_t n = size();
    if (j >= n) throw DomainError("epsilon: row index out of range");
    if (route_ == MinorRoute::downdate) return epsilon_downdate(z)[j];

    const double sn = std::sqrt(static_cast<double>(n));
    const cplx m = m_n(z);
    cplx trace_r = 0.0;
    for (double l : full_.eigenvalues) trace_r += 1.0 / (l - z);
    cplx r_jj = 0.0;
    const auto uj = full_.eigenvectors->row(j);
    for (std::size_t k = 0; k < n; ++k) r_jj += uj[k] * uj[k] / (full_.eigenvalues[k] - z);

    const SpectralDecomposition mdec = eigh(minor(w_, j), true);
    const Matrix& up = *mdec.eigenvectors;
    const std::size_t nm = n - 1;
    std::vector<double> x(nm);
    for (std::size_t k = 0; k < nm; ++k) x[k] = sn * w_(k < j ? k : k + 1, j);

    std::vector<cplx> d(nm);
    cplx trace_minor = 0.0;
    double frob_sq = 0.0;
    for (std::size_t mi = 0; mi < nm; ++mi) {
        d[mi] = 1.0 / (mdec.eigenvalues[mi] - z);
        trace_minor += d[mi];
        frob_sq += std::norm(d[mi]);
    }

    std::vector<double> proj(nm, 0.0);
    cplx diag_weighted = 0.0, a2 = 0.0;
    double diag_sq = 0.0;
    for (std::size_t k = 0; k < nm; ++k) {
        const auto row = up.row(k);
        cplx rkk = 0.0;
        for (std::size_t mi = 0; mi < nm; ++mi) {
            rkk += row[mi] * row[mi] * d[mi];
            proj[mi] += row[mi] * x[k];
        }
        diag_weighted += x[k] * x[k] * rkk;
        a2 += (x[k] * x[k] - 1.0) * rkk;
        diag_sq += std::norm(rkk);
    }
    cplx quad = 0.0;
    for (std::size_t mi = 0; mi < nm; ++mi) quad += proj[mi] * proj[mi] * d[mi];

    return finish(z, j, r_jj, m, trace_r, quad, diag_weighted, a2 / static_cast<double>(n), trace_minor,
                  frob_sq, diag_sq);
}

std::vector<EpsilonDiagnostics> ResolventAnalysis::epsilon_downdate(cplx z) const
{
    const std::size_t n = size();
    const double sn = std::sqrt(static_cast<double>(n));
    const cplx m = m_n(z);
    const CMatrix r = resolvent_matrix(full_, z);
    cplx trace_r = 0.0;
    for (std::size_t k = 0; k < n; ++k) trace_r += r(k, k);

    // RX(k, j) = sum_l R_kl y_l with y the j-th column of X, diagonal zeroed.
    CMatrix rx(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto rk = r.row(k);
        auto out = rx.row(k);
        for (std::size_t l = 0; l < n; ++l) {
            const auto wl = w_.row(l);
            for (std::size_t j = 0; j < n; ++j)
                if (j != l) out[j] += rk[l] * (sn * wl[j]);
        }
    }

    std::vector<EpsilonDiagnostics> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx rjj = r(j, j);
        const auto rj = r.row(j);
        cplx yry = 0.0, r2jj = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            r2jj += rj[k] * rj[k];
            if (k != j) yry += sn * w_(k, j) * rx(k, j);
        }
        const cplx c = rx(j, j);
        const cplx quad = yry - c * c / rjj;
        const cplx trace_minor = trace_r - r2jj / rjj;

        cplx diag_weighted = 0.0, a2 = 0.0;
        double diag_sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const cplx rkk = r(k, k) - rj[k] * rj[k] / rjj;
            const double xk = sn * w_(k, j);
            diag_weighted += xk * xk * rkk;
            a2 += (xk * xk - 1.0) * rkk;
            diag_sq += std::norm(rkk);
        }
        // sum_{kl} |R^{(j)}_kl|^2 = Im Tr R^{(j)} / Im z
        const double frob_sq = trace_minor.imag() / z.imag();
        out.push_back(finish(z, j, rjj, m, trace_r, quad, diag_weighted, a2 / static_cast<double>(n),
                             trace_minor, frob_sq, diag_sq));
    }
    return out;
}

std::vector<EpsilonDiagnostics> ResolventAnalysis::epsilon_all(cplx z) const
{
    require_upper(z, "epsilon");
    if (route_ == MinorRoute::downdate) return epsilon_downdate(z);
    std::vector<EpsilonDiagnostics> out;
    out.reserve(size());
    for (std::size_t j = 0; j < size(); ++j) out.push_back(epsilon(z, j));
    return out;
}

DeltaAggregates ResolventAnalysis::deltas(cplx z) const
{
    const auto eps = epsilon_all(z);
    return deltas(z, eps);
}

DeltaAggregates ResolventAnalysis::deltas(cplx z, std::span<const EpsilonDiagnostics> eps) const
{
    require_upper(z, "deltas");
    const std::size_t n = size();
    if (eps.size() != n) throw DomainError("deltas: need one epsilon record per row");
    const double dn = static_cast<double>(n);
    DeltaAggregates a;
    for (const auto& e : eps) {
        a.delta_n += e.eps_total * e.r_jj;
        a.delta_n1 += e.eps1;
        a.delta_n2 -= e.eps2;
        a.delta_n3 -= e.eps3;
        a.delta_n4 += e.eps4 * e.r_jj;
        a.delta_bar += (e.eps1 + e.eps2 + e.eps3) * e.eps_total * e.r_jj;
    }
    a.delta_n /= dn;
    a.delta_n1 /= dn;
    a.delta_n2 /= dn;
    a.delta_n3 /= dn;
    a.delta_n4 /= dn;
    a.delta_bar /= dn;
    a.delta_prime = a.delta_n1 + a.delta_n2 + a.delta_n3;
    a.trace_r_squared = trace_resolvent_squared(full_.eigenvalues, z);
    a.delta4_identity_residual = std::abs(a.delta_n4 - a.trace_r_squared / (dn * dn));
    a.m_n = m_n(z);
    a.s = semicircle::stieltjes(z);
    a.g_n = a.m_n - a.s;
    a.gn_identity_residual = std::abs(a.g_n * (z + a.m_n + a.s) - a.delta_n);
    return a;
}

EpsilonDiagnostics epsilon_decomposition(const Matrix& w, cplx z, std::size_t j)
{
    return ResolventAnalysis(w).epsilon(z, j);
}

DeltaAggregates delta_aggregates(const Matrix& w, cplx z)
{
    return ResolventAnalysis(w).deltas(z);
}

// ---------------------------------------------------------------------------

double smoothing_mass(double a)
{
    return 2.0 / std::numbers::pi * std::atan(a);
}

BoundParams BoundParams::from_critical_height(std::size_t n, double d, double alpha, double kappa,
                                              double v_multiplier)
{
    if (!(v_multiplier > 0.0)) throw DomainError("from_critical_height: multiplier must be positive");
    BoundParams p;
    p.d = d;
    p.alpha = alpha;
    p.kappa = kappa;
    const double v0 = critical_height(static_cast<double>(n), d, alpha, kappa);
    p.v = v_multiplier * v0;
    p.eps_cut = std::pow(2.0 * p.a * v0, 2.0 / 3.0);
    return p;
}

Admissibility check_admissibility(const BoundParams& p)
{
    auto finite_pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!finite_pos(p.v)) throw DomainError("bound: v must be positive");
    if (!finite_pos(p.V)) throw DomainError("bound: V must be positive");
    if (!finite_pos(p.eps_cut)) throw DomainError("bound: eps must be positive");
    if (!finite_pos(p.a)) throw DomainError("bound: a must be positive");
    if (!(std::isfinite(p.C1) && p.C1 >= 0.0) || !(std::isfinite(p.C2) && p.C2 >= 0.0))
        throw DomainError("bound: C1 and C2 must be non-negative");
    if (!(std::isfinite(p.d) && p.d >= 1.0)) throw DomainError("bound: d must be at least 1");
    if (!finite_pos(p.alpha)) throw DomainError("bound: alpha must be positive");
    if (!finite_pos(p.kappa)) throw DomainError("bound: kappa must be positive");
    if (p.x_grid < 1) throw DomainError("bound: x_grid must be positive");

    Admissibility adm;
    auto fail = [&](std::string why) {
        if (!adm.reason.empty()) adm.reason += "; ";
        adm.reason += why;
        adm.admissible = false;
    };
    if (!(p.eps_cut < 0.5)) fail("eps = " + std::to_string(p.eps_cut) + " is not below 1/2");
    if (2.0 * p.v * p.a > std::pow(p.eps_cut, 1.5) * (1.0 + 1e-12))
        fail("2 v a = " + std::to_string(2.0 * p.v * p.a) + " exceeds eps^{3/2} = " +
             std::to_string(std::pow(p.eps_cut, 1.5)));
    if (!(p.v < p.V)) fail("v = " + std::to_string(p.v) + " is not below V = " + std::to_string(p.V));
    if (std::abs(smoothing_mass(p.a) - 0.75) > 1e-12) fail("a does not carry smoothing mass 3/4");
    return adm;
}

namespace {

// integral_U^inf du / (u^2 (u - c)) for U > c > 0
double tail_kernel(double U, double c)
{
    const double t = c / U;
    if (t < 1e-4) return (0.5 + t / 3.0 + t * t / 4.0) / (U * U);
    return -std::log1p(-t) / (c * c) - 1.0 / (c * U);
}

} // namespace

SmoothingBound smoothing_bound(std::span<const double> eigenvalues, const BoundParams& params,
                               AdmissibilityPolicy policy)
{
    require_spectrum(eigenvalues, "smoothing_bound");
    SmoothingBound out;
    out.admissibility = check_admissibility(params);
    if (!out.admissibility.admissible && policy == AdmissibilityPolicy::enforce)
        throw DomainError("bound: inadmissible parameters: " + out.admissibility.reason);

    const double n = static_cast<double>(eigenvalues.size());
    const double V = params.V;
    auto gap = [&](cplx z) { return std::abs(stieltjes_empirical(eigenvalues, z) - semicircle::stieltjes(z)); };

    double m1 = 0.0, h2 = 0.0, radius = 0.0;
    for (double l : eigenvalues) {
        m1 += l;
        h2 += l * l;
        radius = std::max(radius, std::abs(l));
    }
    m1 /= n;
    h2 /= n;
    const double L = std::max(2.0, radius);
    const double U = std::max({8.0, n, 2.0 * L});
    out.u_max = U;

    constexpr double tol = 1e-8;
    auto horiz = [&](double u) { return gap(cplx(u, V)); };
    double core = 0.0;
    for (auto [lo, hi, panels] : {std::tuple{-U, -8.0, 16}, std::tuple{-8.0, 8.0, 32}, std::tuple{8.0, U, 16}}) {
        if (hi <= lo) continue;
        const auto q = adaptive_simpson(horiz, lo, hi, tol, panels);
        core += q.value;
        out.quadrature_converged = out.quadrature_converged && q.converged;
    }
    out.horizontal_tail = 2.0 * (std::abs(m1) / U + (h2 + 1.0) * tail_kernel(U, L));
    out.I_horizontal = 2.0 * (core + out.horizontal_tail);

    // Vertical sup over J'_eps = {x : 2 - |x| >= eps / 2}.
    const double half = 2.0 - 0.5 * params.eps_cut;
    out.sup_x = std::numeric_limits<double>::quiet_NaN();
    double best = 0.0;
    if (half >= 0.0) {
        auto vertical = [&](double x) {
            const double vp = params.v / std::sqrt(2.0 - std::abs(x));
            if (!(vp < V)) return 0.0;
            auto f = [&](double t) {
                const double u = std::exp(t);
                return gap(cplx(x, u)) * u;
            };
            const auto q = adaptive_simpson(f, std::log(vp), std::log(V), tol, 16);
            out.quadrature_converged = out.quadrature_converged && q.converged;
            return q.value;
        };
        auto scan = [&](double lo, double hi, int points) {
            double arg = lo;
            double val = -1.0;
            for (int i = 0; i < points; ++i) {
                const double x = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
                const double y = vertical(x);
                if (y > val) {
                    val = y;
                    arg = x;
                }
            }
            return std::pair{arg, val};
        };
        const int grid = params.x_grid;
        auto [arg, val] = scan(-half, half, half > 0.0 ? grid : 1);
        double step = grid > 1 ? 2.0 * half / (grid - 1) : 0.0;
        for (int round = 0; round < 2 && step > 0.0; ++round) {
            const auto [a2, v2] = scan(std::max(-half, arg - step), std::min(half, arg + step), 33);
            if (v2 > val) {
                val = v2;
                arg = a2;
            }
            step /= 16.0;
        }
        best = val;
        out.sup_x = arg;
    }
    out.I_vertical = 2.0 * best;
    out.penalty = params.C1 * params.v + params.C2 * std::pow(params.eps_cut, 1.5);
    out.total = out.I_horizontal + out.I_vertical + out.penalty;
    return out;
}

} // namespace wigner
