#include "wignerlab/spectral_stats.hpp"

#include "wignerlab/errors.hpp"
#include "wignerlab/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wigner {

void require_sorted(std::span<const double> values, const char* who)
{
    if (values.empty()) throw DomainError(std::string(who) + ": empty spectrum");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw DomainError(std::string(who) + ": non-finite eigenvalue");
        if (i > 0 && values[i] < values[i - 1])
            throw DomainError(std::string(who) + ": eigenvalues must be sorted ascending");
    }
}

KolmogorovReport kolmogorov_distance(std::span<const double> eigenvalues)
{
    require_sorted(eigenvalues, "kolmogorov_distance");
    const std::size_t n = eigenvalues.size();
    const double dn = static_cast<double>(n);
    KolmogorovReport rep{0.0, eigenvalues.front(), n};
    for (std::size_t j = 0; j < n; ++j) {
        const double g = semicircle::cdf(eigenvalues[j]);
        const double d = std::max(std::abs(static_cast<double>(j + 1) / dn - g),
                                  std::abs(static_cast<double>(j) / dn - g));
        if (d > rep.delta_star) {
            rep.delta_star = d;
            rep.argmax_x = eigenvalues[j];
        }
    }
    return rep;
}

KolmogorovReport weighted_kolmogorov_distance(std::span<const double> atoms, std::span<const double> weights)
{
    require_sorted(atoms, "weighted_kolmogorov_distance");
    if (atoms.size() != weights.size()) throw DomainError("weighted_kolmogorov_distance: size mismatch");
    KolmogorovReport rep{0.0, atoms.front(), atoms.size()};
    double below = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (weights[k] < 0.0) throw DomainError("weighted_kolmogorov_distance: negative weight");
        const double g = semicircle::cdf(atoms[k]);
        const double above = below + weights[k];
        const double d = std::max(std::abs(above - g), std::abs(below - g));
        if (d > rep.delta_star) {
            rep.delta_star = d;
            rep.argmax_x = atoms[k];
        }
        below = above;
    }
    return rep;
}

std::vector<double> classical_locations(std::size_t n)
{
    std::vector<double> gamma(n);
    for (std::size_t j = 0; j < n; ++j)
        gamma[j] = semicircle::quantile(static_cast<double>(j + 1) / static_cast<double>(n));
    return gamma;
}

QuantileDeviation quantile_deviation(std::span<const double> eigenvalues)
{
    require_sorted(eigenvalues, "quantile_deviation");
    const std::size_t n = eigenvalues.size();
    const auto gamma = classical_locations(n);
    const double scale = std::pow(static_cast<double>(n), -2.0 / 3.0);
    QuantileDeviation out;
    for (std::size_t j = 0; j < n; ++j) {
        const double dev = std::abs(eigenvalues[j] - gamma[j]);
        const double rank = static_cast<double>(std::min(j + 1, n - j));
        out.max_abs = std::max(out.max_abs, dev);
        out.max_rigidity_ratio = std::max(out.max_rigidity_ratio, dev / (std::pow(rank, -1.0 / 3.0) * scale));
    }
    return out;
}

TraceMoments trace_moments(const Matrix& w, std::span<const double> eigenvalues)
{
    if (!w.square() || w.rows() != eigenvalues.size())
        throw DomainError("trace_moments: matrix and spectrum dimensions differ");
    double s1 = 0.0, s2 = 0.0;
    for (double l : eigenvalues) {
        s1 += l;
        s2 += l * l;
    }
    double fro2 = 0.0;
    for (double x : w.data()) fro2 += x * x;
    return {std::abs(s1 - trace(w)), std::abs(s2 - fro2)};
}

DelocReport deloc_stats(const SpectralDecomposition& decomp)
{
    if (!decomp.has_vectors()) throw DomainError("deloc_stats: decomposition has no eigenvectors");
    const Matrix& u = *decomp.eigenvectors;
    const std::size_t n = u.rows();

    std::vector<double> col_norm(n, 0.0);
    DelocReport rep;
    rep.row_partial_dev.assign(n, 0.0);
    const double dn = static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto row = u.row(j);
        double partial = 0.0;
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double sq = row[k] * row[k];
            col_norm[k] += sq;
            rep.max_component_sq = std::max(rep.max_component_sq, sq);
            partial += sq;
            worst = std::max(worst, std::abs(partial - static_cast<double>(k + 1) / dn));
        }
        rep.row_partial_dev[j] = worst;
        rep.max_partial_dev = std::max(rep.max_partial_dev, worst);
    }
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(col_norm[k] - 1.0) > 1e-10)
            throw NumericError("deloc_stats: eigenvector " + std::to_string(k) + " is not unit length");
    return rep;
}

EigenvectorMeasure::EigenvectorMeasure(const SpectralDecomposition& decomp, std::size_t j)
{
    if (!decomp.has_vectors()) throw DomainError("eigenvector_measure: decomposition has no eigenvectors");
    const Matrix& u = *decomp.eigenvectors;
    if (j >= u.rows()) throw DomainError("eigenvector_measure: row index out of range");
    atoms_ = decomp.eigenvalues;
    weights_.resize(atoms_.size());
    const auto row = u.row(j);
    for (std::size_t k = 0; k < row.size(); ++k) weights_[k] = row[k] * row[k];
}

double EigenvectorMeasure::total_mass() const
{
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

double EigenvectorMeasure::cdf(double x) const
{
    double s = 0.0;
    for (std::size_t k = 0; k < atoms_.size() && atoms_[k] <= x; ++k) s += weights_[k];
    return s;
}

KolmogorovReport EigenvectorMeasure::kolmogorov_distance() const
{
    return weighted_kolmogorov_distance(atoms_, weights_);
}

std::complex<double> EigenvectorMeasure::stieltjes(std::complex<double> z) const
{
    if (!(z.imag() > 0.0)) throw DomainError("eigenvector_measure: requires Im z > 0");
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) s += weights_[k] / (atoms_[k] - z);
    return s;
}

} // namespace wigner
