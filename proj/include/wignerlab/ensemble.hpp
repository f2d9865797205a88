#pragma once

#include "wignerlab/matrix.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace wigner {

/// Identifier of the generator and variate transforms; recorded in every
/// metadata file so results can be tied to the exact sampling algorithm.
inline constexpr std::string_view kRngId = "mt19937_64/splitmix64-seed/box-muller-v1";

enum class EntryKind { gaussian, rademacher, symmetric_weibull, uniform };

/// Law of the unscaled entries X_jk: mean 0, variance 1.
///
/// `shape` is the Weibull shape for symmetric_weibull and is ignored by the
/// other kinds. The symmetric Weibull variable is S * Y / sigma with a fair
/// sign S, Y ~ Weibull(shape, 1) and sigma^2 = Gamma(1 + 2 / shape), so
/// P(|X| > t) = exp(-(sigma t)^shape).
struct EntryDistribution {
    EntryKind kind = EntryKind::gaussian;
    double shape = 1.0;

    static EntryDistribution gaussian() { return {EntryKind::gaussian, 1.0}; }
    static EntryDistribution rademacher() { return {EntryKind::rademacher, 1.0}; }
    static EntryDistribution uniform() { return {EntryKind::uniform, 1.0}; }
    static EntryDistribution weibull(double shape) { return {EntryKind::symmetric_weibull, shape}; }

    bool operator==(const EntryDistribution&) const = default;
};

std::string to_string(EntryKind kind);

/// Accepts "gaussian", "rademacher", "uniform" and "symmetric-weibull"
/// (also "weibull"). Throws DomainError otherwise.
EntryKind parse_entry_kind(std::string_view name);

/// Validates the distribution (positive finite Weibull shape).
void validate(const EntryDistribution& dist);

/// Exponent kappa for which P(|X| > t) <= exp(-t^kappa) / kappa holds for
/// every t >= 1, derived from the closed-form survival function:
/// gaussian 1, uniform 1/2, rademacher 2, Weibull min(shape, 1) for
/// shape <= 2 and 1/2 above.
double envelope_exponent(const EntryDistribution& dist);

/// Default kappa entering beta_n: 2 for the gaussian and the bounded laws,
/// the shape for symmetric Weibull.
double rate_exponent(const EntryDistribution& dist);

/// Exact P(|X| > t).
double survival(const EntryDistribution& dist, double t);

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable per-replicate seed from (base_seed, n, replicate). Independent of
/// the order in which replicates are generated.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n, std::uint64_t replicate) noexcept;

/// Draws entries of a given law from a seeded mt19937_64 stream. Only the
/// raw 64-bit engine output is used, so the variates do not depend on a
/// standard library's distribution implementations.
class EntrySampler {
public:
    EntrySampler(EntryDistribution dist, std::uint64_t seed);

    double operator()();

    const EntryDistribution& distribution() const noexcept { return dist_; }

private:
    double uniform01();  // (0, 1), 53 random bits
    double gaussian();

    EntryDistribution dist_;
    std::mt19937_64 engine_;
    double weibull_scale_ = 1.0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct WignerSample {
    std::size_t n = 0;
    Matrix entries;  // W = X / sqrt(n), full symmetric storage
    EntryDistribution dist;
    std::uint64_t seed = 0;

    /// X_jk = sqrt(n) W_jk.
    double unscaled(std::size_t j, std::size_t k) const;
};

/// Fills the upper triangle (diagonal included) row by row from one stream
/// and mirrors it. Throws DomainError for n == 0.
WignerSample sample_wigner(std::size_t n, const EntryDistribution& dist, std::uint64_t seed);

/// Monte Carlo estimate of P(|X| > t) from `draws` samples. Requires t >= 1
/// and draws >= 1000.
double tail_probe(const EntryDistribution& dist, double t, std::size_t draws, std::uint64_t seed = 1);

} // namespace wigner
