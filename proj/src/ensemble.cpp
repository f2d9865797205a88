#include "wignerlab/ensemble.hpp"

#include "wignerlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wigner {

std::string to_string(EntryKind kind)
{
    switch (kind) {
    case EntryKind::gaussian: return "gaussian";
    case EntryKind::rademacher: return "rademacher";
    case EntryKind::symmetric_weibull: return "symmetric-weibull";
    case EntryKind::uniform: return "uniform";
    }
    return "unknown";
}

EntryKind parse_entry_kind(std::string_view name)
{
    if (name == "gaussian") return EntryKind::gaussian;
    if (name == "rademacher") return EntryKind::rademacher;
    if (name == "uniform") return EntryKind::uniform;
    if (name == "symmetric-weibull" || name == "weibull") return EntryKind::symmetric_weibull;
    throw DomainError("unknown entry distribution '" + std::string(name) + "'");
}

void validate(const EntryDistribution& dist)
{
    if (dist.kind == EntryKind::symmetric_weibull && !(std::isfinite(dist.shape) && dist.shape > 0.0))
        throw DomainError("symmetric-weibull shape must be positive and finite");
}

double envelope_exponent(const EntryDistribution& dist)
{
    validate(dist);
    switch (dist.kind) {
    case EntryKind::gaussian: return 1.0;
    case EntryKind::rademacher: return 2.0;
    case EntryKind::uniform: return 0.5;
    case EntryKind::symmetric_weibull: return dist.shape <= 2.0 ? std::min(dist.shape, 1.0) : 0.5;
    }
    return 1.0;
}

double rate_exponent(const EntryDistribution& dist)
{
    validate(dist);
    return dist.kind == EntryKind::symmetric_weibull ? dist.shape : 2.0;
}

double survival(const EntryDistribution& dist, double t)
{
    validate(dist);
    if (t < 0.0) return 1.0;
    switch (dist.kind) {
    case EntryKind::gaussian: return std::erfc(t / std::numbers::sqrt2);
    case EntryKind::rademacher: return t < 1.0 ? 1.0 : 0.0;
    case EntryKind::uniform: return t < std::numbers::sqrt3 ? 1.0 - t / std::numbers::sqrt3 : 0.0;
    case EntryKind::symmetric_weibull: {
        const double sigma = std::sqrt(std::tgamma(1.0 + 2.0 / dist.shape));
        return std::exp(-std::pow(sigma * t, dist.shape));
    }
    }
    return 0.0;
}

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n, std::uint64_t replicate) noexcept
{
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ n);
    h = mix64(h ^ (replicate * 0xd1b54a32d192ed03ULL));
    return h;
}

EntrySampler::EntrySampler(EntryDistribution dist, std::uint64_t seed)
    : dist_(dist), engine_(mix64(seed))
{
    validate(dist_);
    if (dist_.kind == EntryKind::symmetric_weibull)
        weibull_scale_ = 1.0 / std::sqrt(std::tgamma(1.0 + 2.0 / dist_.shape));
}

double EntrySampler::uniform01()
{
    // 53 high bits mapped to the open interval (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double EntrySampler::gaussian()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double theta = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double EntrySampler::operator()()
{
    switch (dist_.kind) {
    case EntryKind::gaussian: return gaussian();
    case EntryKind::rademacher: return (engine_() >> 63) ? 1.0 : -1.0;
    case EntryKind::uniform: return std::numbers::sqrt3 * (2.0 * uniform01() - 1.0);
    case EntryKind::symmetric_weibull: {
        const double sign = (engine_() >> 63) ? 1.0 : -1.0;
        const double y = std::pow(-std::log(uniform01()), 1.0 / dist_.shape);
        return sign * y * weibull_scale_;
    }
    }
    return 0.0;
}

double WignerSample::unscaled(std::size_t j, std::size_t k) const
{
    return std::sqrt(static_cast<double>(n)) * entries(j, k);
}

WignerSample sample_wigner(std::size_t n, const EntryDistribution& dist, std::uint64_t seed)
{
    if (n == 0) throw DomainError("sample_wigner: n must be positive");
    EntrySampler draw(dist, seed);
    WignerSample out{n, Matrix(n, n), dist, seed};
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            const double w = draw() * scale;
            out.entries(j, k) = w;
            out.entries(k, j) = w;
        }
    }
    return out;
}

double tail_probe(const EntryDistribution& dist, double t, std::size_t draws, std::uint64_t seed)
{
    if (!(t >= 1.0)) throw DomainError("tail_probe: the tail condition is only stated for t >= 1");
    if (draws < 1000) throw DomainError("tail_probe: need at least 1000 draws");
    EntrySampler draw(dist, seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i)
        if (std::abs(draw()) > t) ++hits;
    return static_cast<double>(hits) / static_cast<double>(draws);
}

} // namespace wigner
