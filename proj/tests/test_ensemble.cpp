#include "wignerlab/ensemble.hpp"
#include "wignerlab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

using namespace wigner;

namespace {

const EntryDistribution kAll[] = {EntryDistribution::gaussian(), EntryDistribution::rademacher(),
                                  EntryDistribution::uniform(), EntryDistribution::weibull(1.0),
                                  EntryDistribution::weibull(0.5), EntryDistribution::weibull(3.0)};

struct Moments {
    double mean = 0.0, var = 0.0;
};

Moments moments(const EntryDistribution& d, std::size_t draws, std::uint64_t seed)
{
    EntrySampler s(d, seed);
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const double x = s();
        sum += x;
        sq += x * x;
    }
    const double m = sum / draws;
    return {m, sq / draws - m * m};
}

double mc_se(double p, std::size_t draws) { return std::sqrt(std::max(p * (1 - p), 1e-12) / draws); }

} // namespace

TEST_CASE("rademacher 2x2 sample")
{
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const auto s = sample_wigner(2, EntryDistribution::rademacher(), seed);
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                CHECK(std::abs(std::abs(s.entries(j, k)) - 1.0 / std::numbers::sqrt2) < 1e-16);
                CHECK(s.entries(j, k) == s.entries(k, j));
            }
    }
}

TEST_CASE("mean zero and unit variance for every law")
{
    for (const auto& d : kAll) {
        CAPTURE(to_string(d.kind));
        CAPTURE(d.shape);
        const auto m = moments(d, 100000, 7);
        CHECK(std::abs(m.mean) <= 0.02);
        CHECK(std::abs(m.var - 1.0) <= 0.02 * (d.shape < 1.0 ? 3.0 : 1.0));
    }
    const auto w = moments(EntryDistribution::weibull(1.0), 1000000, 11);
    CHECK(w.var >= 0.98);
    CHECK(w.var <= 1.02);
}

TEST_CASE("entries of a sample have the declared law")
{
    const auto s = sample_wigner(400, EntryDistribution::gaussian(), 5);
    double sum = 0.0, sq = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < s.n; ++j)
        for (std::size_t k = j; k < s.n; ++k) {
            const double x = s.unscaled(j, k);
            sum += x;
            sq += x * x;
            ++count;
        }
    CHECK(std::abs(sum / count) < 0.02);
    CHECK(std::abs(sq / count - 1.0) < 0.02);
}

TEST_CASE("determinism and seed sensitivity")
{
    for (const auto& d : kAll) {
        const auto a = sample_wigner(24, d, 123);
        const auto b = sample_wigner(24, d, 123);
        CHECK(a.entries == b.entries);
        for (std::size_t j = 0; j < 24; ++j)
            for (std::size_t k = 0; k < 24; ++k) REQUIRE(a.entries(j, k) == a.entries(k, j));
    }
    int differing = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto a = sample_wigner(8, EntryDistribution::rademacher(), 2 * s);
        const auto b = sample_wigner(8, EntryDistribution::rademacher(), 2 * s + 1);
        differing += a.entries == b.entries ? 0 : 1;
    }
    CHECK(differing == 100);
}

TEST_CASE("golden draws pin the sampling algorithm")
{
    // Gaussian pair reproduced by an independent Python mt19937_64 + Box-Muller;
    // the other laws are frozen from the first implementation.
    EntrySampler g(EntryDistribution::gaussian(), 42);
    CHECK(std::abs(g() - 1.9474165742871408) <= 1e-14);
    CHECK(std::abs(g() + 0.38011255818728285) <= 1e-14);
    CHECK(std::abs(g() - 0.0020340498901774908) <= 1e-14);

    EntrySampler r(EntryDistribution::rademacher(), 42);
    CHECK(r() == -1.0);
    CHECK(r() == 1.0);

    EntrySampler u(EntryDistribution::uniform(), 42);
    CHECK(std::abs(u() + 1.2482127937400711) <= 1e-14);

    EntrySampler w(EntryDistribution::weibull(0.5), 42);
    CHECK(std::abs(w() + 0.00019819200595107579) <= 1e-16);
    CHECK(std::abs(w() - 0.39528097910120025) <= 1e-14);

    CHECK(mix64(0) == 16294208416658607535ULL);  // reference splitmix64
    CHECK(derive_seed(7, 64, 3) == 8853039827245448879ULL);
    CHECK(kRngId == "mt19937_64/splitmix64-seed/box-muller-v1");
}

TEST_CASE("derived seeds")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t n : {16, 32, 64})
        for (std::uint64_t r = 0; r < 50; ++r) seen.insert(derive_seed(7, n, r));
    CHECK(seen.size() == 150);
    CHECK(derive_seed(7, 64, 3) == derive_seed(7, 64, 3));
    CHECK(derive_seed(7, 64, 3) != derive_seed(8, 64, 3));
}

TEST_CASE("tail probes against closed forms")
{
    // erfc(3 / sqrt 2), mpmath
    const double pg = tail_probe(EntryDistribution::gaussian(), 3.0, 1000000);
    CHECK(std::abs(pg - 0.0026997960632601891) <= 3 * mc_se(0.0027, 1000000));
    CHECK(std::abs(survival(EntryDistribution::gaussian(), 3.0) - 0.0026997960632601891) < 1e-15);

    CHECK(tail_probe(EntryDistribution::rademacher(), 1.5, 10000) == 0.0);

    // weibull(1): sigma = sqrt(Gamma(3)) = sqrt 2, P(|X| > 2) = exp(-2 sqrt 2)
    const double pw = tail_probe(EntryDistribution::weibull(1.0), 2.0, 1000000);
    CHECK(std::abs(pw - 0.059105746561956238) <= 3 * mc_se(0.0591, 1000000));
    CHECK(std::abs(survival(EntryDistribution::weibull(1.0), 2.0) - 0.059105746561956238) < 1e-15);
}

TEST_CASE("sub-exponential envelope holds for the declared exponent")
{
    for (const auto& d : kAll) {
        CAPTURE(to_string(d.kind));
        CAPTURE(d.shape);
        const double k = envelope_exponent(d);
        for (double t = 1.0; t <= 12.0; t += 0.01)
            CHECK(survival(d, t) <= std::exp(-std::pow(t, k)) / k * (1 + 1e-12));
        for (double t : {1.0, 1.5, 2.0, 3.0}) {
            const std::size_t draws = 200000;
            const double p = tail_probe(d, t, draws, 3);
            CHECK(p <= std::exp(-std::pow(t, k)) / k + 3 * mc_se(p, draws));
        }
    }
    // kappa = 2 is too strong for the gaussian at t = 1
    CHECK(survival(EntryDistribution::gaussian(), 1.0) > 0.5 * std::exp(-1.0));
    CHECK(rate_exponent(EntryDistribution::gaussian()) == 2.0);
    CHECK(rate_exponent(EntryDistribution::weibull(0.7)) == 0.7);
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(sample_wigner(0, EntryDistribution::gaussian(), 1), DomainError);
    CHECK_THROWS_AS(tail_probe(EntryDistribution::gaussian(), 0.5, 10000), DomainError);
    CHECK_THROWS_AS(tail_probe(EntryDistribution::gaussian(), 2.0, 999), DomainError);
    CHECK_THROWS_AS(validate(EntryDistribution::weibull(0.0)), DomainError);
    CHECK_THROWS_AS(parse_entry_kind("cauchy"), DomainError);
    CHECK(parse_entry_kind("weibull") == EntryKind::symmetric_weibull);
    CHECK(parse_entry_kind(to_string(EntryKind::symmetric_weibull)) == EntryKind::symmetric_weibull);
}
