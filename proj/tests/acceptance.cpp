// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "wignerlab/eigensolve.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/harness.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/resolvent.hpp"
#include "wignerlab/semicircle.hpp"
#include "wignerlab/spectral_stats.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace wigner;
namespace fs = std::filesystem;

namespace {

// Criterion 1
constexpr std::size_t kIdentityN = 32;
constexpr int kIdentitySamples = 50;
constexpr double kIdentityTol = 1e-9;
constexpr double kTraceSlack = 1e-12;  // relative rounding slack on |Tr R - Tr R^{(j)}| <= 1/Im z
constexpr double kIdentitySeconds = 30.0;

// Criterion 2
constexpr double kQuadraticTol = 1e-12;
constexpr double kRoundTripTol = 1e-10;
constexpr double kDensityMassTol = 1e-10;
constexpr double kSmoothingMassTol = 1e-12;

// Criteria 3 and 4
const std::vector<std::size_t> kRateGrid = {128, 256, 512, 1024, 2048};
constexpr std::size_t kRateReps = 30;
constexpr std::size_t kRobustReps = 15;
constexpr double kSlopeLo = -1.15;
constexpr double kSlopeHi = -0.80;
constexpr double kRateMinutes = 15.0;

// Criterion 5
const std::vector<std::size_t> kDelocGrid = {256, 512, 1024};
constexpr std::size_t kDelocReps = 30;
const double kDelocGrowth = std::pow(2.0, 0.2) * 1.25;
constexpr double kPartialMedianMax = 5.0;
constexpr double kExceedMax = 0.1;

// Criterion 6
constexpr std::size_t kBoundN = 256;
constexpr std::size_t kBoundReps = 100;
constexpr std::size_t kBoundRequired = 99;

// Criterion 7
constexpr std::size_t kEventN = 256;
constexpr std::size_t kEventReps = 20;
constexpr double kEventMax = 0.05;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Eigen::MatrixXcd dense_resolvent(const Matrix& w, std::complex<double> z)
{
    const auto n = static_cast<Eigen::Index>(w.rows());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = w(i, j);
    a -= z * Eigen::MatrixXcd::Identity(n, n);
    return a.partialPivLu().inverse();
}

Verdict exact_identities()
{
    const auto t0 = std::chrono::steady_clock::now();
    double schur = 0.0, repr = 0.0, delta4 = 0.0, trace_ratio = 0.0, stieltjes = 0.0;
    std::size_t interlace_violations = 0;
    for (int s = 0; s < kIdentitySamples; ++s) {
        const auto dist = s % 2 == 0 ? EntryDistribution::gaussian() : EntryDistribution::rademacher();
        const Matrix w = sample_wigner(kIdentityN, dist, derive_seed(101, kIdentityN, s)).entries;
        const ResolventAnalysis ra(w, MinorRoute::direct);
        const auto& full = ra.spectrum();

        for (std::size_t j = 0; j < kIdentityN; ++j) {
            const auto mu = eigvalsh(minor(w, j));
            for (std::size_t k = 0; k + 1 < kIdentityN; ++k)
                if (!(full.eigenvalues[k] <= mu[k] && mu[k] <= full.eigenvalues[k + 1])) ++interlace_violations;
        }

        for (double u : {-1.0, 0.0, 1.0}) {
            for (double v : {0.5, 1.0, 2.0}) {
                const std::complex<double> z(u, v);
                const auto eps = ra.epsilon_all(z);
                const auto agg = ra.deltas(z, eps);
                const Eigen::MatrixXcd r = dense_resolvent(w, z);
                delta4 = std::max(delta4, agg.delta4_identity_residual);
                const auto trace_r = ra.m_n(z) * static_cast<double>(kIdentityN);
                for (const auto& e : eps) {
                    schur = std::max(schur, e.schur_residual);
                    repr = std::max(repr, e.repr_residual);
                    trace_ratio = std::max(trace_ratio, std::abs(trace_r - e.trace_minor) * v);
                    const EigenvectorMeasure measure(full, e.j);
                    const auto rjj = r(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.j));
                    stieltjes = std::max(stieltjes, std::abs(measure.stieltjes(z) - rjj));
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    Verdict v;
    v.pass = schur <= kIdentityTol && repr <= kIdentityTol && delta4 <= kIdentityTol &&
             trace_ratio <= 1.0 + kTraceSlack && interlace_violations == 0 && stieltjes <= kIdentityTol &&
             secs < kIdentitySeconds;
    v.detail = "schur " + fmt(schur) + ", repr " + fmt(repr) + ", delta4 " + fmt(delta4) + ", max v|TrR-TrR(j)| " +
               fmt(trace_ratio) + ", interlacing violations " + std::to_string(interlace_violations) +
               ", measure vs R_jj " + fmt(stieltjes) + ", " + fmt(secs) + " s";
    return v;
}

Verdict semicircle_suite()
{
    using boost::math::quadrature::gauss_kronrod;
    double quad = 0.0;
    for (int i = 0; i < 50; ++i) {
        for (int k = 0; k < 20; ++k) {
            const double x = -5.0 + 10.0 * i / 49.0;
            const double y = std::pow(10.0, -3.0 + 4.0 * k / 19.0);
            const std::complex<double> z(x, y);
            const auto s = semicircle::stieltjes(z);
            quad = std::max(quad, std::abs(s * s + z * s + 1.0));
        }
    }
    double trip = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        trip = std::max(trip, std::abs(semicircle::cdf(semicircle::quantile(p)) - p));
    }
    const double mass = gauss_kronrod<double, 61>::integrate([](double x) { return semicircle::density(x); },
                                                             -2.0, 2.0, 15, 1e-14);
    const double a = kDefaultSmoothingA;
    const double cauchy = gauss_kronrod<double, 61>::integrate([](double u) { return 1.0 / (1.0 + u * u); }, -a, a,
                                                               15, 1e-15) / std::numbers::pi;
    Verdict v;
    v.pass = quad <= kQuadraticTol && trip <= kRoundTripTol && std::abs(mass - 1.0) <= kDensityMassTol &&
             std::abs(cauchy - 0.75) <= kSmoothingMassTol;
    v.detail = "|s^2+zs+1| " + fmt(quad) + " on 1000 points, round trip " + fmt(trip) + ", |int g - 1| " +
               fmt(std::abs(mass - 1.0)) + ", |mass(a) - 3/4| " + fmt(std::abs(cauchy - 0.75));
    return v;
}

ExperimentConfig rate_config(const EntryDistribution& dist, std::size_t reps, std::uint64_t seed, unsigned workers,
                             const fs::path& dir)
{
    ExperimentConfig cfg;
    cfg.n_grid = kRateGrid;
    cfg.replicates = reps;
    cfg.dist = dist;
    cfg.base_seed = seed;
    cfg.workers = workers;
    cfg.out_dir = dir.string();
    return cfg;
}

std::string slope_text(const RateResult& r)
{
    std::string s = "slope " + fmt(r.fit.slope) + " (se " + fmt(r.fit.slope_stderr) + "), mean delta";
    for (const auto& row : r.per_n) s += " " + std::to_string(row.n) + ":" + fmt(row.mean_delta);
    return s;
}

bool slope_ok(const RateResult& r)
{
    std::size_t errors = 0;
    for (const auto& row : r.per_n) errors += row.errors;
    return errors == 0 && r.fit.defined && r.fit.slope >= kSlopeLo && r.fit.slope <= kSlopeHi;
}

Verdict deloc_checks(const DelocResult& r)
{
    bool ok = r.per_n.size() == kDelocGrid.size();
    std::string d = "median n max|u|^2";
    for (std::size_t i = 0; i < r.per_n.size(); ++i) {
        const auto& row = r.per_n[i];
        d += " " + std::to_string(row.n) + ":" + fmt(row.median_comp);
        ok = ok && row.errors == 0 && row.median_partial <= kPartialMedianMax && row.exceed_comp <= kExceedMax;
        if (i > 0) {
            const double ratio = row.median_comp / r.per_n[i - 1].median_comp;
            ok = ok && ratio >= 1.0 && ratio <= kDelocGrowth;
        }
    }
    d += ", median sqrt(n) partial";
    for (const auto& row : r.per_n) d += " " + fmt(row.median_partial);
    d += ", exceedance of beta^2/n";
    for (const auto& row : r.per_n) d += " " + fmt(row.exceed_comp);
    return {ok, d};
}

Verdict dominance()
{
    const BoundParams p = BoundParams::from_critical_height(kBoundN);
    std::size_t dominated = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    SmoothingBound last;
    for (std::size_t rep = 0; rep < kBoundReps; ++rep) {
        const auto eig = eigvalsh(sample_wigner(kBoundN, EntryDistribution::gaussian(), derive_seed(106, kBoundN, rep)).entries);
        last = smoothing_bound(eig, p, AdmissibilityPolicy::report);
        const double delta = kolmogorov_distance(eig).delta_star;
        if (last.total >= delta) ++dominated;
        min_margin = std::min(min_margin, last.total - delta);
    }
    Verdict v;
    v.pass = dominated >= kBoundRequired;
    v.detail = std::to_string(dominated) + "/" + std::to_string(kBoundReps) + " dominated, v " + fmt(p.v) + ", eps " +
               fmt(p.eps_cut) + ", penalty " + fmt(last.penalty) + ", I_h " + fmt(last.I_horizontal) + ", I_v " +
               fmt(last.I_vertical) + ", min margin " + fmt(min_margin) +
               (last.admissibility.admissible ? "" : "; parameters inadmissible, dominance is carried by the penalty");
    return v;
}

Verdict event_checks(const EventResult& r)
{
    bool ok = true;
    std::string d;
    bool below = false;
    for (const auto& row : r.rows) {
        d += (d.empty() ? "" : ", ") + row.event + " " + std::to_string(row.count) + "/" + std::to_string(row.total);
        below = below || row.below_v0;
        if (row.event == "eps4") ok = ok && row.count == 0;
        if (row.event == "eps1" || row.event == "eps2" || row.event == "eps3")
            ok = ok && row.total > 0 && row.frequency <= kEventMax;
    }
    for (const auto& c : r.cells) ok = ok && c.ok;
    if (below) d += "; z = i lies below v0";
    return {ok, d};
}

bool same_file(const fs::path& a, const fs::path& b)
{
    return fs::exists(a) && fs::exists(b) && io::read_text_file(a.string()) == io::read_text_file(b.string());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance checks"};
    unsigned workers = 4;
    std::string out_dir = "acceptance_out";
    app.add_option("--workers", workers, "Worker threads for the sweeps")->check(CLI::PositiveNumber);
    app.add_option("--out-dir", out_dir, "Directory for sweep outputs");
    CLI11_PARSE(app, argc, argv);
    const fs::path root(out_dir);

    int failures = 0;
    auto report = [&](int id, const std::string& name, const std::function<Verdict()>& check) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << v.detail << std::endl;
    };

    report(1, "exact identities", exact_identities);
    report(2, "semicircle law", semicircle_suite);

    RateResult gaussian;
    ExperimentConfig gaussian_cfg = rate_config(EntryDistribution::gaussian(), kRateReps, 103, workers, root / "rate_gaussian");
    report(3, "rate slope, gaussian", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        gaussian = run_rate_experiment(gaussian_cfg);
        const double minutes = seconds_since(t0) / 60.0;
        write_rate_outputs(gaussian_cfg, gaussian);
        return Verdict{slope_ok(gaussian) && minutes <= kRateMinutes,
                       slope_text(gaussian) + ", " + fmt(minutes) + " min"};
    });

    ExperimentConfig rade_cfg = rate_config(EntryDistribution::rademacher(), kRobustReps, 104, workers, root / "rate_rademacher");
    ExperimentConfig weib_cfg = rate_config(EntryDistribution::weibull(1.0), kRobustReps, 105, workers, root / "rate_weibull1");
    report(4, "rate slope, rademacher and weibull(1)", [&] {
        const auto r = run_rate_experiment(rade_cfg);
        const auto w = run_rate_experiment(weib_cfg);
        write_rate_outputs(rade_cfg, r);
        write_rate_outputs(weib_cfg, w);
        return Verdict{slope_ok(r) && slope_ok(w), "rademacher " + slope_text(r) + "; weibull(1) " + slope_text(w)};
    });

    ExperimentConfig deloc_cfg;
    deloc_cfg.n_grid = kDelocGrid;
    deloc_cfg.replicates = kDelocReps;
    deloc_cfg.base_seed = 107;
    deloc_cfg.workers = workers;
    deloc_cfg.out_dir = (root / "deloc").string();
    report(5, "delocalization", [&] {
        const auto r = run_deloc_experiment(deloc_cfg);
        write_deloc_outputs(deloc_cfg, r);
        return deloc_checks(r);
    });

    report(6, "smoothing-bound dominance", dominance);

    ExperimentConfig event_cfg;
    event_cfg.n_grid = {kEventN};
    event_cfg.replicates = kEventReps;
    event_cfg.base_seed = 108;
    event_cfg.workers = workers;
    event_cfg.out_dir = (root / "events").string();
    const std::vector<std::complex<double>> event_z = {{0.0, 1.0}};
    report(7, "event frequencies", [&] {
        const auto r = run_event_frequencies(event_cfg, event_z);
        write_event_outputs(event_cfg, r, event_z);
        return event_checks(r);
    });

    report(8, "determinism across worker counts", [&] {
        std::string d;
        bool ok = true;
        auto rerun = [&](ExperimentConfig cfg, const std::string& label, const auto& runner) {
            const fs::path original = fs::path(cfg.out_dir) / "raw.csv";
            cfg.workers = workers == 1 ? 3 : 1;
            cfg.out_dir = (root / (label + "_rerun")).string();
            runner(cfg);
            const bool same = same_file(original, fs::path(cfg.out_dir) / "raw.csv");
            ok = ok && same;
            d += (d.empty() ? "" : ", ") + label + (same ? " identical" : " differs") + " (workers " +
                 std::to_string(workers) + " vs " + std::to_string(cfg.workers) + ")";
        };
        rerun(gaussian_cfg, "rate_gaussian", [](const ExperimentConfig& c) { write_rate_outputs(c, run_rate_experiment(c)); });
        rerun(deloc_cfg, "deloc", [](const ExperimentConfig& c) { write_deloc_outputs(c, run_deloc_experiment(c)); });
        rerun(event_cfg, "events", [&](const ExperimentConfig& c) {
            write_event_outputs(c, run_event_frequencies(c, event_z), event_z);
        });
        return Verdict{ok, d};
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
