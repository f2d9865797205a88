#pragma once

#include "wignerlab/ensemble.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wigner {

/// Sweep configuration shared by the rate, delocalization and event runs.
struct ExperimentConfig {
    std::vector<std::size_t> n_grid;
    std::size_t replicates = 1;
    EntryDistribution dist = EntryDistribution::gaussian();
    double kappa = 0.0;  // 0 selects rate_exponent(dist)
    std::uint64_t base_seed = 0;
    double alpha = 1.0;
    double d = 1.0;
    double C1 = 10.0;
    double C2 = 10.0;
    unsigned workers = 1;
    std::string out_dir = ".";

    double kappa_value() const;
};

/// Throws DomainError unless n_grid is nonempty and strictly ascending with
/// every n >= 16, replicates >= 1, workers >= 1, alpha, d and kappa valid.
void validate(const ExperimentConfig& cfg);

/// JSON keys: n_grid, replicates, dist {kind, kappa}, base_seed, alpha, d,
/// C1, C2, workers, out_dir and optionally kappa. For symmetric-weibull the
/// dist.kappa entry is the shape (default 1). Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view json_text);
std::string config_to_json(const ExperimentConfig& cfg);

/// Result of one (n, replicate) cell.
struct CellResult {
    std::size_t n = 0;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string message;
    double delta_star = 0.0;
    double argmax_x = 0.0;
    double max_comp_sq = 0.0;      // NaN without eigenvectors
    double max_partial_dev = 0.0;  // NaN without eigenvectors
    double wall_ms = 0.0;
};

struct RateRow {
    std::size_t n = 0;
    std::size_t ok = 0;
    std::size_t errors = 0;
    double mean_delta = 0.0;
    double median_delta = 0.0;
    double q90_delta = 0.0;
    double mean_deloc = 0.0;        // mean n max|u_jk|^2, NaN without vectors
    double mean_partial_dev = 0.0;  // mean sqrt(n) max partial deviation, NaN without vectors
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;  // NaN with fewer than three points
    std::size_t points = 0;
    bool defined = false;       // false with fewer than two usable points
};

struct RateResult {
    std::vector<CellResult> cells;  // ordered by (n, rep)
    std::vector<RateRow> per_n;
    LogLogFit fit;
};

/// Unweighted least squares of log y on log x.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Linear-interpolation quantile (type 7) of unsorted data; NaN if empty.
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);
double mean(std::span<const double> values);

/// Runs every (n, rep) cell on `cfg.workers` threads. Each cell samples with
/// derive_seed(base_seed, n, rep), computes the eigenvalues (and vectors if
/// requested) and the Kolmogorov distance. A throwing cell becomes an error
/// row. Output is ordered by (n, rep) whatever the scheduling.
std::vector<CellResult> run_cells(const ExperimentConfig& cfg, bool with_vectors);

RateResult summarize(std::vector<CellResult> cells);

RateResult run_rate_experiment(const ExperimentConfig& cfg);

struct DelocRow {
    std::size_t n = 0;
    std::size_t ok = 0;
    std::size_t errors = 0;
    double beta_sq = 0.0;  // beta_n^2
    double median_comp = 0.0, mean_comp = 0.0, q90_comp = 0.0;  // n max|u_jk|^2
    double median_partial = 0.0, mean_partial = 0.0, q90_partial = 0.0;  // sqrt(n) max_partial_dev
    double exceed_comp = 0.0;     // fraction with n max|u_jk|^2 > beta_n^2
    double exceed_partial = 0.0;  // fraction with sqrt(n) max_partial_dev > beta_n^2
};

struct DelocResult {
    std::vector<CellResult> cells;
    std::vector<DelocRow> per_n;
};

DelocResult summarize_deloc(std::vector<CellResult> cells, double alpha, double kappa);
DelocResult run_deloc_experiment(const ExperimentConfig& cfg);

/// Large-deviation events for the epsilon terms at z = u + iv, per (rep, j):
///   eps1     |eps_j1| >= 2 l^{1/kappa} / sqrt(n)
///   eps2     |eps_j2| >  3 l^{2/kappa + 1/2} n^{-1/2} ((1/n) sum_l |R^{(j)}_ll|^2)^{1/2}
///   eps2_im  |eps_j2| >  3 l^{2/kappa + 1/2} (n v)^{-1/2} (Im m^{(j)})^{1/2}
///   eps3     |eps_j3| >  beta_n^2 n^{-1/2} ((1/n) sum_{k != l} |R^{(j)}_kl|^2)^{1/2}
///   eps3_im  |eps_j3| >  4 beta_n^2 (n v)^{-1/2} (Im m^{(j)})^{1/2}
///   eps4     |eps_j4| >  1 / (n v), with 64 ulp of slack
///   eps      |eps_j|  >  beta_n^2 n^{-1/2} (1 + (Im m_n / v)^{1/2} + 1 / (v sqrt(n v)))
/// m^{(j)} = Tr R^{(j)} / (n - 1).
inline constexpr std::string_view kEventNames[] = {"eps1", "eps2", "eps2_im", "eps3", "eps3_im", "eps4", "eps"};

struct EventCounts {
    std::size_t n = 0;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string message;
    // counts[z index][event index]
    std::vector<std::vector<std::size_t>> counts;
};

struct EventRow {
    std::size_t n = 0;
    std::complex<double> z;
    std::string event;
    std::size_t count = 0;
    std::size_t total = 0;  // (rep, j) pairs over successful replicates
    double frequency = 0.0;
    double envelope = 0.0;  // exp(-l_{n,alpha})
    bool below_v0 = false;  // Im z < v0 = d beta_n^4 / n
};

struct EventResult {
    std::vector<EventCounts> cells;  // ordered by (n, rep)
    std::vector<EventRow> rows;      // ordered by (n, z, event)
};

/// Requires a nonempty z grid with Im z > 0. Points below v0 are computed
/// and flagged.
EventResult run_event_frequencies(const ExperimentConfig& cfg, std::span<const std::complex<double>> z_grid);

struct GnCheckRow {
    std::size_t n = 0;
    double u = 0.0;
    double v = 0.0;
    double max_abs_gn = 0.0;  // over replicates
    double bound = 0.0;       // C beta_n^4 / (n v)
};

/// max over replicates of |m_n - s| at every (n, u + iv).
std::vector<GnCheckRow> run_gn_check(const ExperimentConfig& cfg, std::span<const double> u_grid,
                                     std::span<const double> v_grid, double constant);

// Persistence. Every writer creates cfg.out_dir if needed and writes a
// meta.json with the config, the RNG id, the version and a timestamp.
// raw.csv is a pure function of the config; timing goes to timing.csv.

std::string raw_csv(std::span<const CellResult> cells);
std::string timing_csv(std::span<const CellResult> cells);
std::string rate_summary_csv(std::span<const RateRow> rows);
std::string fit_json(const LogLogFit& fit);
std::string deloc_summary_csv(std::span<const DelocRow> rows);
std::string events_raw_csv(const EventResult& result, std::span<const std::complex<double>> z_grid);
std::string events_csv(std::span<const EventRow> rows);
std::string meta_json(const ExperimentConfig& cfg, std::string_view kind);

/// Parses raw.csv back into cells (timing is left at zero).
std::vector<CellResult> parse_raw_csv(std::string_view text);

void write_rate_outputs(const ExperimentConfig& cfg, const RateResult& result);
void write_deloc_outputs(const ExperimentConfig& cfg, const DelocResult& result);
void write_event_outputs(const ExperimentConfig& cfg, const EventResult& result,
                         std::span<const std::complex<double>> z_grid);

} // namespace wigner
