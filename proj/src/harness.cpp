#include "wignerlab/harness.hpp"

#include "wignerlab/eigensolve.hpp"
#include "wignerlab/errors.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/resolvent.hpp"
#include "wignerlab/semicircle.hpp"
#include "wignerlab/spectral_stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace wigner {

using json = nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs f(i) for i in [0, count) on up to `workers` threads. f must not throw.
template <class F>
void for_each_index(std::size_t count, unsigned workers, const F& f)
{
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
    };
    const std::size_t threads = std::min<std::size_t>(workers, count);
    if (threads <= 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
}

struct Cell {
    std::size_t n;
    std::size_t rep;
};

std::vector<Cell> cells_of(const ExperimentConfig& cfg)
{
    std::vector<Cell> out;
    for (std::size_t n : cfg.n_grid)
        for (std::size_t r = 0; r < cfg.replicates; ++r) out.push_back({n, r});
    return out;
}

std::string num(double x) { return io::format_double(x); }

std::string timestamp_utc()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

// ---------------------------------------------------------------------------
// Configuration

double ExperimentConfig::kappa_value() const
{
    return kappa > 0.0 ? kappa : rate_exponent(dist);
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.n_grid.empty()) throw DomainError("config: n_grid must not be empty");
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        if (cfg.n_grid[i] < 16) throw DomainError("config: every n must be at least 16");
        if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw DomainError("config: n_grid must be strictly ascending");
    }
    if (cfg.replicates < 1) throw DomainError("config: replicates must be at least 1");
    if (cfg.workers < 1) throw DomainError("config: workers must be at least 1");
    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw DomainError("config: alpha must be positive");
    if (!(cfg.d >= 1.0) || !std::isfinite(cfg.d)) throw DomainError("config: d must be at least 1");
    if (!(cfg.C1 >= 0.0) || !(cfg.C2 >= 0.0)) throw DomainError("config: C1 and C2 must be non-negative");
    if (cfg.kappa < 0.0 || !std::isfinite(cfg.kappa)) throw DomainError("config: kappa must be positive");
    validate(cfg.dist);
}

ExperimentConfig parse_config(std::string_view json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config: top level must be an object");
    static const std::vector<std::string> known = {"n_grid", "replicates", "dist", "kappa", "base_seed", "alpha",
                                                   "d", "C1", "C2", "workers", "out_dir"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw DomainError("config: unknown key '" + key + "'");

    ExperimentConfig cfg;
    try {
        if (!j.contains("n_grid")) throw DomainError("config: n_grid is required");
        cfg.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
        if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::size_t>();
        if (j.contains("dist")) {
            const auto& dj = j.at("dist");
            if (dj.is_string()) {
                cfg.dist.kind = parse_entry_kind(dj.get<std::string>());
            } else {
                cfg.dist.kind = parse_entry_kind(dj.at("kind").get<std::string>());
                if (dj.contains("kappa")) {
                    const double k = dj.at("kappa").get<double>();
                    if (cfg.dist.kind == EntryKind::symmetric_weibull) cfg.dist.shape = k;
                    else cfg.kappa = k;
                }
            }
        }
        if (j.contains("kappa")) cfg.kappa = j.at("kappa").get<double>();
        if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
        if (j.contains("d")) cfg.d = j.at("d").get<double>();
        if (j.contains("C1")) cfg.C1 = j.at("C1").get<double>();
        if (j.contains("C2")) cfg.C2 = j.at("C2").get<double>();
        if (j.contains("workers")) cfg.workers = j.at("workers").get<unsigned>();
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg)
{
    json dj = {{"kind", to_string(cfg.dist.kind)}};
    dj["kappa"] = cfg.dist.kind == EntryKind::symmetric_weibull ? cfg.dist.shape : cfg.kappa_value();
    json j = {{"n_grid", cfg.n_grid}, {"replicates", cfg.replicates}, {"dist", dj},
              {"kappa", cfg.kappa_value()}, {"base_seed", cfg.base_seed}, {"alpha", cfg.alpha},
              {"d", cfg.d}, {"C1", cfg.C1}, {"C2", cfg.C2}, {"workers", cfg.workers},
              {"out_dir", cfg.out_dir}};
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Statistics

double mean(std::span<const double> values)
{
    if (values.empty()) return kNaN;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double quantile(std::vector<double> values, double p)
{
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values)
{
    return quantile(std::move(values), 0.5);
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw DomainError("fit_loglog: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    LogLogFit fit;
    fit.points = lx.size();
    if (fit.points < 2) {
        fit.slope = fit.intercept = fit.slope_stderr = kNaN;
        return fit;
    }
    const double mx = mean(lx), my = mean(ly);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.defined = true;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (fit.points < 3) {
        fit.slope_stderr = kNaN;
        return fit;
    }
    double ssr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(fit.points - 2) / sxx);
    return fit;
}

// ---------------------------------------------------------------------------
// Rate and delocalization sweeps

std::vector<CellResult> run_cells(const ExperimentConfig& cfg, bool with_vectors)
{
    validate(cfg);
    const auto cells = cells_of(cfg);
    std::vector<CellResult> out(cells.size());
    for_each_index(cells.size(), cfg.workers, [&](std::size_t i) {
        CellResult& c = out[i];
        c.n = cells[i].n;
        c.rep = cells[i].rep;
        c.seed = derive_seed(cfg.base_seed, c.n, c.rep);
        c.max_comp_sq = c.max_partial_dev = kNaN;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto sample = sample_wigner(c.n, cfg.dist, c.seed);
            const auto dec = eigh(sample.entries, with_vectors);
            const auto k = kolmogorov_distance(dec.eigenvalues);
            c.delta_star = k.delta_star;
            c.argmax_x = k.argmax_x;
            if (with_vectors) {
                const auto deloc = deloc_stats(dec);
                c.max_comp_sq = deloc.max_component_sq;
                c.max_partial_dev = deloc.max_partial_dev;
            }
        } catch (const std::exception& e) {
            c.ok = false;
            c.message = e.what();
            c.delta_star = c.argmax_x = kNaN;
        }
        c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    return out;
}

namespace {

// Splits ordered cells into consecutive runs with equal n.
template <class F>
void for_each_n(std::span<const CellResult> cells, const F& f)
{
    std::size_t i = 0;
    while (i < cells.size()) {
        std::size_t k = i;
        while (k < cells.size() && cells[k].n == cells[i].n) ++k;
        f(cells.subspan(i, k - i));
        i = k;
    }
}

} // namespace

RateResult summarize(std::vector<CellResult> cells)
{
    RateResult r;
    r.cells = std::move(cells);
    for_each_n(r.cells, [&](std::span<const CellResult> group) {
        RateRow row;
        row.n = group.front().n;
        const double dn = static_cast<double>(row.n);
        std::vector<double> deltas, deloc, partial;
        for (const auto& c : group) {
            if (!c.ok) {
                ++row.errors;
                continue;
            }
            ++row.ok;
            deltas.push_back(c.delta_star);
            if (!std::isnan(c.max_comp_sq)) deloc.push_back(dn * c.max_comp_sq);
            if (!std::isnan(c.max_partial_dev)) partial.push_back(std::sqrt(dn) * c.max_partial_dev);
        }
        row.mean_delta = mean(deltas);
        row.median_delta = median(deltas);
        row.q90_delta = quantile(deltas, 0.9);
        row.mean_deloc = mean(deloc);
        row.mean_partial_dev = mean(partial);
        r.per_n.push_back(row);
    });
    std::vector<double> ns, means;
    for (const auto& row : r.per_n) {
        ns.push_back(static_cast<double>(row.n));
        means.push_back(row.mean_delta);
    }
    r.fit = fit_loglog(ns, means);
    return r;
}

RateResult run_rate_experiment(const ExperimentConfig& cfg)
{
    return summarize(run_cells(cfg, false));
}

DelocResult summarize_deloc(std::vector<CellResult> cells, double alpha, double kappa)
{
    DelocResult r;
    r.cells = std::move(cells);
    for_each_n(r.cells, [&](std::span<const CellResult> group) {
        DelocRow row;
        row.n = group.front().n;
        const double dn = static_cast<double>(row.n);
        const double beta = beta_scale(dn, alpha, kappa);
        row.beta_sq = beta * beta;
        std::vector<double> comp, partial;
        std::size_t exceed_c = 0, exceed_p = 0;
        for (const auto& c : group) {
            if (!c.ok || std::isnan(c.max_comp_sq)) {
                ++row.errors;
                continue;
            }
            ++row.ok;
            comp.push_back(dn * c.max_comp_sq);
            partial.push_back(std::sqrt(dn) * c.max_partial_dev);
            if (comp.back() > row.beta_sq) ++exceed_c;
            if (partial.back() > row.beta_sq) ++exceed_p;
        }
        row.median_comp = median(comp);
        row.mean_comp = mean(comp);
        row.q90_comp = quantile(comp, 0.9);
        row.median_partial = median(partial);
        row.mean_partial = mean(partial);
        row.q90_partial = quantile(partial, 0.9);
        const double ok = static_cast<double>(row.ok);
        row.exceed_comp = row.ok ? static_cast<double>(exceed_c) / ok : kNaN;
        row.exceed_partial = row.ok ? static_cast<double>(exceed_p) / ok : kNaN;
        r.per_n.push_back(row);
    });
    return r;
}

DelocResult run_deloc_experiment(const ExperimentConfig& cfg)
{
    return summarize_deloc(run_cells(cfg, true), cfg.alpha, cfg.kappa_value());
}

// ---------------------------------------------------------------------------
// Event frequencies

EventResult run_event_frequencies(const ExperimentConfig& cfg, std::span<const std::complex<double>> z_grid)
{
    validate(cfg);
    if (z_grid.empty()) throw DomainError("events: z grid must not be empty");
    for (auto z : z_grid)
        if (!(z.imag() > 0.0)) throw DomainError("events: every z needs Im z > 0");

    constexpr std::size_t n_events = std::size(kEventNames);
    const double kappa = cfg.kappa_value();
    const auto cells = cells_of(cfg);
    EventResult result;
    result.cells.resize(cells.size());

    for_each_index(cells.size(), cfg.workers, [&](std::size_t i) {
        EventCounts& c = result.cells[i];
        c.n = cells[i].n;
        c.rep = cells[i].rep;
        c.seed = derive_seed(cfg.base_seed, c.n, c.rep);
        c.counts.assign(z_grid.size(), std::vector<std::size_t>(n_events, 0));
        try {
            const double dn = static_cast<double>(c.n);
            const double l = log_scale(dn, cfg.alpha);
            const double beta = beta_scale(dn, cfg.alpha, kappa);
            const double b2 = beta * beta;
            const double sn = std::sqrt(dn);
            const auto sample = sample_wigner(c.n, cfg.dist, c.seed);
            const ResolventAnalysis analysis(sample.entries, MinorRoute::downdate);
            for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
                const auto z = z_grid[zi];
                const double v = z.imag();
                const double im_m = analysis.m_n(z).imag();
                const auto eps = analysis.epsilon_all(z);
                auto& cnt = c.counts[zi];
                for (const auto& e : eps) {
                    const double im_mj = std::max(0.0, e.m_minor.imag());
                    const bool hit[n_events] = {
                        std::abs(e.eps1) >= 2.0 * std::pow(l, 1.0 / kappa) / sn,
                        std::abs(e.eps2) > 3.0 * std::pow(l, 2.0 / kappa + 0.5) / sn * std::sqrt(e.minor_diag_sq),
                        std::abs(e.eps2) > 3.0 * std::pow(l, 2.0 / kappa + 0.5) * std::sqrt(im_mj / (dn * v)),
                        std::abs(e.eps3) > b2 / sn * std::sqrt(e.minor_offdiag_sq),
                        std::abs(e.eps3) > 4.0 * b2 * std::sqrt(im_mj / (dn * v)),
                        std::abs(e.eps4) > 1.0 / (dn * v) * (1.0 + 64.0 * std::numeric_limits<double>::epsilon()),
                        std::abs(e.eps_total) > b2 / sn * (1.0 + std::sqrt(im_m / v) + 1.0 / (v * std::sqrt(dn * v))),
                    };
                    for (std::size_t k = 0; k < n_events; ++k) cnt[k] += hit[k] ? 1 : 0;
                }
            }
        } catch (const std::exception& e) {
            c.ok = false;
            c.message = e.what();
            for (auto& row : c.counts) std::fill(row.begin(), row.end(), 0);
        }
    });

    std::size_t start = 0;
    while (start < result.cells.size()) {
        std::size_t stop = start;
        const std::size_t n = result.cells[start].n;
        while (stop < result.cells.size() && result.cells[stop].n == n) ++stop;
        const double dn = static_cast<double>(n);
        const double envelope = std::exp(-log_scale(dn, cfg.alpha));
        const double v0 = critical_height(dn, cfg.d, cfg.alpha, kappa);
        for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
            for (std::size_t k = 0; k < n_events; ++k) {
                EventRow row;
                row.n = n;
                row.z = z_grid[zi];
                row.event = std::string(kEventNames[k]);
                for (std::size_t i = start; i < stop; ++i) {
                    if (!result.cells[i].ok) continue;
                    row.count += result.cells[i].counts[zi][k];
                    row.total += n;
                }
                row.frequency = row.total ? static_cast<double>(row.count) / static_cast<double>(row.total) : kNaN;
                row.envelope = envelope;
                row.below_v0 = row.z.imag() < v0;
                result.rows.push_back(row);
            }
        }
        start = stop;
    }
    return result;
}

std::vector<GnCheckRow> run_gn_check(const ExperimentConfig& cfg, std::span<const double> u_grid,
                                     std::span<const double> v_grid, double constant)
{
    validate(cfg);
    const auto cells = cells_of(cfg);
    const std::size_t per_cell = u_grid.size() * v_grid.size();
    std::vector<std::vector<double>> gaps(cells.size());
    for_each_index(cells.size(), cfg.workers, [&](std::size_t i) {
        auto& g = gaps[i];
        g.assign(per_cell, kNaN);
        try {
            const auto sample = sample_wigner(cells[i].n, cfg.dist, derive_seed(cfg.base_seed, cells[i].n, cells[i].rep));
            const auto eigs = eigvalsh(sample.entries);
            std::size_t k = 0;
            for (double u : u_grid)
                for (double v : v_grid) {
                    const std::complex<double> z(u, v);
                    g[k++] = std::abs(stieltjes_empirical(eigs, z) - semicircle::stieltjes(z));
                }
        } catch (const std::exception&) {
            // left as NaN; the row maximum then reports NaN
        }
    });

    std::vector<GnCheckRow> rows;
    for (std::size_t n : cfg.n_grid) {
        const double dn = static_cast<double>(n);
        const double b = beta_scale(dn, cfg.alpha, cfg.kappa_value());
        std::size_t k = 0;
        for (double u : u_grid)
            for (double v : v_grid) {
                GnCheckRow row{n, u, v, 0.0, constant * b * b * b * b / (dn * v)};
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    if (cells[i].n != n) continue;
                    const double g = gaps[i][k];
                    row.max_abs_gn = std::isnan(g) || std::isnan(row.max_abs_gn) ? kNaN : std::max(row.max_abs_gn, g);
                }
                rows.push_back(row);
                ++k;
            }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Persistence

std::string raw_csv(std::span<const CellResult> cells)
{
    std::ostringstream os;
    os << "n,rep,seed,status,message,delta_star,argmax_x,max_comp_sq,max_partial_dev\n";
    for (const auto& c : cells) {
        os << c.n << ',' << c.rep << ',' << c.seed << ',' << (c.ok ? "ok" : "error") << ','
           << io::sanitize_field(c.message) << ',' << num(c.delta_star) << ',' << num(c.argmax_x) << ','
           << num(c.max_comp_sq) << ',' << num(c.max_partial_dev) << '\n';
    }
    return os.str();
}

std::vector<CellResult> parse_raw_csv(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line)) throw DomainError("raw.csv: missing header");
    std::vector<CellResult> out;
    auto to_double = [](const std::string& f) {
        if (f == "nan") return kNaN;
        return io::parse_double(f);
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = io::split_csv_line(line);
        if (f.size() != 9) throw DomainError("raw.csv: expected 9 fields");
        CellResult c;
        c.n = std::stoull(f[0]);
        c.rep = std::stoull(f[1]);
        c.seed = std::stoull(f[2]);
        c.ok = f[3] == "ok";
        c.message = f[4];
        c.delta_star = to_double(f[5]);
        c.argmax_x = to_double(f[6]);
        c.max_comp_sq = to_double(f[7]);
        c.max_partial_dev = to_double(f[8]);
        out.push_back(c);
    }
    return out;
}

std::string timing_csv(std::span<const CellResult> cells)
{
    std::ostringstream os;
    os << "n,rep,wall_ms\n";
    for (const auto& c : cells) os << c.n << ',' << c.rep << ',' << num(c.wall_ms) << '\n';
    return os.str();
}

std::string rate_summary_csv(std::span<const RateRow> rows)
{
    std::ostringstream os;
    os << "n,ok,errors,mean_delta,median_delta,q90_delta,mean_deloc,mean_partial_dev\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.ok << ',' << r.errors << ',' << num(r.mean_delta) << ',' << num(r.median_delta) << ','
           << num(r.q90_delta) << ',' << num(r.mean_deloc) << ',' << num(r.mean_partial_dev) << '\n';
    return os.str();
}

std::string fit_json(const LogLogFit& fit)
{
    json j = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"slope_stderr", fit.slope_stderr},
              {"points", fit.points}, {"defined", fit.defined}};
    return j.dump(2) + "\n";
}

std::string deloc_summary_csv(std::span<const DelocRow> rows)
{
    std::ostringstream os;
    os << "n,ok,errors,beta_sq,median_comp,mean_comp,q90_comp,median_partial,mean_partial,q90_partial,"
          "exceed_comp,exceed_partial\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.ok << ',' << r.errors << ',' << num(r.beta_sq) << ',' << num(r.median_comp) << ','
           << num(r.mean_comp) << ',' << num(r.q90_comp) << ',' << num(r.median_partial) << ','
           << num(r.mean_partial) << ',' << num(r.q90_partial) << ',' << num(r.exceed_comp) << ','
           << num(r.exceed_partial) << '\n';
    return os.str();
}

std::string events_raw_csv(const EventResult& result, std::span<const std::complex<double>> z_grid)
{
    std::ostringstream os;
    os << "n,rep,seed,status,message,z_re,z_im,event,count,total\n";
    for (const auto& c : result.cells)
        for (std::size_t zi = 0; zi < z_grid.size(); ++zi)
            for (std::size_t k = 0; k < std::size(kEventNames); ++k)
                os << c.n << ',' << c.rep << ',' << c.seed << ',' << (c.ok ? "ok" : "error") << ','
                   << io::sanitize_field(c.message) << ',' << num(z_grid[zi].real()) << ','
                   << num(z_grid[zi].imag()) << ',' << kEventNames[k] << ',' << c.counts[zi][k] << ','
                   << (c.ok ? c.n : 0) << '\n';
    return os.str();
}

std::string events_csv(std::span<const EventRow> rows)
{
    std::ostringstream os;
    os << "n,z_re,z_im,event,count,total,frequency,envelope,below_v0\n";
    for (const auto& r : rows)
        os << r.n << ',' << num(r.z.real()) << ',' << num(r.z.imag()) << ',' << r.event << ',' << r.count << ','
           << r.total << ',' << num(r.frequency) << ',' << num(r.envelope) << ',' << (r.below_v0 ? 1 : 0) << '\n';
    return os.str();
}

std::string meta_json(const ExperimentConfig& cfg, std::string_view kind)
{
    json j = {{"kind", kind}, {"config", json::parse(config_to_json(cfg))}, {"rng", kRngId},
              {"version", WIGNERLAB_VERSION}, {"created", timestamp_utc()}};
    return j.dump(2) + "\n";
}

namespace {

std::filesystem::path prepare_dir(const ExperimentConfig& cfg)
{
    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DomainError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
    return dir;
}

} // namespace

void write_rate_outputs(const ExperimentConfig& cfg, const RateResult& result)
{
    const auto dir = prepare_dir(cfg);
    io::write_text_file(dir / "raw.csv", raw_csv(result.cells));
    io::write_text_file(dir / "timing.csv", timing_csv(result.cells));
    io::write_text_file(dir / "summary.csv", rate_summary_csv(result.per_n));
    io::write_text_file(dir / "fit.json", fit_json(result.fit));
    io::write_text_file(dir / "meta.json", meta_json(cfg, "rate"));
}

void write_deloc_outputs(const ExperimentConfig& cfg, const DelocResult& result)
{
    const auto dir = prepare_dir(cfg);
    io::write_text_file(dir / "raw.csv", raw_csv(result.cells));
    io::write_text_file(dir / "timing.csv", timing_csv(result.cells));
    io::write_text_file(dir / "summary.csv", deloc_summary_csv(result.per_n));
    io::write_text_file(dir / "meta.json", meta_json(cfg, "deloc"));
}

void write_event_outputs(const ExperimentConfig& cfg, const EventResult& result,
                         std::span<const std::complex<double>> z_grid)
{
    const auto dir = prepare_dir(cfg);
    io::write_text_file(dir / "raw.csv", events_raw_csv(result, z_grid));
    io::write_text_file(dir / "events.csv", events_csv(result.rows));
    io::write_text_file(dir / "meta.json", meta_json(cfg, "events"));
}

} // namespace wigner
