#include "wignerlab/cli.hpp"

#include "wignerlab/eigensolve.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/errors.hpp"
#include "wignerlab/harness.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/resolvent.hpp"
#include "wignerlab/semicircle.hpp"
#include "wignerlab/spectral_stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace wigner::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) { return io::format_double(x); }

CLI::Option* add_real(CLI::App* app, const std::string& name, double& ref, const std::string& desc)
{
    return app->add_option(name, ref, desc)->default_str(num(ref));
}

std::string timestamp_utc()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Output file or stream plus the metadata sidecar.
struct Output {
    std::string subcommand;
    std::string path;       // empty: stream
    std::string meta_path;  // empty: derived
    std::span<const std::string> args;

    void emit(std::ostream& out, std::string_view text) const
    {
        if (path.empty()) out << text;
        else io::write_text_file(path, text);
    }

    void meta(json extra) const
    {
        std::filesystem::path target;
        if (!meta_path.empty()) {
            target = meta_path;
        } else if (!path.empty()) {
            target = path + ".meta.json";
        } else {
            const char* env = std::getenv("WIGNERLAB_OUT_DIR");
            target = std::filesystem::path(env && *env ? env : ".") / (subcommand + ".meta.json");
        }
        if (target.has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(target.parent_path(), ec);
        }
        json j = {{"subcommand", subcommand}, {"args", std::vector<std::string>(args.begin(), args.end())},
                  {"version", WIGNERLAB_VERSION}, {"rng", kRngId}, {"created", timestamp_utc()}};
        j.update(extra);
        io::write_text_file(target.string(), j.dump(2) + "\n");
    }
};

EntryDistribution make_dist(const std::string& name, double kappa)
{
    EntryDistribution d;
    d.kind = parse_entry_kind(name);
    if (d.kind == EntryKind::symmetric_weibull) d.shape = kappa;
    validate(d);
    return d;
}

std::complex<double> parse_z(const std::string& text)
{
    const auto f = io::split_csv_line(text);
    if (f.size() != 2) throw UsageError("--z expects 're,im', got '" + text + "'");
    return {io::parse_double(f[0]), io::parse_double(f[1])};
}

SpectralDecomposition load_decomposition(const std::string& values_path, const std::string& vectors_path)
{
    SpectralDecomposition dec;
    dec.eigenvalues = io::read_column_file(values_path);
    require_sorted(dec.eigenvalues, "eigenvalues");
    if (!vectors_path.empty()) {
        Matrix u = io::read_matrix_file(vectors_path);
        if (u.rows() != dec.size() || u.cols() != dec.size())
            throw DomainError("eigenvector matrix must be n x n with n the number of eigenvalues");
        dec.eigenvectors = std::move(u);
    }
    return dec;
}

std::string report_row(std::size_t n, const std::string& seed, const KolmogorovReport& k, double comp, double partial)
{
    return "n,seed,delta_star,argmax_x,max_comp_sq,max_partial_dev\n" + std::to_string(n) + "," + seed + "," +
           num(k.delta_star) + "," + num(k.argmax_x) + "," + num(comp) + "," + num(partial) + "\n";
}

ExperimentConfig load_config(const std::string& path, unsigned workers, const std::string& out_dir)
{
    ExperimentConfig cfg = parse_config(io::read_text_file(path));
    if (workers > 0) cfg.workers = workers;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return cfg;
}

void error_json(std::ostream& err, std::string_view kind, std::string_view message)
{
    err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

} // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Wigner matrix spectral toolkit", "wignerlab"};
    app.set_version_flag("--version", WIGNERLAB_VERSION);
    app.require_subcommand(1);

    auto with_io = [](CLI::App* sub, Output& o, bool file_out = true) {
        if (file_out) sub->add_option("--out", o.path, "Output file (default: standard output)");
        sub->add_option("--meta", o.meta_path, "Metadata file (default: <out>.meta.json)");
    };

    // law
    Output law_o{"law", {}, {}, args};
    std::vector<double> law_x;
    double law_from = -2.5, law_to = 2.5;
    int law_points = 0;
    auto* law = app.add_subcommand("law", "Semicircle density and distribution function as x,g,G rows");
    law->add_option("--x", law_x, "Evaluation points (repeatable)");
    add_real(law, "--from", law_from, "Grid start");
    add_real(law, "--to", law_to, "Grid end");
    law->add_option("--points", law_points, "Uniform grid size on [from, to]")->default_str("0");
    with_io(law, law_o);

    // sample
    Output sample_o{"sample", {}, {}, args};
    std::size_t sample_n = 0;
    std::string sample_dist = "gaussian";
    double sample_kappa = 1.0;
    std::uint64_t sample_seed = 0;
    auto* sample = app.add_subcommand("sample", "Draw a Wigner matrix W = X / sqrt(n) as CSV");
    sample->add_option("--n", sample_n, "Dimension")->required();
    sample->add_option("--dist", sample_dist, "gaussian|rademacher|uniform|symmetric-weibull")->default_str(sample_dist);
    add_real(sample, "--kappa", sample_kappa, "Weibull shape (symmetric-weibull only)");
    sample->add_option("--seed", sample_seed, "Seed")->default_str("0");
    with_io(sample, sample_o);

    // eig
    Output eig_o{"eig", {}, {}, args};
    std::string eig_matrix, eig_vectors_out;
    auto* eig = app.add_subcommand("eig", "Eigenvalues (ascending) and optional eigenvectors of a matrix CSV");
    eig->add_option("--matrix", eig_matrix, "Matrix CSV")->required();
    eig->add_option("--vectors-out", eig_vectors_out, "Eigenvector CSV, column k belongs to eigenvalue k");
    with_io(eig, eig_o);

    // distance
    Output dist_o{"distance", {}, {}, args};
    std::string dist_values, dist_vectors, dist_seed;
    auto* distance = app.add_subcommand("distance", "Kolmogorov distance of the spectrum to the semicircle law");
    distance->add_option("--values", dist_values, "Eigenvalue CSV")->required();
    distance->add_option("--vectors", dist_vectors, "Eigenvector CSV (adds delocalization columns)");
    distance->add_option("--seed", dist_seed, "Seed echoed into the report");
    with_io(distance, dist_o);

    // deloc
    Output deloc_o{"deloc", {}, {}, args};
    std::string deloc_values, deloc_vectors, deloc_seed, deloc_config, deloc_outdir;
    unsigned deloc_workers = 0;
    auto* deloc = app.add_subcommand("deloc", "Delocalization report for one decomposition, or a sweep with --config");
    deloc->add_option("--values", deloc_values, "Eigenvalue CSV");
    deloc->add_option("--vectors", deloc_vectors, "Eigenvector CSV");
    deloc->add_option("--seed", deloc_seed, "Seed echoed into the report");
    deloc->add_option("--config", deloc_config, "Sweep configuration JSON");
    deloc->add_option("--workers", deloc_workers, "Worker threads (0: from config)")->default_str("0");
    deloc->add_option("--out-dir", deloc_outdir, "Sweep output directory (default: from config)");
    with_io(deloc, deloc_o);

    // diag
    Output diag_o{"diag", {}, {}, args};
    std::string diag_matrix, diag_route = "direct";
    double diag_re = 0.0, diag_im = 1.0;
    std::size_t diag_j = 0;
    auto* diag = app.add_subcommand("diag", "Per-row epsilon decomposition of R_jj(z)");
    diag->add_option("--matrix", diag_matrix, "Matrix CSV")->required();
    add_real(diag, "--re", diag_re, "Re z");
    add_real(diag, "--im", diag_im, "Im z (> 0)");
    diag->add_option("--j", diag_j, "Row, 1-based (0: all rows)")->default_str("0");
    diag->add_option("--route", diag_route, "Minor resolvent route: direct|downdate")->default_str(diag_route);
    with_io(diag, diag_o);

    // bound
    Output bound_o{"bound", {}, {}, args};
    std::string bound_values, bound_dist = "gaussian";
    std::size_t bound_n = 256;
    std::uint64_t bound_seed = 0;
    double bound_kappa = 1.0, bound_rate_kappa = 0.0, bound_vmult = 2.0, bound_v = 0.0, bound_eps = 0.0;
    BoundParams bp;
    bool bound_strict = false;
    auto* bound = app.add_subcommand("bound", "Three-term Stieltjes bound for the Kolmogorov distance as JSON");
    bound->add_option("--values", bound_values, "Eigenvalue CSV (otherwise a matrix is sampled)");
    bound->add_option("--n", bound_n, "Dimension of the sampled matrix")->default_str(std::to_string(bound_n));
    bound->add_option("--seed", bound_seed, "Seed of the sampled matrix")->default_str("0");
    bound->add_option("--dist", bound_dist, "Entry law of the sampled matrix")->default_str(bound_dist);
    add_real(bound, "--kappa", bound_kappa, "Weibull shape (symmetric-weibull only)");
    add_real(bound, "--rate-kappa", bound_rate_kappa, "kappa in beta_n (0: 2, or the Weibull shape)");
    add_real(bound, "--v", bound_v, "Smoothing height (0: v-mult * v0)");
    add_real(bound, "--v-mult", bound_vmult, "v / v0 when --v is 0");
    add_real(bound, "--eps", bound_eps, "Edge cut (0: (2 a v0)^{2/3})");
    add_real(bound, "--V", bp.V, "Height of the horizontal contour");
    add_real(bound, "--a", bp.a, "Smoothing constant a");
    add_real(bound, "--C1", bp.C1, "Constant in C1 v");
    add_real(bound, "--C2", bp.C2, "Constant in C2 eps^{3/2}");
    add_real(bound, "--d", bp.d, "d in v0 = d beta_n^4 / n");
    add_real(bound, "--alpha", bp.alpha, "alpha in l_{n,alpha}");
    bound->add_option("--x-grid", bp.x_grid, "Grid size for the vertical sup")->default_str(std::to_string(bp.x_grid));
    bound->add_flag("--strict", bound_strict, "Fail on inadmissible parameters instead of flagging them");
    with_io(bound, bound_o);

    // rate
    std::string rate_config, rate_outdir;
    unsigned rate_workers = 0;
    auto* rate = app.add_subcommand("rate", "Convergence-rate sweep: raw.csv, timing.csv, summary.csv, fit.json");
    rate->add_option("--config", rate_config, "Sweep configuration JSON")->required();
    rate->add_option("--workers", rate_workers, "Worker threads (0: from config)")->default_str("0");
    rate->add_option("--out-dir", rate_outdir, "Output directory (default: from config)");

    // events
    std::string ev_config, ev_outdir;
    unsigned ev_workers = 0;
    std::vector<std::string> ev_z = {"0,1"};
    auto* events = app.add_subcommand("events", "Empirical frequencies of the epsilon large-deviation events");
    events->add_option("--config", ev_config, "Sweep configuration JSON")->required();
    events->add_option("--z", ev_z, "Spectral parameter 're,im' (repeatable)")->default_str("0,1");
    events->add_option("--workers", ev_workers, "Worker threads (0: from config)")->default_str("0");
    events->add_option("--out-dir", ev_outdir, "Output directory (default: from config)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        error_json(err, "usage", e.what());
        return kExitUsage;
    }

    try {
        if (law->parsed()) {
            if (law_x.empty() && law_points <= 0) throw UsageError("law needs --x or --points");
            std::vector<double> xs = law_x;
            for (int i = 0; i < law_points; ++i)
                xs.push_back(law_points == 1 ? law_from : law_from + (law_to - law_from) * i / (law_points - 1));
            std::string text = "x,g,G\n";
            for (double x : xs)
                text += num(x) + "," + num(semicircle::density(x)) + "," + num(semicircle::cdf(x)) + "\n";
            law_o.emit(out, text);
            law_o.meta({{"points", xs.size()}});
        } else if (sample->parsed()) {
            const auto d = make_dist(sample_dist, sample_kappa);
            const auto s = sample_wigner(sample_n, d, sample_seed);
            std::ostringstream os;
            io::write_matrix_csv(os, s.entries);
            sample_o.emit(out, os.str());
            sample_o.meta({{"n", sample_n}, {"dist", to_string(d.kind)},
                           {"kappa", d.kind == EntryKind::symmetric_weibull ? d.shape : rate_exponent(d)},
                           {"seed", sample_seed}});
        } else if (eig->parsed()) {
            const Matrix a = io::read_matrix_file(eig_matrix);
            const auto dec = eigh(a, !eig_vectors_out.empty());
            std::ostringstream os;
            io::write_column_csv(os, "lambda", dec.eigenvalues);
            eig_o.emit(out, os.str());
            if (dec.has_vectors()) {
                std::ostringstream vs;
                io::write_matrix_csv(vs, *dec.eigenvectors);
                io::write_text_file(eig_vectors_out, vs.str());
            }
            eig_o.meta({{"n", dec.size()}, {"matrix", eig_matrix}, {"vectors_out", eig_vectors_out}});
        } else if (distance->parsed()) {
            const auto dec = load_decomposition(dist_values, dist_vectors);
            const auto k = kolmogorov_distance(dec.eigenvalues);
            double comp = std::nan(""), partial = std::nan("");
            if (dec.has_vectors()) {
                const auto r = deloc_stats(dec);
                comp = r.max_component_sq;
                partial = r.max_partial_dev;
            }
            dist_o.emit(out, report_row(dec.size(), dist_seed, k, comp, partial));
            dist_o.meta({{"values", dist_values}, {"vectors", dist_vectors}, {"seed", dist_seed}});
        } else if (deloc->parsed()) {
            if (!deloc_config.empty()) {
                if (!deloc_values.empty() || !deloc_vectors.empty())
                    throw UsageError("deloc takes either --config or --values/--vectors");
                const auto cfg = load_config(deloc_config, deloc_workers, deloc_outdir);
                const auto res = run_deloc_experiment(cfg);
                write_deloc_outputs(cfg, res);
                out << deloc_summary_csv(res.per_n);
            } else {
                if (deloc_values.empty() || deloc_vectors.empty())
                    throw UsageError("deloc needs --values and --vectors, or --config");
                const auto dec = load_decomposition(deloc_values, deloc_vectors);
                const auto r = deloc_stats(dec);
                deloc_o.emit(out, report_row(dec.size(), deloc_seed, kolmogorov_distance(dec.eigenvalues),
                                             r.max_component_sq, r.max_partial_dev));
                deloc_o.meta({{"values", deloc_values}, {"vectors", deloc_vectors}, {"seed", deloc_seed}});
            }
        } else if (diag->parsed()) {
            MinorRoute route;
            if (diag_route == "direct") route = MinorRoute::direct;
            else if (diag_route == "downdate") route = MinorRoute::downdate;
            else throw UsageError("--route must be direct or downdate");
            const Matrix w = io::read_matrix_file(diag_matrix);
            const ResolventAnalysis analysis(w, route);
            const std::complex<double> z(diag_re, diag_im);
            if (diag_j > analysis.size()) throw DomainError("--j exceeds the matrix dimension");
            std::vector<EpsilonDiagnostics> rows;
            if (diag_j == 0) rows = analysis.epsilon_all(z);
            else rows.push_back(analysis.epsilon(z, diag_j - 1));
            std::string text =
                "j,eps1_re,eps1_im,eps2_re,eps2_im,eps3_re,eps3_im,eps4_re,eps4_im,eps_total_re,eps_total_im,"
                "r_jj_re,r_jj_im,schur_residual,repr_residual\n";
            for (const auto& e : rows) {
                text += std::to_string(e.j + 1);
                for (auto c : {e.eps1, e.eps2, e.eps3, e.eps4, e.eps_total, e.r_jj})
                    text += "," + num(c.real()) + "," + num(c.imag());
                text += "," + num(e.schur_residual) + "," + num(e.repr_residual) + "\n";
            }
            diag_o.emit(out, text);
            diag_o.meta({{"matrix", diag_matrix}, {"z", {diag_re, diag_im}}, {"route", diag_route}});
        } else if (bound->parsed()) {
            std::vector<double> eigs;
            json extra;
            double kappa = bound_rate_kappa;
            if (!bound_values.empty()) {
                eigs = io::read_column_file(bound_values);
                require_sorted(eigs, "eigenvalues");
                if (kappa <= 0.0) kappa = 2.0;
                extra = {{"values", bound_values}};
            } else {
                const auto d = make_dist(bound_dist, bound_kappa);
                eigs = eigvalsh(sample_wigner(bound_n, d, bound_seed).entries);
                if (kappa <= 0.0) kappa = rate_exponent(d);
                extra = {{"n", bound_n}, {"seed", bound_seed}, {"dist", to_string(d.kind)}};
            }
            const double n = static_cast<double>(eigs.size());
            bp.kappa = kappa;
            const double v0 = critical_height(n, bp.d, bp.alpha, kappa);
            bp.v = bound_v > 0.0 ? bound_v : bound_vmult * v0;
            bp.eps_cut = bound_eps > 0.0 ? bound_eps : std::pow(2.0 * bp.a * v0, 2.0 / 3.0);
            const auto b = smoothing_bound(eigs, bp, bound_strict ? AdmissibilityPolicy::enforce
                                                                  : AdmissibilityPolicy::report);
            const auto k = kolmogorov_distance(eigs);
            json j = {{"I_horizontal", b.I_horizontal},
                      {"I_vertical", b.I_vertical},
                      {"penalty", b.penalty},
                      {"total", b.total},
                      {"delta_star", k.delta_star},
                      {"admissible", b.admissibility.admissible},
                      {"inadmissible_reason", b.admissibility.reason},
                      {"n", eigs.size()},
                      {"v0", v0},
                      {"v", bp.v},
                      {"eps", bp.eps_cut},
                      {"V", bp.V},
                      {"a", bp.a},
                      {"C1", bp.C1},
                      {"C2", bp.C2},
                      {"u_max", b.u_max},
                      {"horizontal_tail", b.horizontal_tail},
                      {"sup_x", b.sup_x},
                      {"quadrature_converged", b.quadrature_converged}};
            bound_o.emit(out, j.dump(2) + "\n");
            bound_o.meta(extra);
        } else if (rate->parsed()) {
            const auto cfg = load_config(rate_config, rate_workers, rate_outdir);
            const auto res = run_rate_experiment(cfg);
            write_rate_outputs(cfg, res);
            out << fit_json(res.fit);
        } else if (events->parsed()) {
            const auto cfg = load_config(ev_config, ev_workers, ev_outdir);
            std::vector<std::complex<double>> zs;
            for (const auto& s : ev_z) zs.push_back(parse_z(s));
            const auto res = run_event_frequencies(cfg, zs);
            write_event_outputs(cfg, res, zs);
            out << events_csv(res.rows);
        }
    } catch (const UsageError& e) {
        error_json(err, "usage", e.what());
        return kExitUsage;
    } catch (const DomainError& e) {
        error_json(err, "domain", e.what());
        return kExitFailure;
    } catch (const NumericError& e) {
        error_json(err, "numeric", e.what());
        return kExitFailure;
    } catch (const std::exception& e) {
        error_json(err, "failure", e.what());
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace wigner::cli
