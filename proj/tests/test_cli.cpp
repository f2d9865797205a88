#include "wignerlab/cli.hpp"
#include "wignerlab/eigensolve.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/resolvent.hpp"
#include "wignerlab/spectral_stats.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace wigner;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch()
{
    static const fs::path dir = [] {
        const auto d = fs::temp_directory_path() / "wignerlab_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

} // namespace

TEST_CASE("law rows")
{
    const auto r = run({"law", "--x", "0", "--x", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "x,g,G\n0,0.3183098861837907,0.5\n2,0,1\n");
    const auto grid = run({"law", "--points", "5", "--from", "-2", "--to", "2"});
    CHECK(grid.code == 0);
    CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 6);
}

TEST_CASE("exit codes and error objects")
{
    auto r = run({"law", "--bogus"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(json::parse(r.err).at("error") == "usage");
    CHECK(run({"nosuch"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"sample", "--n", "abc"}).code == cli::kExitUsage);

    r = run({"sample", "--n", "0"});
    CHECK(r.code == cli::kExitFailure);
    CHECK(json::parse(r.err).at("error") == "domain");
    CHECK(run({"sample", "--n", "4", "--dist", "cauchy"}).code == cli::kExitFailure);
    CHECK(run({"eig", "--matrix", path("missing.csv")}).code == cli::kExitFailure);
    CHECK(run({"law"}).code == cli::kExitUsage);
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("sample, eig, distance pipeline")
{
    const auto m = path("w.csv"), vals = path("vals.csv"), vecs = path("vecs.csv");
    REQUIRE(run({"sample", "--n", "20", "--seed", "3", "--out", m}).code == 0);
    CHECK(fs::exists(m + ".meta.json"));
    const auto meta = json::parse(io::read_text_file(m + ".meta.json"));
    CHECK(meta.at("seed") == 3);
    CHECK(meta.at("rng") == kRngId);

    const Matrix w = io::read_matrix_file(m);
    CHECK(w == sample_wigner(20, EntryDistribution::gaussian(), 3).entries);

    REQUIRE(run({"eig", "--matrix", m, "--out", vals, "--vectors-out", vecs}).code == 0);
    const auto lam = io::read_column_file(vals);
    CHECK(lam == eigvalsh(w));
    CHECK(io::read_matrix_file(vecs) == *eigh(w, true).eigenvectors);

    const auto d = run({"distance", "--values", vals, "--vectors", vecs, "--seed", "3"});
    REQUIRE(d.code == 0);
    std::istringstream is(d.out);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "n,seed,delta_star,argmax_x,max_comp_sq,max_partial_dev");
    const auto f = io::split_csv_line(row);
    CHECK(f[0] == "20");
    CHECK(io::parse_double(f[2]) == kolmogorov_distance(lam).delta_star);

    const auto dl = run({"deloc", "--values", vals, "--vectors", vecs});
    CHECK(dl.code == 0);
    CHECK(run({"deloc", "--values", vals}).code == cli::kExitUsage);

    // byte-identical reruns
    const auto m2 = path("w2.csv");
    REQUIRE(run({"sample", "--n", "20", "--seed", "3", "--out", m2}).code == 0);
    CHECK(io::read_text_file(m) == io::read_text_file(m2));
}

TEST_CASE("diag rows")
{
    const auto m = path("d.csv");
    REQUIRE(run({"sample", "--n", "12", "--seed", "1", "--out", m}).code == 0);
    const auto r = run({"diag", "--matrix", m, "--re", "0.2", "--im", "0.8"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 13);
    const auto one = run({"diag", "--matrix", m, "--j", "4", "--route", "downdate"});
    REQUIRE(one.code == 0);
    std::istringstream is(one.out);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    const auto f = io::split_csv_line(line);
    CHECK(f[0] == "4");
    CHECK(io::parse_double(f[13]) <= 1e-9);
    CHECK(io::parse_double(f[14]) <= 1e-9);
    CHECK(run({"diag", "--matrix", m, "--im", "0"}).code == cli::kExitFailure);
    CHECK(run({"diag", "--matrix", m, "--j", "13"}).code == cli::kExitFailure);
    CHECK(run({"diag", "--matrix", m, "--route", "sideways"}).code == cli::kExitUsage);
}

TEST_CASE("bound report")
{
    const auto r = run({"bound", "--n", "64", "--seed", "2", "--x-grid", "64"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("total").get<double>() >= j.at("delta_star").get<double>());
    CHECK(j.at("admissible") == false);
    CHECK(j.at("a").get<double>() == kDefaultSmoothingA);
    CHECK(run({"bound", "--n", "64", "--strict", "--x-grid", "64"}).code == cli::kExitFailure);

    const auto ok = run({"bound", "--n", "64", "--v", "0.01", "--eps", "0.2", "--x-grid", "64", "--strict"});
    REQUIRE(ok.code == 0);
    const auto k = json::parse(ok.out);
    CHECK(k.at("admissible") == true);
    CHECK(k.at("total").get<double>() >= k.at("delta_star").get<double>());
}

TEST_CASE("rate and events sweeps")
{
    const auto cfg = path("cfg.json");
    io::write_text_file(cfg, R"({"n_grid": [16, 32], "replicates": 3, "base_seed": 7})");
    const auto d1 = path("rate1"), d4 = path("rate4");
    const auto r1 = run({"rate", "--config", cfg, "--workers", "1", "--out-dir", d1});
    const auto r4 = run({"rate", "--config", cfg, "--workers", "4", "--out-dir", d4});
    REQUIRE(r1.code == 0);
    REQUIRE(r4.code == 0);
    CHECK(json::parse(r1.out).at("defined") == true);
    for (const char* f : {"raw.csv", "summary.csv", "fit.json", "meta.json", "timing.csv"}) CHECK(fs::exists(fs::path(d1) / f));
    CHECK(io::read_text_file(d1 + "/raw.csv") == io::read_text_file(d4 + "/raw.csv"));
    CHECK(io::read_text_file(d1 + "/summary.csv") == io::read_text_file(d4 + "/summary.csv"));

    const auto e = run({"events", "--config", cfg, "--z", "0,1", "--z", "0.5,0.5", "--out-dir", path("ev")});
    REQUIRE(e.code == 0);
    CHECK(fs::exists(path("ev") + "/events.csv"));
    CHECK(run({"events", "--config", cfg, "--z", "0"}).code == cli::kExitUsage);
    CHECK(run({"events", "--config", cfg, "--z", "0,-1"}).code == cli::kExitFailure);

    io::write_text_file(path("bad.json"), R"({"n_grid": [8]})");
    CHECK(run({"rate", "--config", path("bad.json")}).code == cli::kExitFailure);

    const auto dd = run({"deloc", "--config", cfg, "--out-dir", path("deloc")});
    CHECK(dd.code == 0);
    CHECK(fs::exists(path("deloc") + "/summary.csv"));
}

TEST_CASE("help shows the coded defaults")
{
    const auto h = run({"bound", "--help"});
    CHECK(h.code == 0);
    const BoundParams p;
    for (double x : {p.a, p.V, p.C1, p.C2, p.d, p.alpha})
        CHECK(h.out.find(io::format_double(x)) != std::string::npos);
    CHECK(h.out.find("2.414213562373095") != std::string::npos);
    CHECK(h.out.find("2048") != std::string::npos);
}

TEST_CASE("metadata for stream output")
{
    const auto r = run({"law", "--x", "1"});
    REQUIRE(r.code == 0);
    const char* env = std::getenv("WIGNERLAB_OUT_DIR");
    const fs::path dir = env && *env ? env : ".";
    CHECK(fs::exists(dir / "law.meta.json"));
    const auto m = path("explicit.meta.json");
    REQUIRE(run({"law", "--x", "1", "--meta", m}).code == 0);
    CHECK(json::parse(io::read_text_file(m)).at("subcommand") == "law");
}
