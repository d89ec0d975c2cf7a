#include "obh/cli.hpp"
#include "obh/config.hpp"
#include "obh/io.hpp"
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace obh;
namespace fs = std::filesystem;

namespace {

struct RunOut {
    int rc;
    std::string out, err;
};

RunOut run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = run_cli(std::move(args), out, err);
    return {rc, out.str(), err.str()};
}

fs::path fresh_dir(const char* leaf) {
    fs::path d = fs::temp_directory_path() / "obh_cli_tests" / leaf;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string base_config(const fs::path& outdir, const std::string& extra = "") {
    return "[G]\nfamily = \"power\"\np = 2\n" + extra +
           "[grid]\ndim = 1\nn = 30\n[output]\ndir = \"" + outdir.string() + "\"\n";
}

} // namespace

TEST_CASE("usage errors and help") {
    RunOut bad = run({"no-such-command"});
    CHECK(bad.rc == 1);
    CHECK(contains(bad.err, "Usage"));
    RunOut help = run({"--help"});
    CHECK(help.rc == 0);
    CHECK(contains(help.out, "eig"));
    CHECK(contains(help.out, "spectrum"));
    RunOut none = run({});
    CHECK(none.rc == 1);
    RunOut subhelp = run({"eig", "solve", "--help"});
    CHECK(subhelp.rc == 0);
    CHECK(contains(subhelp.out, "--config"));
    RunOut missing = run({"eig", "solve"});
    CHECK(missing.rc == 1); // --config is required
}

TEST_CASE("eig solve writes schema-tagged artifacts and logs both bounds") {
    fs::path dir = fresh_dir("solve");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, base_config(dir / "out"));
    RunOut r = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    REQUIRE(r.rc == 0);
    CHECK(contains(r.out, "lambda_r = "));
    CHECK(contains(r.out, "exponent_bound = "));
    CHECK(contains(r.out, "lambda0_estimate = "));
    CHECK(contains(r.out, "converged"));
    std::string json = slurp(dir / "out" / "eigen_result.json");
    CHECK(contains(json, "\"schema\":\"obh/1\""));
    CHECK(contains(json, "\"config\":{"));
    CHECK(contains(json, "\"lambda_r\":"));
    CHECK(contains(json, "\"ok_exponent\":true"));
    CHECK(contains(json, "\"ok_lambda0\":true"));
    CHECK(contains(json, "\"converged\":true"));
    std::string csv = slurp(dir / "out" / "u_r.csv");
    CHECK(contains(csv, "# schema obh/1"));
    CHECK(contains(csv, "# config {"));
    CHECK(contains(csv, "x,u"));
}

TEST_CASE("eig solve with a separate constraint family reports null bounds") {
    fs::path dir = fresh_dir("solve_pair");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, base_config(dir / "out", "[B]\nfamily = \"piecewise\"\np = 2\nq = 3\n"));
    RunOut r = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    REQUIRE(r.rc == 0);
    std::string json = slurp(dir / "out" / "eigen_result.json");
    CHECK(contains(json, "\"bounds\":null"));
    CHECK_FALSE(contains(r.out, "exponent_bound"));
}

TEST_CASE("identical runs produce byte-identical artifacts") {
    fs::path dir = fresh_dir("determinism");
    fs::path cfg1 = dir / "a.cfg", cfg2 = dir / "b.cfg";
    std::string pw = "[B]\nfamily = \"piecewise\"\np = 1.5\nq = 2.5\n";
    spit(cfg1, base_config(dir / "o1", pw));
    spit(cfg2, base_config(dir / "o2", pw));
    REQUIRE(run({"eig", "solve", "--config", cfg1.string(), "--r", "0.7"}).rc == 0);
    REQUIRE(run({"eig", "solve", "--config", cfg2.string(), "--r", "0.7"}).rc == 0);
    // config echoes differ only in the output dir, so compare after masking it
    std::string j1 = slurp(dir / "o1" / "eigen_result.json");
    std::string j2 = slurp(dir / "o2" / "eigen_result.json");
    size_t p1 = j1.find("o1");
    size_t p2 = j2.find("o2");
    REQUIRE(p1 != std::string::npos);
    REQUIRE(p2 == p1);
    j1.erase(p1, 2);
    j2.erase(p2, 2);
    CHECK(j1 == j2);
    std::string c1 = slurp(dir / "o1" / "u_r.csv");
    std::string c2 = slurp(dir / "o2" / "u_r.csv");
    p1 = c1.find("o1");
    REQUIRE(p1 != std::string::npos);
    c1.erase(p1, 2);
    c2.erase(c2.find("o2"), 2);
    CHECK(c1 == c2);
}

TEST_CASE("strict flag turns non-convergence into exit 2") {
    fs::path dir = fresh_dir("strict");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, base_config(dir / "out", "[solver]\nmax_iters = 1\n"));
    RunOut soft = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    CHECK(soft.rc == 0);
    CHECK(contains(soft.out, "did not converge"));
    CHECK(contains(slurp(dir / "out" / "eigen_result.json"), "\"converged\":false"));
    RunOut hard = run({"eig", "solve", "--config", cfgp.string(), "--r", "1", "--strict"});
    CHECK(hard.rc == 2);
}

TEST_CASE("degenerate growth exits with the domain error") {
    fs::path dir = fresh_dir("powerlog");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, "[G]\nfamily = \"powerlog\"\n[grid]\ndim = 1\nn = 30\n[output]\ndir = \"" +
                   (dir / "out").string() + "\"\n");
    RunOut r = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    CHECK(r.rc == 1);
    CHECK(contains(r.err, "(G1) violated"));
}

TEST_CASE("eig sweep writes one row per radius") {
    fs::path dir = fresh_dir("sweep");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, base_config(dir / "out"));
    RunOut r = run({"eig", "sweep", "--config", cfgp.string(), "--r", "0.5,1,2"});
    REQUIRE(r.rc == 0);
    std::string csv = slurp(dir / "out" / "sweep.csv");
    CHECK(contains(csv, "r,c_r,lambda_r,residual,iterations"));
    int rows = 0;
    std::istringstream ss(csv);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 4); // header + 3 radii
}

TEST_CASE("spectrum scan writes the regime report and per-lambda rows") {
    fs::path dir = fresh_dir("scan");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, base_config(dir / "out", "[B]\nfamily = \"power\"\np = 3\n"));
    RunOut r = run({"spectrum", "scan", "--config", cfgp.string(), "--lambdas", "0.5,5"});
    REQUIRE(r.rc == 0);
    CHECK(contains(r.out, "regime WholeLineSuperlinear"));
    std::string rj = slurp(dir / "out" / "regime.json");
    CHECK(contains(rj, "\"schema\":\"obh/1\""));
    CHECK(contains(rj, "\"regime\":\"WholeLineSuperlinear\""));
    CHECK(contains(rj, "\"exp_G\":{\"p_minus\":2,"));
    CHECK(contains(rj, "\"subcritical\":true"));
    std::string sc = slurp(dir / "out" / "spectrum_scan.csv");
    CHECK(contains(sc, "lambda,found,phi,residual,method"));
    CHECK(contains(sc, "0.5,1,"));
    CHECK(contains(sc, "5,1,"));
}

TEST_CASE("empty lambda list yields a header-only scan table") {
    fs::path dir = fresh_dir("scan_empty");
    fs::path cfgp = dir / "run.cfg";
    spit(cfgp, base_config(dir / "out", "[B]\nfamily = \"power\"\np = 3\n"));
    RunOut r = run({"spectrum", "scan", "--config", cfgp.string(), "--lambdas", ""});
    REQUIRE(r.rc == 0);
    std::string sc = slurp(dir / "out" / "spectrum_scan.csv");
    int rows = 0;
    std::istringstream ss(sc);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 1); // header only
}

TEST_CASE("nfunc inspect prints the table and drops a csv in the working directory") {
    fs::path dir = fresh_dir("inspect");
    fs::path saved = fs::current_path();
    fs::current_path(dir);
    RunOut r = run({"nfunc", "inspect", "--family", "piecewise", "--p", "2", "--q", "3"});
    fs::current_path(saved);
    REQUIRE(r.rc == 0);
    CHECK(contains(r.out, "t\tG\tg\tG_conj\tratio"));
    std::string csv = slurp(dir / "nfunc_table.csv");
    CHECK(contains(csv, "t,G,g,G_conj,ratio"));
    CHECK(contains(csv, "\"family\":\"piecewise\""));
    // the ratio column stays inside the exponent window [p, q]
    std::istringstream ss(csv);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        double t, G, g, conj, ratio;
        char c;
        std::istringstream ls(line);
        ls >> t >> c >> G >> c >> g >> c >> conj >> c >> ratio;
        CHECK(ratio >= 2.0 - 1e-9);
        CHECK(ratio <= 3.0 + 1e-9);
    }
    // the degenerate family reports NaN cells where the conjugate diverges
    fs::current_path(dir);
    RunOut pl = run({"nfunc", "inspect", "--family", "powerlog"});
    fs::current_path(saved);
    REQUIRE(pl.rc == 0);
    CHECK(contains(pl.out, "nan"));
}

TEST_CASE("oracle beam prints the dense eigenvalue and rejects nonlinear flags") {
    RunOut r = run({"oracle", "beam", "--n", "40"});
    REQUIRE(r.rc == 0);
    CHECK(contains(r.out, "lambda_min = 498.11856016"));
    RunOut bad = run({"oracle", "beam", "--n", "40", "--p", "3"});
    CHECK(bad.rc == 1);
    CHECK(contains(bad.err, "oracle is linear-only"));
}

TEST_CASE("config errors surface with the config prefix and exit 1") {
    fs::path dir = fresh_dir("badcfg");
    RunOut missing = run({"eig", "solve", "--config", (dir / "nope.cfg").string(), "--r", "1"});
    CHECK(missing.rc == 1);
    CHECK(contains(missing.err, "config: cannot open"));
    fs::path cfgp = dir / "bad.cfg";
    spit(cfgp, "[G]\nfamily = \"power\"\np = 2\nbogus = 1\n");
    RunOut bad = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    CHECK(bad.rc == 1);
    CHECK(contains(bad.err, "config: unknown key 'bogus'"));
    spit(cfgp, "[G]\nfamily = \"exotic\"\n");
    RunOut fam = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    CHECK(fam.rc == 1);
    CHECK(contains(fam.err, "config: unknown family 'exotic'"));
    spit(cfgp, "p = 2\n");
    RunOut stray = run({"eig", "solve", "--config", cfgp.string(), "--r", "1"});
    CHECK(stray.rc == 1);
    CHECK(contains(stray.err, "config: key outside any section at line 1"));
}

TEST_CASE("config round-trips through its canonical serialization") {
    RunConfig a;
    CHECK(parse_config(serialize_config(a)) == a);
    RunConfig b;
    b.G = {"piecewise", 1.7, 2.2};
    b.B = NFunctionSpec{"power", 3.0, 2.0};
    b.grid = Grid(2, 12);
    b.solver.max_iters = 321;
    b.solver.grad_tol = 2.5e-9;
    b.solver.seed = 99;
    b.solver.eps_reg = 1e-7;
    b.solver.multistart = 7;
    b.output_dir = "results/run b";
    CHECK(parse_config(serialize_config(b)) == b);
    RunConfig c;
    c.G = {"powerlog", 2.0, 2.0};
    CHECK(parse_config(serialize_config(c)) == c);
    // hand-written text with comments and loose spacing parses too
    RunConfig d = parse_config("# comment line\n[G]\n  family = \"power\"  # trailing\n  p = 2.5\n"
                               "\n[grid]\nn = 44\n");
    CHECK(d.G.family == "power");
    CHECK(d.G.p == 2.5);
    CHECK(d.grid.n == 44);
    CHECK(d.grid.dim == 1);
    CHECK_FALSE(d.B.has_value());
}
