#include "obh/cli.hpp"
#include "obh/biharmonic.hpp"
#include "obh/config.hpp"
#include "obh/dense.hpp"
#include "obh/eigensolver.hpp"
#include "obh/io.hpp"
#include "obh/nfunction.hpp"
#include "obh/orlicz.hpp"
#include "obh/spectrum.hpp"
#include "obh/version.hpp"
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace obh {
namespace {

std::vector<double> split_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        std::size_t a = tok.find_first_not_of(" \t");
        if (a != std::string::npos) {
            std::size_t b = tok.find_last_not_of(" \t");
            tok = tok.substr(a, b - a + 1);
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw std::runtime_error("bad number in list: '" + tok + "'");
            out.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string out_path(const RunConfig& cfg, const char* name) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

JsonObject bounds_json(const BoundsReport& b) {
    JsonObject o;
    o.add("exponent_bound", b.exponent_bound);
    o.add("lambda0_estimate", b.lambda0_estimate);
    o.add("ok_exponent", b.ok_exponent);
    o.add("ok_lambda0", b.ok_lambda0);
    return o;
}

void write_u_csv(const RunConfig& cfg, const GridFunction& u, const char* name) {
    Csv csv;
    csv.comment(std::string("schema ") + schema_version);
    csv.comment("config " + config_echo_json(cfg));
    const Grid& g = u.grid;
    const double h = g.h();
    if (g.dim == 1) {
        csv.row("x", "u");
        for (int i = 0; i < g.n; ++i) csv.row((i + 1) * h, u.v[std::size_t(i)]);
    } else {
        csv.row("x", "y", "u");
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                csv.row((i + 1) * h, (j + 1) * h, u.v[std::size_t(j) * g.n + i]);
    }
    write_file(out_path(cfg, name), csv.text);
}

int cmd_eig_solve(const std::string& cfg_path, double r, bool strict, std::ostream& out) {
    RunConfig rc = load_config(cfg_path);
    NFunction G = rc.G.make();
    NFunction B = rc.B_or_G().make();
    const bool same = !rc.B || *rc.B == rc.G;
    EigenResult res = same ? solve_constrained(G, rc.grid, r, rc.solver)
                           : solve_constrained_pair(G, B, rc.grid, r, rc.solver);

    JsonObject root;
    root.add("schema", schema_version);
    root.add_raw("config", config_echo_json(rc));
    root.add("r", res.r);
    root.add("c_r", res.c_r);
    root.add("lambda_r", res.lambda_r);
    root.add("residual", res.residual);
    root.add("iterations", res.iterations);
    root.add("converged", res.converged);
    root.add("eps_used", res.eps_used);
    JsonObject trace;
    trace.add("max_sphere_violation", res.trace.max_sphere_violation);
    trace.add("max_energy_uphill", res.trace.max_energy_uphill);
    root.add("trace", trace);
    if (same) {
        BoundsReport b = check_lower_bounds(res, G, rc.solver);
        root.add("bounds", bounds_json(b));
        out << "lambda_r = " << fmt17(res.lambda_r)
            << "  exponent_bound = " << fmt17(b.exponent_bound)
            << "  lambda0_estimate = " << fmt17(b.lambda0_estimate) << '\n';
    } else {
        root.add_raw("bounds", "null");
        out << "lambda_r = " << fmt17(res.lambda_r) << '\n';
    }
    write_file(out_path(rc, "eigen_result.json"), root.str() + "\n");
    write_u_csv(rc, res.u_r, "u_r.csv");
    out << (res.converged ? "converged" : "did not converge") << " in " << res.iterations
        << " iterations, residual " << fmt17(res.residual) << '\n';
    if (strict && !res.converged) return 2;
    return 0;
}

int cmd_eig_sweep(const std::string& cfg_path, const std::string& rlist, bool strict,
                  std::ostream& out) {
    RunConfig rc = load_config(cfg_path);
    std::vector<double> rs = split_list(rlist);
    NFunction G = rc.G.make();
    NFunction B = rc.B_or_G().make();
    const bool same = !rc.B || *rc.B == rc.G;
    Csv csv;
    csv.comment(std::string("schema ") + schema_version);
    csv.comment("config " + config_echo_json(rc));
    csv.row("r", "c_r", "lambda_r", "residual", "iterations");
    bool all_converged = true;
    for (double r : rs) {
        EigenResult res = same ? solve_constrained(G, rc.grid, r, rc.solver)
                               : solve_constrained_pair(G, B, rc.grid, r, rc.solver);
        csv.row(res.r, res.c_r, res.lambda_r, res.residual, std::int64_t(res.iterations));
        all_converged = all_converged && res.converged;
        if (same) {
            BoundsReport b = check_lower_bounds(res, G, rc.solver);
            out << "r = " << fmt17(r) << "  lambda_r = " << fmt17(res.lambda_r)
                << "  exponent_bound = " << fmt17(b.exponent_bound)
                << "  lambda0_estimate = " << fmt17(b.lambda0_estimate) << '\n';
        } else {
            out << "r = " << fmt17(r) << "  lambda_r = " << fmt17(res.lambda_r) << '\n';
        }
    }
    write_file(out_path(rc, "sweep.csv"), csv.text);
    if (strict && !all_converged) return 2;
    return 0;
}

int cmd_spectrum_scan(const std::string& cfg_path, const std::string& lamlist,
                      std::ostream& out) {
    RunConfig rc = load_config(cfg_path);
    std::vector<double> lams = split_list(lamlist);
    NFunction G = rc.G.make();
    NFunction B = rc.B_or_G().make();
    RegimeReport rep = build_regime_report(G, B, rc.grid, 200, rc.solver);

    JsonObject root;
    root.add("schema", schema_version);
    root.add_raw("config", config_echo_json(rc));
    root.add("regime", regime_name(rep.regime));
    auto expj = [](const ExponentPair& e) {
        JsonObject o;
        o.add("p_minus", e.p_minus);
        o.add("p_plus", e.p_plus);
        o.add("exact", e.exact);
        o.add("g1_violated", e.g1_violated);
        return o;
    };
    root.add("exp_G", expj(rep.expG));
    root.add("exp_B", expj(rep.expB));
    root.add("embedding_C", rep.embedding_C);
    root.add("rho", rep.rho);
    root.add("lambda_star", rep.lambda_star);
    root.add("lambda_star_star", rep.lambda_star_star);
    root.add("subcritical", rep.subcritical);
    root.add("density_lower_ok_B", rep.density_lower_ok_B);
    root.add("density_lower_ok_G", rep.density_lower_ok_G);
    write_file(out_path(rc, "regime.json"), root.str() + "\n");

    Csv csv;
    csv.comment(std::string("schema ") + schema_version);
    csv.comment("config " + config_echo_json(rc));
    csv.row("lambda", "found", "phi", "residual", "method");
    for (double lam : lams) {
        CriticalPointResult cp = find_critical_point(G, B, rc.grid, lam, rep, rc.solver);
        csv.row(cp.lambda, cp.found, cp.phi_value, cp.residual, method_name(cp.method));
        out << "lambda = " << fmt17(lam) << (cp.found ? "  found, phi = " : "  not found, phi = ")
            << fmt17(cp.phi_value) << '\n';
    }
    write_file(out_path(rc, "spectrum_scan.csv"), csv.text);
    out << "regime " << regime_name(rep.regime) << ", C = " << fmt17(rep.embedding_C) << '\n';
    return 0;
}

int cmd_nfunc_inspect(const std::string& family, double p, double q, std::ostream& out) {
    NFunctionSpec spec;
    spec.family = family;
    spec.p = p;
    spec.q = q;
    NFunction nf = spec.make();
    JsonObject echo;
    echo.add("family", spec.family);
    if (spec.family != "powerlog") echo.add("p", spec.p);
    if (spec.family == "piecewise") echo.add("q", spec.q);
    Csv csv;
    csv.comment(std::string("schema ") + schema_version);
    csv.comment("config " + echo.str());
    csv.row("t", "G", "g", "G_conj", "ratio");
    out << "t\tG\tg\tG_conj\tratio\n";
    for (int i = 0; i <= 32; ++i) {
        double t = std::pow(10.0, -4.0 + 8.0 * i / 32.0);
        double Gv = nf.G(t);
        double gv = nf.g(t);
        double conj;
        try {
            conj = complementary(nf, t);
        } catch (const std::runtime_error&) {
            conj = std::numeric_limits<double>::quiet_NaN(); // density never reaches t
        }
        double ratio = t * gv / Gv;
        csv.row(t, Gv, gv, conj, ratio);
        out << fmt17(t) << '\t' << fmt17(Gv) << '\t' << fmt17(gv) << '\t' << fmt17(conj) << '\t'
            << fmt17(ratio) << '\n';
    }
    write_file("nfunc_table.csv", csv.text);
    return 0;
}

int cmd_oracle_beam(double p, int n, std::ostream& out) {
    BeamOracle oracle = run_oracle_beam(Grid(1, n), p);
    out << "lambda_min = " << fmt17(oracle.lambda_min) << '\n';
    return 0;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fourth-order eigenproblems and spectrum maps in discrete Orlicz-Sobolev spaces",
                 "orlicz-biharm"};
    app.require_subcommand(1);

    std::string cfg_path, rlist, lamlist, family = "power";
    double rval = 1.0, pval = 2.0, qval = 3.0;
    int nval = 60;
    bool strict = false;

    CLI::App* eig = app.add_subcommand("eig", "constrained eigenvalue solves");
    eig->require_subcommand(1);
    CLI::App* solve = eig->add_subcommand("solve", "minimize the energy on a modular sphere");
    solve->add_option("--config", cfg_path, "config file")->required();
    solve->add_option("--r", rval, "sphere radius");
    solve->add_flag("--strict", strict, "exit 2 on non-convergence");
    CLI::App* sweep = eig->add_subcommand("sweep", "solve across a list of radii");
    sweep->add_option("--config", cfg_path, "config file")->required();
    sweep->add_option("--r", rlist, "comma-separated radii")->required();
    sweep->add_flag("--strict", strict, "exit 2 on non-convergence");

    CLI::App* spectrum = app.add_subcommand("spectrum", "two-family spectrum analysis");
    spectrum->require_subcommand(1);
    CLI::App* scan = spectrum->add_subcommand("scan", "regime report and critical-point scan");
    scan->add_option("--config", cfg_path, "config file")->required();
    scan->add_option("--lambdas", lamlist, "comma-separated lambda values");

    CLI::App* nfunc = app.add_subcommand("nfunc", "Young-function calculus");
    CLI::App* inspect = nfunc->add_subcommand("inspect", "tabulate G, g, the conjugate, and tg/G");
    nfunc->require_subcommand(1);
    inspect->add_option("--family", family, "power | piecewise | powerlog")->required();
    inspect->add_option("--p", pval, "lower exponent");
    inspect->add_option("--q", qval, "upper exponent (piecewise)");

    CLI::App* oracle = app.add_subcommand("oracle", "independent reference solutions");
    oracle->require_subcommand(1);
    CLI::App* beam = oracle->add_subcommand("beam", "dense clamped-beam eigenvalue (linear case)");
    beam->add_option("--n", nval, "interior grid nodes")->required();
    beam->add_option("--p", pval, "exponent flag (must be 2)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << app.help() << '\n' << e.what() << '\n';
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_eig_solve(cfg_path, rval, strict, out);
        if (sweep->parsed()) return cmd_eig_sweep(cfg_path, rlist, strict, out);
        if (scan->parsed()) return cmd_spectrum_scan(cfg_path, lamlist, out);
        if (inspect->parsed()) return cmd_nfunc_inspect(family, pval, qval, out);
        if (beam->parsed()) return cmd_oracle_beam(pval, nval, out);
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 1;
    }
    err << app.help() << '\n';
    return 1;
}

} // namespace obh
