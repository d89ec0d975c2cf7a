#include "obh/config.hpp"
#include "obh/io.hpp"
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace obh {

NFunction NFunctionSpec::make() const {
    if (family == "power") return NFunction::power(p);
    if (family == "piecewise") return NFunction::piecewise_power(p, q);
    if (family == "powerlog") return NFunction::power_log();
    throw std::runtime_error("config: unknown family '" + family + "'");
}

bool RunConfig::operator==(const RunConfig& o) const {
    return G == o.G && B == o.B && grid == o.grid && solver == o.solver &&
           output_dir == o.output_dir;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

double parse_num(const std::string& key, const std::string& s) {
    const char* c = s.c_str();
    char* end = nullptr;
    double v = std::strtod(c, &end);
    if (end == c || *end != '\0')
        throw std::runtime_error("config: bad number for '" + key + "': " + s);
    return v;
}

long long parse_int(const std::string& key, const std::string& s) {
    const char* c = s.c_str();
    char* end = nullptr;
    long long v = std::strtoll(c, &end, 10);
    if (end == c || *end != '\0')
        throw std::runtime_error("config: bad integer for '" + key + "': " + s);
    return v;
}

using Section = std::map<std::string, std::string>;

NFunctionSpec parse_nfunc(const std::string& name, const Section& sec) {
    NFunctionSpec spec;
    bool have_family = false;
    for (const auto& [k, v] : sec) {
        if (k == "family") {
            spec.family = unquote(v);
            have_family = true;
        } else if (k == "p") {
            spec.p = parse_num(name + ".p", v);
        } else if (k == "q") {
            spec.q = parse_num(name + ".q", v);
        } else {
            throw std::runtime_error("config: unknown key '" + k + "' in [" + name + "]");
        }
    }
    if (!have_family) throw std::runtime_error("config: [" + name + "] needs a family");
    if (spec.family != "power" && spec.family != "piecewise" && spec.family != "powerlog")
        throw std::runtime_error("config: unknown family '" + spec.family + "'");
    return spec;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Section> sections;
    std::string cur;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section header at line " +
                                         std::to_string(lineno));
            cur = trim(line.substr(1, line.size() - 2));
            if (cur != "G" && cur != "B" && cur != "grid" && cur != "solver" && cur != "output")
                throw std::runtime_error("config: unknown section [" + cur + "]");
            sections[cur]; // section may legitimately be empty
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " +
                                     std::to_string(lineno));
        if (cur.empty())
            throw std::runtime_error("config: key outside any section at line " +
                                     std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::runtime_error("config: empty key or value at line " +
                                     std::to_string(lineno));
        if (!sections[cur].emplace(key, val).second)
            throw std::runtime_error("config: duplicate key '" + key + "' in [" + cur + "]");
    }

    RunConfig cfg;
    if (!sections.count("G")) throw std::runtime_error("config: missing [G] section");
    cfg.G = parse_nfunc("G", sections.at("G"));
    if (sections.count("B")) cfg.B = parse_nfunc("B", sections.at("B"));

    if (sections.count("grid")) {
        int dim = 1, n = 60;
        for (const auto& [k, v] : sections.at("grid")) {
            if (k == "dim") dim = int(parse_int("grid.dim", v));
            else if (k == "n") n = int(parse_int("grid.n", v));
            else throw std::runtime_error("config: unknown key '" + k + "' in [grid]");
        }
        try {
            cfg.grid = Grid(dim, n);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("config: ") + e.what());
        }
    }

    if (sections.count("solver")) {
        SolverConfig& s = cfg.solver;
        for (const auto& [k, v] : sections.at("solver")) {
            if (k == "max_iters") s.max_iters = int(parse_int("solver.max_iters", v));
            else if (k == "grad_tol") s.grad_tol = parse_num("solver.grad_tol", v);
            else if (k == "step0") s.step0 = parse_num("solver.step0", v);
            else if (k == "armijo_c") s.armijo_c = parse_num("solver.armijo_c", v);
            else if (k == "backtrack") s.backtrack = parse_num("solver.backtrack", v);
            else if (k == "sphere_tol") s.sphere_tol = parse_num("solver.sphere_tol", v);
            else if (k == "seed") s.seed = std::uint64_t(parse_int("solver.seed", v));
            else if (k == "eps_reg") s.eps_reg = parse_num("solver.eps_reg", v);
            else if (k == "multistart") s.multistart = int(parse_int("solver.multistart", v));
            else throw std::runtime_error("config: unknown key '" + k + "' in [solver]");
        }
    }

    if (sections.count("output")) {
        for (const auto& [k, v] : sections.at("output")) {
            if (k == "dir") cfg.output_dir = unquote(v);
            else throw std::runtime_error("config: unknown key '" + k + "' in [output]");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

void emit_nfunc(std::ostream& os, const char* name, const NFunctionSpec& s) {
    os << '[' << name << "]\n";
    os << "family = \"" << s.family << "\"\n";
    if (s.family != "powerlog") os << "p = " << fmt17(s.p) << '\n';
    if (s.family == "piecewise") os << "q = " << fmt17(s.q) << '\n';
    os << '\n';
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    emit_nfunc(os, "G", cfg.G);
    if (cfg.B) emit_nfunc(os, "B", *cfg.B);
    os << "[grid]\n";
    os << "dim = " << cfg.grid.dim << '\n';
    os << "n = " << cfg.grid.n << "\n\n";
    const SolverConfig& s = cfg.solver;
    os << "[solver]\n";
    os << "max_iters = " << s.max_iters << '\n';
    os << "grad_tol = " << fmt17(s.grad_tol) << '\n';
    os << "step0 = " << fmt17(s.step0) << '\n';
    os << "armijo_c = " << fmt17(s.armijo_c) << '\n';
    os << "backtrack = " << fmt17(s.backtrack) << '\n';
    os << "sphere_tol = " << fmt17(s.sphere_tol) << '\n';
    os << "seed = " << s.seed << '\n';
    os << "eps_reg = " << fmt17(s.eps_reg) << '\n';
    os << "multistart = " << s.multistart << "\n\n";
    os << "[output]\n";
    os << "dir = \"" << cfg.output_dir << "\"\n";
    return os.str();
}

std::string config_echo_json(const RunConfig& cfg) {
    JsonObject root;
    auto nfunc = [](const NFunctionSpec& s) {
        JsonObject o;
        o.add("family", s.family);
        if (s.family != "powerlog") o.add("p", s.p);
        if (s.family == "piecewise") o.add("q", s.q);
        return o;
    };
    root.add("G", nfunc(cfg.G));
    if (cfg.B) root.add("B", nfunc(*cfg.B));
    JsonObject grid;
    grid.add("dim", std::int64_t(cfg.grid.dim));
    grid.add("n", std::int64_t(cfg.grid.n));
    root.add("grid", grid);
    const SolverConfig& s = cfg.solver;
    JsonObject sol;
    sol.add("max_iters", std::int64_t(s.max_iters));
    sol.add("grad_tol", s.grad_tol);
    sol.add("step0", s.step0);
    sol.add("armijo_c", s.armijo_c);
    sol.add("backtrack", s.backtrack);
    sol.add("sphere_tol", s.sphere_tol);
    sol.add("seed", std::int64_t(s.seed));
    sol.add("eps_reg", s.eps_reg);
    sol.add("multistart", std::int64_t(s.multistart));
    root.add("solver", sol);
    JsonObject outp;
    outp.add("dir", cfg.output_dir);
    root.add("output", outp);
    return root.str();
}

} // namespace obh
