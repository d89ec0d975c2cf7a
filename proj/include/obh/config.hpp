#pragma once
// Run configuration: a flat sectioned key-value text format.
// Sections: [G], [B] (optional, defaults to G), [grid], [solver], [output].
#include "obh/eigensolver.hpp"
#include "obh/grid.hpp"
#include "obh/nfunction.hpp"
#include <optional>
#include <string>

namespace obh {

struct NFunctionSpec {
    std::string family = "power"; // "power" | "piecewise" | "powerlog"
    double p = 2.0;
    double q = 2.0; // piecewise only

    NFunction make() const;
    bool operator==(const NFunctionSpec&) const = default;
};

struct RunConfig {
    NFunctionSpec G;
    std::optional<NFunctionSpec> B; // missing: B = G
    Grid grid{1, 60};
    SolverConfig solver;
    std::string output_dir = ".";

    const NFunctionSpec& B_or_G() const { return B ? *B : G; }
    bool operator==(const RunConfig&) const;
};

// Throws std::runtime_error with a "config: ..." message on malformed input.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical form: fixed section and key order, 17 significant digits.
std::string serialize_config(const RunConfig& cfg);

// One-line JSON object used as the config echo inside every output artifact.
std::string config_echo_json(const RunConfig& cfg);

} // namespace obh
