#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbdt/core.hpp"
#include "gbdt/grid.hpp"

namespace gbdt::cli {

/// Everything a run needs, merged from defaults, environment, config file
/// and flags (in that order of increasing precedence). Complex scalars in
/// JSON are bare numbers or [re, im]; matrices are nested row arrays.
struct RunConfig {
    std::string preset;  // "", "ee2", "ee3" or "ee36"
    double b = 1.0;
    double c = 0.0;
    double d = 1.0;
    std::optional<ComplexMatrix> a;
    std::optional<ComplexMatrix> s0;
    std::optional<ComplexMatrix> theta1;
    std::optional<ComplexMatrix> theta2;
    std::optional<ComplexMatrix> q;
    GridSpec grid{0.1, 5.0, 0.1};
    GridSpec tgrid{0.0, 1.0, 0.1};
    std::vector<Complex> lambdas{Complex(1.0, 0.0)};
    std::optional<ComplexVector> f0;
    std::string out;  // empty writes to stdout
    bool verify = false;
    double tol_identity = 1e-9;
    double tol_residual = 1e-6;  // floor of the finite-difference bounds

    Tolerances tolerances() const {
        Tolerances t;
        t.identity_tol = tol_identity;
        return t;
    }
};

/// Applies a JSON config body over cfg. Unknown keys are rejected so typos
/// fail loudly. Throws std::invalid_argument on malformed input.
void apply_config_json(RunConfig& cfg, const std::string& text);

/// Comma-separated real values for the --lambda flag.
std::vector<Complex> parse_lambda_list(const std::string& text);

/// Canonical JSON for a preset, usable as a --config body.
std::string preset_config_json(const std::string& id);

}  // namespace gbdt::cli
