#pragma once

#include <ostream>
#include <string>

#include "gbdt/config.hpp"
#include "gbdt/core.hpp"

namespace gbdt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceBreach = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericFailure = 3;

/// Run objects resolved from a config: the triple (preset or explicit),
/// its dressing and the S evaluator.
struct Model {
    Triple triple;
    Dressing dressing;
    SMatrixEngine engine;
    Tolerances tol;
};

Model resolve_model(const RunConfig& cfg);

/// Admissibility report: identity residual, hermiticity, spec(A), root
/// defect and the chosen S route. Exit 1 when the identity fails.
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// CSV of u(x) over the grid; singular points become SINGULAR rows.
/// --verify appends an identity-propagation sweep.
int cmd_potential(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// CSV of the transformed solution for every lambda; spectral-point
/// lambdas are reported on err and skipped. --verify appends a
/// finite-difference residual report per lambda.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// CSV of the time-dependent solution over grid x tgrid.
int cmd_dynamic(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// CSV of the KdV solution over grid x tgrid.
int cmd_kdv(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full verification suite: admissibility, identity propagation, and the
/// three equation residuals. Exit 1 when any check fails its bound.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Prints the canonical JSON config of a preset.
int cmd_example(const std::string& id, std::ostream& out, std::ostream& err);

}  // namespace gbdt::cli
