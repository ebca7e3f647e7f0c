// hkepler - command implementations behind the hkepler executable
#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hkepler/cli/config.hpp"
#include "hkepler/error.hpp"

namespace hkepler::cli {

enum class ExitCode : int {
    ok = 0,
    verification_failure = 1,
    config_error = 2,
    singularity = 3,
};

struct Outcome {
    int exit_code{0};
    Json report;
};

int exit_code_for(ErrorCode code);

/// Runs body and turns exceptions into an Outcome whose report carries
/// "error" and "error_code".
Outcome guarded(const std::function<Outcome()>& body);

/// Integrates the initial state; writes trajectory.csv, trajectory.gp and
/// report.json to the output directory. Exit 3 on singularity termination.
Outcome cmd_simulate(const Json& config);

/// Samples the invariant surface given by "surface": {h, f3, theta0} or by the
/// initial state; writes mesh.csv, surface.gp and report.json.
Outcome cmd_surface(const Json& config);

/// Runs the invariant suites listed in "verify": {suites: [...]}; exit 1 if
/// any check fails.
Outcome cmd_verify(const Json& config);

/// Closed-form tables; "special": {kind: stationary|heteroclinic|radial, ...}.
Outcome cmd_special(const Json& config);

/// Grid of simulate runs; "sweep": {grid: {key: [values...]}, threads: n}.
Outcome cmd_sweep(const Json& config);

/// Dispatch by command name; unknown names are config errors.
Outcome run_command(std::string_view command, const Json& config);

/// Names of the recipe files (*.json) in dir, sorted.
std::vector<std::string> recipe_names(const std::filesystem::path& dir);

/// Runs recipe name from dir into out_root / name and checks its thresholds.
/// "all" runs every recipe. Unknown names are config errors.
Outcome recipe_run(std::string_view name, const std::filesystem::path& dir, const std::filesystem::path& out_root);

/// One line per check found in the report, then the error if any.
void print_summary(const Json& report, std::ostream& os);

}  // namespace hkepler::cli
