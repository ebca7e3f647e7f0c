// hkepler - error reporting
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hkepler {

enum class ErrorCode {
    invalid_argument,
    axis_singularity,
    origin_singularity,
    step_singularity,
    diverged,
    invalid_case,
    out_of_range,
    no_stationary_solution,
    inconsistent_state,
    invalid_ensemble,
    config,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. All library failures go
/// through this type so the command layer can map them to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hkepler
