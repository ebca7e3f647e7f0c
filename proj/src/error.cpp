#include "hkepler/error.hpp"

namespace hkepler {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::axis_singularity: return "axis-singularity";
        case ErrorCode::origin_singularity: return "origin-singularity";
        case ErrorCode::step_singularity: return "step-singularity";
        case ErrorCode::diverged: return "diverged";
        case ErrorCode::invalid_case: return "invalid-case";
        case ErrorCode::out_of_range: return "out-of-range";
        case ErrorCode::no_stationary_solution: return "no-stationary-solution";
        case ErrorCode::inconsistent_state: return "inconsistent-state";
        case ErrorCode::invalid_ensemble: return "invalid-ensemble";
        case ErrorCode::config: return "config";
    }
    return "unknown";
}

}  // namespace hkepler
