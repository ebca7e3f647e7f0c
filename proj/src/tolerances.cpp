#include "hkepler/tolerances.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

#include "hkepler/error.hpp"

namespace hkepler {

void ToleranceProfile::validate() const {
    const std::initializer_list<std::pair<const char*, double>> fields{
        {"fd_tol", fd_tol},           {"drift_tol", drift_tol},     {"identity_tol", identity_tol},
        {"mesh_tol", mesh_tol},       {"bracket_tol", bracket_tol}, {"harmonic_tol", harmonic_tol},
        {"probe_floor", probe_floor}, {"probe_control", probe_control}, {"shadow_tol", shadow_tol},
    };
    for (const auto& [name, value] : fields) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(ErrorCode::invalid_argument, std::string("tolerance ") + name + " must be positive");
        }
    }
}

}  // namespace hkepler
