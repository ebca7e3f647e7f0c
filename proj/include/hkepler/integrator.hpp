// hkepler - time integration, drift monitoring and trajectory recording
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkepler/integrals.hpp"
#include "hkepler/types.hpp"

namespace hkepler::integrator {

struct IntegratorConfig {
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    double max_step{0.1};
    double min_step{1e-13};
    double t_end{10.0};
    double sample_interval{0.01};
    /// First trial step; <= 0 selects one automatically.
    double initial_step{0.0};
    /// Pull every accepted state back onto the initial level set of
    /// (H, F1, F2, F3). Off by default.
    bool project{false};
    long max_steps{50'000'000};

    /// Throws invalid_argument when the invariants do not hold.
    void validate() const;
};

enum class Termination {
    completed,
    singularity_approach,
    max_steps,
};

std::string_view to_string(Termination t);

struct Sample {
    double t{0.0};
    CylState state;
    integrals::IntegralValues values;
};

/// Max absolute deviation of each integral from its value at the first sample.
struct Drift {
    double h{0.0};
    double f1{0.0};
    double f2{0.0};
    double f3{0.0};

    [[nodiscard]] double max() const;
};

struct Trajectory {
    std::vector<Sample> samples;
    integrals::IntegralValues integrals_at_start;
    Drift drift;
    PotentialParams params;
    Termination termination{Termination::completed};
    std::string message;
    long accepted_steps{0};
    long rejected_steps{0};
};

/// One classical RK4 step. Throws step_singularity if a stage leaves the
/// admissible region and invalid_argument for dt <= 0.
CylState step_fixed_rk4(const CylState& s, double dt, const PotentialParams& params);

/// Adaptive Dormand-Prince 5(4) integration with PI step control and dense
/// output at cfg.sample_interval. Near a singularity the step is halved; once
/// it falls below cfg.min_step the partial trajectory is returned with
/// Termination::singularity_approach. Throws diverged on non-finite states.
Trajectory integrate(const CylState& s0, const IntegratorConfig& cfg, const PotentialParams& params);

/// Fixed-step RK4 run recording every step (the last step is shortened to
/// land on t_end).
Trajectory integrate_fixed_rk4(const CylState& s0, double dt, double t_end,
                               const PotentialParams& params);

/// Newton projection of s onto the level set of (H, F1, F2, F3) at target,
/// using a minimum-norm correction.
CylState project_to_level_set(const CylState& s, const integrals::IntegralValues& target,
                              const PotentialParams& params);

struct DriftStats {
    double max_abs{0.0};
    double mean_abs{0.0};
};

struct DriftReport {
    std::array<DriftStats, 4> integrals;  // H, F1, F2, F3
    double relation_residual_max{0.0};
    std::size_t samples{0};
    /// Present when the initial energy is negative.
    struct BoundCheck {
        double bound{0.0};      // k / |H|
        double max_gauge{0.0};  // max sqrt(r^4 + 16 z^2)
        bool holds{false};
    };
    std::optional<BoundCheck> boundedness;

    static constexpr std::array<std::string_view, 4> names{"H", "F1", "F2", "F3"};
};

/// Summarizes drift of every integral relative to the first sample. The
/// boundedness verdict allows bound_slack above k / |H|.
DriftReport drift_report(const Trajectory& traj, double bound_slack = 1e-6);

/// Largest relative deviation max_i |I_i(t) - I_i(0)| / max(1, |I_i(0)|).
double relative_drift(const integrals::IntegralValues& now, const integrals::IntegralValues& start);

}  // namespace hkepler::integrator
