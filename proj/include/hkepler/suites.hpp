// hkepler - invariant suites run by `hkepler verify` and the test harness
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hkepler/integrator.hpp"
#include "hkepler/tolerances.hpp"
#include "hkepler/types.hpp"

namespace hkepler::suites {

struct Check {
    enum class Kind { at_most, at_least };

    std::string name;
    double measured{0.0};
    double threshold{0.0};
    Kind kind{Kind::at_most};
    bool pass{false};
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    [[nodiscard]] bool pass() const;
};

struct SuiteOptions {
    PotentialParams params;
    std::uint64_t seed{20240601};
    ToleranceProfile tol;
    int relation_samples{10000};
    int bracket_samples{1000};
    int pde_samples{100};
    int harmonic_samples{100};
    /// Negative control: replaces F1 by a copy whose potential part has the
    /// wrong sign, so the bracket suite must fail.
    bool corrupt_f1{false};
};

inline constexpr std::string_view kSuiteNames[] = {"relation", "brackets", "appendix", "harmonicity", "probe"};

SuiteResult relation_suite(const SuiteOptions& opt);
SuiteResult bracket_suite(const SuiteOptions& opt);
SuiteResult appendix_suite(const SuiteOptions& opt);
SuiteResult harmonicity_suite(const SuiteOptions& opt);
SuiteResult probe_suite(const SuiteOptions& opt);

/// Runs the suite called name. Throws invalid_argument for unknown names.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opt);

/// Five trajectories from (x, y, z) = (1, 0, 0), p_X = 0 with
/// p_Y in {0.1, ..., 0.5}, integrated to t = 20.
std::vector<integrator::Trajectory> probe_ensemble(const PotentialParams& params);

}  // namespace hkepler::suites
