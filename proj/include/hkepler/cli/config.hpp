// hkepler - JSON run configuration
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hkepler/integrator.hpp"
#include "hkepler/tolerances.hpp"
#include "hkepler/types.hpp"

namespace hkepler::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Parsed common part of every command's configuration. The raw document is
/// kept for the command-specific sections.
struct RunConfig {
    PotentialParams params;
    std::uint64_t seed{kDefaultSeed};
    std::filesystem::path out{"out"};
    std::optional<CartState> cartesian;
    std::optional<CylState> cylindrical;
    integrator::IntegratorConfig integrator;
    ToleranceProfile tol;
    Json raw;

    [[nodiscard]] bool has_initial() const { return cartesian.has_value() || cylindrical.has_value(); }
    /// Cylindrical initial state. Throws config when none is given.
    [[nodiscard]] CylState initial_state() const;
};

/// Keys: k, seed, out, initial.{cartesian|cylindrical}, integrator, tolerances.
/// Throws Error(config) on malformed input.
RunConfig parse_run_config(const Json& doc);

Json load_json_file(const std::filesystem::path& path);

/// "/a/b" is taken as is; "a.b" becomes "/a/b". Throws config when malformed.
Json::json_pointer config_pointer(std::string_view key);

/// Applies "key=value" to doc. The key is a JSON pointer ("/a/b") or a dotted
/// path ("a.b"); the value is parsed as JSON and kept as a string otherwise.
void apply_override(Json& doc, std::string_view assignment);

ToleranceProfile parse_tolerances(const Json& section, ToleranceProfile base = {});
Json to_json(const ToleranceProfile& tol);

/// Fields every report starts with: command, version, seed, tolerances.
Json report_header(const RunConfig& cfg, std::string_view command);

}  // namespace hkepler::cli
