#include "hkepler/cli/config.hpp"

#include <fstream>
#include <string>

#include "hkepler/geometry.hpp"

#ifndef HKEPLER_VERSION
#define HKEPLER_VERSION "unknown"
#endif

namespace hkepler::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::config, what); }

double number(const Json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

double required(const Json& j, const char* key, const char* section) {
    if (!j.contains(key)) fail(std::string(section) + " needs '" + key + "'");
    return number(j, key, 0.0);
}

}  // namespace

Json::json_pointer config_pointer(std::string_view key) {
    if (key.empty()) fail("empty override key");
    if (key.front() == '/') return Json::json_pointer(std::string(key));
    std::string ptr;
    std::size_t start = 0;
    while (start <= key.size()) {
        const auto dot = key.find('.', start);
        const auto part = key.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (part.empty()) fail("malformed override key '" + std::string(key) + "'");
        ptr += '/';
        ptr += part;
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return Json::json_pointer(ptr);
}

CylState RunConfig::initial_state() const {
    if (cylindrical) return *cylindrical;
    if (cartesian) return geometry::to_cylindrical(*cartesian);
    fail("configuration has no initial state");
}

ToleranceProfile parse_tolerances(const Json& section, ToleranceProfile base) {
    if (section.is_null()) return base;
    if (!section.is_object()) fail("'tolerances' must be an object");
    for (const auto& [key, value] : section.items()) {
        if (key == "profile_version") {
            if (value != std::string(ToleranceProfile::version)) fail("tolerance profile version mismatch");
            continue;
        }
        if (!value.is_number()) fail("tolerance '" + key + "' must be a number");
        const double v = value.get<double>();
        if (key == "fd_tol") base.fd_tol = v;
        else if (key == "drift_tol") base.drift_tol = v;
        else if (key == "identity_tol") base.identity_tol = v;
        else if (key == "mesh_tol") base.mesh_tol = v;
        else if (key == "bracket_tol") base.bracket_tol = v;
        else if (key == "harmonic_tol") base.harmonic_tol = v;
        else if (key == "probe_floor") base.probe_floor = v;
        else if (key == "probe_control") base.probe_control = v;
        else if (key == "shadow_tol") base.shadow_tol = v;
        else fail("unknown tolerance '" + key + "'");
    }
    try {
        base.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    return base;
}

Json to_json(const ToleranceProfile& tol) {
    return Json{
        {"profile_version", std::string(ToleranceProfile::version)},
        {"fd_tol", tol.fd_tol},
        {"drift_tol", tol.drift_tol},
        {"identity_tol", tol.identity_tol},
        {"mesh_tol", tol.mesh_tol},
        {"bracket_tol", tol.bracket_tol},
        {"harmonic_tol", tol.harmonic_tol},
        {"probe_floor", tol.probe_floor},
        {"probe_control", tol.probe_control},
        {"shadow_tol", tol.shadow_tol},
    };
}

RunConfig parse_run_config(const Json& doc) {
    if (!doc.is_object()) fail("configuration must be a JSON object");
    RunConfig cfg;
    cfg.raw = doc;
    const double k = number(doc, "k", 1.0);
    if (!(k > 0.0)) fail("k must be positive");
    cfg.params = PotentialParams(k);
    if (doc.contains("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_integer()) fail("'seed' must be an unsigned integer");
        if (s.is_number_unsigned()) {
            cfg.seed = s.get<std::uint64_t>();
        } else {
            const auto v = s.get<std::int64_t>();
            if (v < 0) fail("'seed' must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(v);
        }
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) fail("'out' must be a string");
        cfg.out = doc.at("out").get<std::string>();
    }

    if (doc.contains("initial")) {
        const auto& init = doc.at("initial");
        if (!init.is_object()) fail("'initial' must be an object");
        const bool cart = init.contains("cartesian");
        const bool cyl = init.contains("cylindrical");
        if (cart == cyl) fail("'initial' needs exactly one of 'cartesian' or 'cylindrical'");
        if (cart) {
            const auto& c = init.at("cartesian");
            cfg.cartesian = CartState{{required(c, "x", "cartesian"), required(c, "y", "cartesian"),
                                       required(c, "z", "cartesian")},
                                      required(c, "p_x", "cartesian"),
                                      required(c, "p_y", "cartesian")};
        } else {
            const auto& c = init.at("cylindrical");
            cfg.cylindrical = CylState{required(c, "r", "cylindrical"), required(c, "theta", "cylindrical"),
                                       required(c, "z", "cylindrical"), required(c, "p_r", "cylindrical"),
                                       required(c, "p_s", "cylindrical")};
        }
    }

    if (doc.contains("integrator")) {
        const auto& in = doc.at("integrator");
        if (!in.is_object()) fail("'integrator' must be an object");
        auto& ic = cfg.integrator;
        ic.rel_tol = number(in, "rel_tol", ic.rel_tol);
        ic.abs_tol = number(in, "abs_tol", ic.abs_tol);
        ic.max_step = number(in, "max_step", ic.max_step);
        ic.min_step = number(in, "min_step", ic.min_step);
        ic.t_end = number(in, "t_end", ic.t_end);
        ic.sample_interval = number(in, "sample_interval", ic.sample_interval);
        ic.initial_step = number(in, "initial_step", ic.initial_step);
        if (in.contains("project")) {
            if (!in.at("project").is_boolean()) fail("'project' must be a boolean");
            ic.project = in.at("project").get<bool>();
        }
        if (in.contains("max_steps")) {
            if (!in.at("max_steps").is_number_integer()) fail("'max_steps' must be an integer");
            ic.max_steps = in.at("max_steps").get<long>();
        }
        try {
            ic.validate();
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    if (doc.contains("tolerances")) cfg.tol = parse_tolerances(doc.at("tolerances"));
    return cfg;
}

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail("'" + path.string() + "': " + e.what());
    }
}

void apply_override(Json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) fail("override '" + std::string(assignment) + "' is not key=value");
    const auto ptr = config_pointer(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    try {
        doc[ptr] = value;
    } catch (const Json::exception& e) {
        fail("cannot apply override '" + std::string(assignment) + "': " + e.what());
    }
}

Json report_header(const RunConfig& cfg, std::string_view command) {
    return Json{
        {"command", std::string(command)},
        {"version", HKEPLER_VERSION},
        {"seed", cfg.seed},
        {"k", cfg.params.k()},
        {"tolerances", to_json(cfg.tol)},
    };
}

}  // namespace hkepler::cli
