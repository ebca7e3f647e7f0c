#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "hkepler/cli/commands.hpp"
#include "hkepler/cli/output.hpp"

namespace hkepler::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::config, what); }

double resolve_threshold(const Json& spec, const Json& tolerances) {
    if (spec.is_number()) return spec.get<double>();
    if (spec.is_string() && tolerances.contains(spec.get<std::string>())) {
        return tolerances.at(spec.get<std::string>()).get<double>();
    }
    fail("threshold must be a number or a tolerance name, got " + spec.dump());
}

// One check of a recipe step against the step's report.
Json evaluate_check(const Json& check, const Json& report, const Json& tolerances, const std::string& label) {
    if (!check.contains("path") || !check.at("path").is_string()) fail("recipe check needs a 'path'");
    const auto path = check.at("path").get<std::string>();
    const Json::json_pointer ptr(path);
    Json result{{"path", path}};
    if (!report.contains(ptr)) {
        result["pass"] = false;
        result["description"] = label + " " + path + " missing from report";
        return result;
    }
    const Json& value = report.at(ptr);
    result["measured"] = value;
    bool pass = false;
    std::string desc = label + " " + path + " = " + (value.is_number() ? fmt(value.get<double>()) : value.dump());
    if (check.contains("at_most")) {
        const double thr = resolve_threshold(check.at("at_most"), tolerances);
        pass = value.is_number() && value.get<double>() <= thr;
        desc += " <= " + fmt(thr);
        result["threshold"] = thr;
    } else if (check.contains("at_least")) {
        const double thr = resolve_threshold(check.at("at_least"), tolerances);
        pass = value.is_number() && value.get<double>() >= thr;
        desc += " >= " + fmt(thr);
        result["threshold"] = thr;
    } else if (check.contains("near")) {
        const double target = check.at("near").get<double>();
        const double tol = resolve_threshold(check.value("tol", Json(0.0)), tolerances);
        pass = value.is_number() && std::abs(value.get<double>() - target) <= tol;
        desc += " ~ " + fmt(target) + " +- " + fmt(tol);
        result["target"] = target;
        result["threshold"] = tol;
    } else if (check.contains("equals")) {
        pass = value == check.at("equals");
        desc += " == " + check.at("equals").dump();
    } else {
        fail("recipe check on " + path + " has no comparison");
    }
    result["pass"] = pass;
    result["description"] = desc;
    return result;
}

Outcome run_single(const std::string& name, const std::filesystem::path& dir, const std::filesystem::path& out_root) {
    const auto file = dir / (name + ".json");
    if (!std::filesystem::exists(file)) fail("unknown recipe '" + name + "'");
    const Json recipe = load_json_file(file);
    const ToleranceProfile tol = parse_tolerances(recipe.value("tolerances", Json()));
    const Json tol_json = to_json(tol);
    if (!recipe.contains("steps") || !recipe.at("steps").is_array()) fail("recipe '" + name + "' has no steps");

    Json checks = Json::array();
    bool all = true;
    std::size_t index = 0;
    for (const auto& step : recipe.at("steps")) {
        ++index;
        const auto command = step.at("command").get<std::string>();
        Json cfg = step.value("config", Json::object());
        cfg["tolerances"] = tol_json;
        if (!cfg.contains("seed")) cfg["seed"] = recipe.value("seed", kDefaultSeed);
        cfg["out"] = (out_root / name / (std::to_string(index) + "-" + command)).string();
        spdlog::info("recipe {}: step {} ({})", name, index, command);
        const Outcome o = guarded([&] { return run_command(command, cfg); });

        const std::string label = name + "#" + std::to_string(index);
        const int expect = step.value("expect_exit", 0);
        Json exit_check{{"path", "exit_code"},
                        {"measured", o.exit_code},
                        {"pass", o.exit_code == expect},
                        {"description", label + " " + command + " exit code " + std::to_string(o.exit_code) +
                                            " == " + std::to_string(expect)}};
        all = all && o.exit_code == expect;
        checks.push_back(exit_check);
        for (const auto& check : step.value("checks", Json::array())) {
            Json r = evaluate_check(check, o.report, tol_json, label);
            all = all && r["pass"].get<bool>();
            checks.push_back(std::move(r));
        }
    }

    Json rep{{"recipe", name},
             {"description", recipe.value("description", "")},
             {"tolerances", tol_json},
             {"checks", checks},
             {"pass", all}};
    write_json(out_root / name / "recipe_report.json", rep);
    return {all ? 0 : static_cast<int>(ExitCode::verification_failure), rep};
}

}  // namespace

std::vector<std::string> recipe_names(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    if (!std::filesystem::is_directory(dir)) fail("recipe directory '" + dir.string() + "' does not exist");
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

Outcome recipe_run(std::string_view name, const std::filesystem::path& dir, const std::filesystem::path& out_root) {
    if (name != "all") return run_single(std::string(name), dir, out_root);
    Json list = Json::array();
    Json checks = Json::array();
    int code = 0;
    for (const auto& n : recipe_names(dir)) {
        const Outcome o = guarded([&] { return run_single(n, dir, out_root); });
        list.push_back({{"name", n}, {"pass", o.exit_code == 0}, {"exit_code", o.exit_code}});
        for (const auto& c : o.report.value("checks", Json::array())) checks.push_back(c);
        code = std::max(code, o.exit_code);
    }
    Json rep{{"checks", checks}, {"recipes", list}, {"pass", code == 0}};
    write_json(out_root / "recipes_report.json", rep);
    return {code, rep};
}

}  // namespace hkepler::cli
