// hkepler - command-line front end
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hkepler/cli/commands.hpp"
#include "hkepler/cli/config.hpp"
#include "hkepler/cli/logging.hpp"

namespace {

using hkepler::cli::Json;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> k;
    std::optional<double> t_end;
    std::optional<double> rel_tol;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON configuration file");
    cmd->add_option("--seed", c.seed, "seed for every random stream");
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--k", c.k, "potential strength k > 0");
    cmd->add_option("--t-end", c.t_end, "integration end time");
    cmd->add_option("--rel-tol", c.rel_tol, "integrator relative tolerance");
    cmd->add_option("--set", c.sets, "override a config key: key=value (JSON pointer or dotted path)");
}

// Config file first, then flags on top.
Json build_config(const Common& c) {
    Json doc = c.config.empty() ? Json::object() : hkepler::cli::load_json_file(c.config);
    if (c.seed) doc["seed"] = *c.seed;
    if (c.out) doc["out"] = *c.out;
    if (c.k) doc["k"] = *c.k;
    if (c.t_end) doc["integrator"]["t_end"] = *c.t_end;
    if (c.rel_tol) doc["integrator"]["rel_tol"] = *c.rel_tol;
    for (const auto& s : c.sets) hkepler::cli::apply_override(doc, s);
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    hkepler::cli::init_logging();

    CLI::App app{"hkepler: nonholonomic Kepler problem on the Heisenberg group"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HKEPLER_VERSION);

    Common common;
    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory and report integral drift");
    auto* surface = app.add_subcommand("surface", "sample an invariant surface and its z = 0 trace");
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    auto* special = app.add_subcommand("special", "closed-form special solutions");
    auto* sweep = app.add_subcommand("sweep", "grid of simulations with a summary table");
    auto* recipe = app.add_subcommand("recipe", "run a reproduction recipe (or 'all')");
    for (auto* cmd : {simulate, surface, verify, special, sweep}) add_common(cmd, common);

    bool corrupt = false;
    std::vector<std::string> suite_names;
    verify->add_flag("--corrupt-f1", corrupt, "negative control: corrupt F1 before checking it");
    verify->add_option("--suite", suite_names, "suite to run (repeatable)");

    std::string kind;
    special->add_option("kind", kind, "stationary | heteroclinic | radial")->required();

    std::optional<std::size_t> threads;
    sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

    std::string recipe_name;
    std::string recipes_dir = "recipes";
    std::string recipe_out = "out/recipes";
    recipe->add_option("name", recipe_name, "recipe id or 'all'")->required();
    recipe->add_option("--recipes-dir", recipes_dir, "directory holding the recipe files");
    recipe->add_option("--out", recipe_out, "output root");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(hkepler::cli::ExitCode::config_error);
    }

    hkepler::cli::Outcome outcome;
    if (recipe->parsed()) {
        outcome = hkepler::cli::guarded([&] { return hkepler::cli::recipe_run(recipe_name, recipes_dir, recipe_out); });
    } else {
        CLI::App* cmd = app.get_subcommands().front();
        outcome = hkepler::cli::guarded([&] {
            Json doc = build_config(common);
            if (cmd == verify) {
                if (corrupt) doc["verify"]["corrupt_f1"] = true;
                if (!suite_names.empty()) doc["verify"]["suites"] = suite_names;
            }
            if (cmd == special) doc["special"]["kind"] = kind;
            if (cmd == sweep && threads) doc["sweep"]["threads"] = *threads;
            return hkepler::cli::run_command(cmd->get_name(), doc);
        });
    }
    hkepler::cli::print_summary(outcome.report, std::cout);
    return outcome.exit_code;
}
