#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eet/errors.hpp"
#include "eet/experiments.hpp"

namespace {

int cmd_list(bool as_json) {
    const auto& kinds = eet::list_experiments();
    if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& k : kinds)
            out.push_back({{"kind", k.kind},
                           {"description", k.description},
                           {"verifies", k.verifies}});
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (const auto& k : kinds) {
        std::cout << k.kind << "\n  " << k.description << "\n  checks: " << k.verifies
                  << "\n";
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::int64_t seed_override, bool have_seed) {
    nlohmann::json cfg;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << config_path << "\n";
            return 2;
        }
        try {
            in >> cfg;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }
    if (have_seed) cfg["seed"] = seed_override;

    eet::ExperimentResult result;
    try {
        result = eet::run_experiment(cfg);
    } catch (const eet::ConfigError& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return 2;
    } catch (const eet::Error& e) {
        std::cerr << "error: experiment failed: " << e.what() << "\n";
        return 1;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory: " << out_dir << "\n";
        return 2;
    }
    {
        std::ofstream csv(std::filesystem::path(out_dir) / "report.csv");
        result.report.write_csv(csv);
    }
    {
        std::ofstream md(std::filesystem::path(out_dir) / "summary.md");
        md << eet::render_summary(result);
    }

    for (const auto& c : result.checks)
        std::cout << (c.passed ? "PASS" : "FAIL") << ": " << c.text << "\n";
    std::cout << (result.passed() ? "OK" : "FAILED") << " (" << result.kind << ")\n";
    return result.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for entangled and diagonal-measure ergodic averages"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List available experiment kinds");
    bool as_json = false;
    list->add_flag("--json", as_json, "Emit the list as JSON");

    auto* run = app.add_subcommand("run", "Run one experiment config");
    std::string config_path, out_dir;
    std::int64_t seed = 0;
    int threads = 1;
    run->add_option("config", config_path, "Path to a JSON experiment config")->required();
    run->add_option("--out", out_dir, "Output directory for report.csv and summary.md")
        ->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--threads", threads, "Worker threads (currently single-threaded)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list->parsed()) return cmd_list(as_json);
    return cmd_run(config_path, out_dir, seed, seed_opt->count() > 0);
}
