#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eet/report.hpp"

namespace eet {

/// One line of the experiment verdict: "PASS ..." or "FAIL ...".
struct CheckLine {
    bool passed;
    std::string text;
};

struct ExperimentResult {
    std::string kind;
    ConvergenceReport report;
    std::vector<CheckLine> checks;
    double wall_seconds = 0.0;

    bool passed() const;
};

struct ExperimentInfo {
    std::string kind;
    std::string description;
    std::string verifies;
};

/// The experiment registry, one entry per config kind.
const std::vector<ExperimentInfo>& list_experiments();

/// Runs a parsed, validated config. Throws ConfigError on a malformed config.
ExperimentResult run_experiment(const nlohmann::json& config);

/// summary.md body for a finished experiment.
std::string render_summary(const ExperimentResult& result);

} // namespace eet
