#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seclab/reductions.hpp"
#include "seclab/stats.hpp"

namespace seclab {

constexpr const char* kToolVersion = "seclab 0.1.0";
constexpr const char* kSchemaVersion = "1";

/// One experiment cell. Exactly one of `trials` or (`epsilon`, `delta`)
/// in Monte Carlo mode; neither in exact mode.
struct RunConfig {
    std::string game = "ind"; // ind | css
    std::string atk = "cpa";  // cpa | cca1 | cca2
    std::string scheme;
    std::string adversary;
    std::string sampler = "uniform"; // css only
    int k = 4;
    bool exact = false;
    std::optional<uint64_t> trials;
    std::optional<double> epsilon;
    std::optional<double> delta;
    uint64_t seed = 1;

    // reduce command only
    std::string direction;                // css_from_ind | ind_from_css
    std::string tie_break = "coinflip";   // coinflip | last_if

    void validate(bool reduction = false) const;
    uint64_t trials_per_arm() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

AttackModel parse_atk(const std::string& s);
GameKind parse_game(const std::string& s);
TieBreakMode parse_tie_break(const std::string& s);

/// GameSpec for a validated config.
GameSpec spec_from_config(const RunConfig& cfg);

// Harness commands. Each returns a complete report document; the CLI
// echoes it and optionally writes it to a file.
nlohmann::json run_single(const RunConfig& cfg);
nlohmann::json run_reduction_check(const RunConfig& cfg);

struct SweepConfig {
    RunConfig base;
    std::vector<int> k_list;
    double c = 2.0;
};
nlohmann::json run_sweep(const SweepConfig& cfg);

/// Matrix document: {"cells": [run-config, ...]}. Each cell runs
/// independently (failures recorded per cell), concurrently up to the
/// SECLAB_WORKERS cap.
struct MatrixOutcome {
    nlohmann::json report;
    int exit_code; // 0 all ok, 1 some cells failed, 2 unparseable
};
MatrixOutcome run_matrix(const nlohmann::json& matrix_config);

/// Report body for reproducibility comparisons: the document minus the
/// wall-clock field, canonically serialized.
std::string report_body(const nlohmann::json& report);

/// Re-run the embedded config of a single-cell report.
nlohmann::json rerun_report(const nlohmann::json& report);

} // namespace seclab
