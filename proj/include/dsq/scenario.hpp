#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dsq/config.hpp"
#include "dsq/csv.hpp"
#include "dsq/model.hpp"

namespace dsq {

// command: rates | decay | driven | steady | gpe-boundstates | gpe-multisoliton
struct Scenario {
    std::string name;
    std::string command;
    ModelParams params;
    Config settings;  // command-specific keys, see README
};

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 0;  // 0 = hardware concurrency
    long points = 0;       // > 0 overrides the scenario's point count
    std::uint64_t seed = 0;
};

struct RunSummary {
    std::vector<std::filesystem::path> files;
    MetaList summary;
};

std::vector<std::string> preset_names();

// Built-in figure scenarios; throws ParameterError for unknown names.
Scenario preset(std::string_view name);

// Scenario for a bare subcommand; settings and model keys come from `cfg`.
Scenario make_scenario(std::string_view command, const Config& cfg, std::string name = {});

// Overlays `cfg` on a preset (model keys and settings).
Scenario with_overrides(Scenario s, const Config& cfg);

RunSummary run_scenario(const Scenario& s, const RunOptions& opt = {});

struct ValidationReport {
    MetaList entries;
    bool qubit_window_ok = false;
    std::string text() const;  // one key=value per line
};

ValidationReport validate_params(const ModelParams& p);

}  // namespace dsq
