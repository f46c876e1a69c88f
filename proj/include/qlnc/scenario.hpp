#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlnc/errors.hpp"

namespace qlnc {

// Parsed form of a CLI invocation: a scenario name followed by key=value
// flags. Scenario-specific argument completeness is checked before any
// work happens.
struct ScenarioConfig {
    std::string scenario;
    int k = 0;
    std::int64_t n_b = -1;
    std::uint64_t seed = 0;
    bool oracle = false;
    int latency_constant = 3;
    std::string net_path;  // file path or builtin name for decompose/validate
    std::string dec_path;
    std::string out_path;
    std::string b1, b2;  // butterfly input streams
};

ScenarioConfig parse_scenario_args(const std::vector<std::string>& args);

struct ScenarioOutcome {
    int exit_code = 0;  // 0 ok, 1 invariant violation, 2 bad config
    std::string stdout_text;
    std::map<std::string, std::string> artifacts;  // path -> bytes written
};

// Runs the scenario; machine-readable artifacts are written to the given
// output path and also returned verbatim. Identical config and seed yield
// byte-identical outcomes.
ScenarioOutcome run_scenario(const ScenarioConfig& config);

}  // namespace qlnc
