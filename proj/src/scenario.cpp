#include "qlnc/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qlnc/decomposition.hpp"
#include "qlnc/network.hpp"
#include "qlnc/protocol.hpp"

namespace qlnc {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kScenarios = {
    "fig1",          "butterfly",        "prop1-combined", "prop1-qlnc-only",
    "prop1-superdense-only", "prop1-compare", "decompose",  "validate"};

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw BadConfigError(key + ": not an integer: '" + value + "'");
    }
}

BitStream parse_stream(const std::string& key, const std::string& text) {
    BitStream out;
    for (const char c : text) {
        if (c != '0' && c != '1') {
            throw BadConfigError(key + ": streams are strings of 0/1 digits");
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

std::string stream_str(const BitStream& s) {
    std::string out;
    for (const std::uint8_t b : s) out += static_cast<char>('0' + b);
    return out;
}

void require(bool cond, const std::string& message) {
    if (!cond) throw BadConfigError(message);
}

Network network_by_name(const ScenarioConfig& cfg) {
    if (cfg.net_path == "two-node-loop") return build_two_node_loop();
    if (cfg.net_path == "butterfly") return build_butterfly();
    if (cfg.net_path == "prop1") {
        require(cfg.k >= 2, "net=prop1 needs k>=2");
        return build_kpair_bottleneck(cfg.k);
    }
    return load_network(cfg.net_path);
}

std::string approx(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f",
                  static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()));
    return buf;
}

void emit_artifact(ScenarioOutcome& outcome, const std::string& path,
                   const std::string& bytes) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << bytes;
    outcome.artifacts[path] = bytes;
}

RunOptions options_of(const ScenarioConfig& cfg) {
    RunOptions opts;
    opts.seed = cfg.seed;
    opts.latency_constant = cfg.latency_constant;
    opts.with_oracle = cfg.oracle;
    return opts;
}

void single_run_scenario(const ScenarioConfig& cfg, ScenarioOutcome& outcome) {
    RunResult res = [&] {
        const RunOptions opts = options_of(cfg);
        if (cfg.scenario == "fig1") return run_fig1_loop(cfg.n_b, opts);
        if (cfg.scenario == "prop1-combined") return run_combined(cfg.k, cfg.n_b, opts);
        if (cfg.scenario == "prop1-qlnc-only") return run_qlnc_only(cfg.k, cfg.n_b, opts);
        return run_superdense_only(cfg.k, cfg.n_b, opts);
    }();
    outcome.stdout_text = res.report.to_table();
    emit_artifact(outcome, cfg.out_path, res.report.to_json());
}

void compare_scenario(const ScenarioConfig& cfg, ScenarioOutcome& outcome) {
    const RunOptions opts = options_of(cfg);
    const RunResult combined = run_combined(cfg.k, cfg.n_b, opts);
    const RunResult qlnc = run_qlnc_only(cfg.k, cfg.n_b, opts);
    const RunResult dense = run_superdense_only(cfg.k, cfg.n_b, opts);

    std::ostringstream out;
    out << "mode                     elapsed   avg_rate        steady   literal_elapsed\n";
    const auto row = [&out](const ThroughputReport& r) {
        char line[160];
        std::snprintf(line, sizeof line, "%-24s %-9lld %-15s %-8s %s\n", r.mode.c_str(),
                      static_cast<long long>(r.elapsed_steps),
                      rational_str(r.avg_rate).c_str(), rational_str(r.steady_rate).c_str(),
                      r.paper_literal_elapsed ? rational_str(*r.paper_literal_elapsed).c_str()
                                              : "-");
        out << line;
    };
    row(combined.report);
    row(qlnc.report);
    row(dense.report);
    const Rational ratio_qlnc(qlnc.report.elapsed_steps, combined.report.elapsed_steps);
    const Rational ratio_dense(dense.report.elapsed_steps, combined.report.elapsed_steps);
    out << "separation: qlnc/combined = " << rational_str(ratio_qlnc) << " (~"
        << approx(ratio_qlnc) << "), superdense/combined = " << rational_str(ratio_dense)
        << " (~" << approx(ratio_dense) << ")\n";
    outcome.stdout_text = out.str();

    ordered_json j;
    j["reports"] = ordered_json::array();
    j["reports"].push_back(ordered_json::parse(combined.report.to_json()));
    j["reports"].push_back(ordered_json::parse(qlnc.report.to_json()));
    j["reports"].push_back(ordered_json::parse(dense.report.to_json()));
    j["ratios"]["qlnc_over_combined"] = rational_str(ratio_qlnc);
    j["ratios"]["superdense_over_combined"] = rational_str(ratio_dense);
    emit_artifact(outcome, cfg.out_path, j.dump(2) + "\n");
}

void butterfly_scenario(const ScenarioConfig& cfg, ScenarioOutcome& outcome) {
    const BitStream b1 = parse_stream("b1", cfg.b1.empty() ? "1011" : cfg.b1);
    const BitStream b2 = parse_stream("b2", cfg.b2.empty() ? "0110" : cfg.b2);
    if (b1.size() != b2.size()) {
        throw BadConfigError("butterfly: b1 and b2 must have equal length");
    }
    const ButterflyResult res = run_butterfly(b1, b2);

    std::int64_t bottleneck_bits = 0;
    const auto mid = res.net->find_link("m1", "m2", LinkKind::Classical);
    for (const TrafficRecord& rec : res.traffic.records()) {
        if (rec.link == *mid) ++bottleneck_bits;
    }
    std::ostringstream out;
    out << "b1 in:           " << stream_str(b1) << "\n";
    out << "b2 in:           " << stream_str(b2) << "\n";
    out << "out1:            " << stream_str(res.out1) << "\n";
    out << "out2:            " << stream_str(res.out2) << "\n";
    out << "elapsed_steps:   " << res.elapsed_steps << "\n";
    out << "bottleneck bits: " << bottleneck_bits << " (1 per step)\n";
    outcome.stdout_text = out.str();
    if (res.out1 != b1 || res.out2 != b2) {
        outcome.exit_code = 1;
        outcome.stdout_text += "error: delivered streams differ from the inputs\n";
        return;
    }

    ordered_json j;
    j["b1"] = stream_str(b1);
    j["b2"] = stream_str(b2);
    j["out1"] = stream_str(res.out1);
    j["out2"] = stream_str(res.out2);
    j["elapsed_steps"] = res.elapsed_steps;
    j["bottleneck_bits"] = bottleneck_bits;
    emit_artifact(outcome, cfg.out_path, j.dump(2) + "\n");
}

void decompose_scenario(const ScenarioConfig& cfg, ScenarioOutcome& outcome) {
    const Network net = network_by_name(cfg);
    const Decomposition d = find_decomposition_greedy(net);
    const RateSummary rate = achieved_rate(net, d);
    std::ostringstream out;
    out << "w_tilde:   " << rational_str(rate.w_tilde) << "\n";
    out << "w:         " << rational_str(rate.w) << "\n";
    out << "achieved:  " << rational_str(rate.achieved) << " (~" << approx(rate.achieved)
        << ")\n";
    out << "c1 edges:  " << d.c1.size() << "\n";
    out << "c2 edges:  " << d.c2.size() << "\n";
    out << "c3 edges:  " << d.c3.size() << "\n";
    out << "c4 edges:  " << d.c4.size() << "\n";
    outcome.stdout_text = out.str();
    emit_artifact(outcome, cfg.out_path, d.to_json());
}

void validate_scenario(const ScenarioConfig& cfg, ScenarioOutcome& outcome) {
    const Network net = network_by_name(cfg);
    std::vector<std::string> violations = validate(net);
    if (!cfg.dec_path.empty()) {
        const Decomposition d = load_decomposition(cfg.dec_path);
        const auto more = validate_decomposition(net, d);
        violations.insert(violations.end(), more.begin(), more.end());
    }
    std::ostringstream out;
    if (violations.empty()) {
        out << "ok: no violations\n";
    } else {
        for (const std::string& v : violations) out << "violation: " << v << "\n";
        outcome.exit_code = 1;
    }
    outcome.stdout_text = out.str();
}

}  // namespace

ScenarioConfig parse_scenario_args(const std::vector<std::string>& args) {
    require(!args.empty(), "usage: qlnc <scenario> [key=value ...]");
    ScenarioConfig cfg;
    cfg.scenario = args[0];
    require(kScenarios.contains(cfg.scenario), "unknown scenario '" + cfg.scenario + "'");

    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& arg = args[i];
        const auto eq = arg.find('=');
        require(eq != std::string::npos && eq > 0, "flags take key=value form: '" + arg + "'");
        const std::string key = arg.substr(0, eq);
        const std::string value = arg.substr(eq + 1);
        if (key == "k") {
            cfg.k = static_cast<int>(parse_int(key, value));
        } else if (key == "n_b") {
            cfg.n_b = parse_int(key, value);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "oracle") {
            require(value == "on" || value == "off", "oracle takes on|off");
            cfg.oracle = value == "on";
        } else if (key == "latency_constant") {
            cfg.latency_constant = static_cast<int>(parse_int(key, value));
        } else if (key == "net") {
            cfg.net_path = value;
        } else if (key == "dec") {
            cfg.dec_path = value;
        } else if (key == "out") {
            cfg.out_path = value;
        } else if (key == "b1") {
            cfg.b1 = value;
        } else if (key == "b2") {
            cfg.b2 = value;
        } else {
            throw BadConfigError("unknown flag '" + key + "'");
        }
    }

    const bool needs_pairs = cfg.scenario.rfind("prop1-", 0) == 0;
    if (needs_pairs) {
        require(cfg.k >= 2, cfg.scenario + " needs k>=2");
        require(cfg.n_b >= 0, cfg.scenario + " needs n_b");
    }
    if (cfg.scenario == "fig1") {
        require(cfg.n_b >= 0, "fig1 needs n_b");
    }
    if (cfg.scenario == "decompose" || cfg.scenario == "validate") {
        require(!cfg.net_path.empty(), cfg.scenario + " needs net=<file|builtin>");
    }
    if (cfg.oracle && cfg.k > 6) {
        throw BadConfigError(
            "oracle mode is supported for k <= 6; the tableau grows as (k^2+3k)^2");
    }
    require(cfg.latency_constant >= 3 && cfg.latency_constant <= 8,
            "latency_constant must be in 3..8");
    return cfg;
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg) {
    ScenarioOutcome outcome;
    try {
        if (cfg.scenario == "fig1" || cfg.scenario == "prop1-combined" ||
            cfg.scenario == "prop1-qlnc-only" || cfg.scenario == "prop1-superdense-only") {
            single_run_scenario(cfg, outcome);
        } else if (cfg.scenario == "prop1-compare") {
            compare_scenario(cfg, outcome);
        } else if (cfg.scenario == "butterfly") {
            butterfly_scenario(cfg, outcome);
        } else if (cfg.scenario == "decompose") {
            decompose_scenario(cfg, outcome);
        } else if (cfg.scenario == "validate") {
            validate_scenario(cfg, outcome);
        } else {
            throw BadConfigError("unknown scenario '" + cfg.scenario + "'");
        }
    } catch (const BadConfigError& e) {
        outcome.exit_code = 2;
        outcome.stdout_text = std::string("config error: ") + e.what() + "\n";
    } catch (const InvalidArgsError& e) {
        outcome.exit_code = 2;
        outcome.stdout_text = std::string("config error: ") + e.what() + "\n";
    } catch (const Error& e) {
        outcome.exit_code = 1;
        outcome.stdout_text = std::string("error: ") + e.what() + "\n";
    }
    return outcome;
}

}  // namespace qlnc
