#include <iostream>
#include <string>
#include <vector>

#include "qlnc/scenario.hpp"

namespace {

void print_usage() {
    std::cout <<
        "usage: qlnc <scenario> [key=value ...]\n"
        "\n"
        "scenarios:\n"
        "  fig1                   two-node loop: backward Bell halves, forward superdense\n"
        "  butterfly              XOR-coded two-pair butterfly (flags: b1=1011 b2=0110)\n"
        "  prop1-combined         k-pair network, replenished superdense pipeline\n"
        "  prop1-qlnc-only        k-pair network, coding without superdense\n"
        "  prop1-superdense-only  k-pair network, superdense without coding\n"
        "  prop1-compare          all three modes plus separation ratios\n"
        "  decompose              greedy four-component decomposition of a network\n"
        "  validate               check a network (and optionally a decomposition) file\n"
        "\n"
        "flags:\n"
        "  k=<int>            transmitter-receiver pair count (prop1-*)\n"
        "  n_b=<int>          bitstream length per pair\n"
        "  seed=<int>         measurement/payload seed (default 0)\n"
        "  oracle=on|off      verify rounds against the stabilizer oracle (k <= 6)\n"
        "  latency_constant=N setup latency in steps (default 3)\n"
        "  net=<file|name>    network file, or two-node-loop|butterfly|prop1\n"
        "  dec=<file>         decomposition file (validate)\n"
        "  out=<file>         write the machine-readable report here\n"
        "\n"
        "exit codes: 0 success, 1 invariant violation, 2 bad config\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
        print_usage();
        return args.empty() ? 2 : 0;
    }
    try {
        const qlnc::ScenarioConfig cfg = qlnc::parse_scenario_args(args);
        const qlnc::ScenarioOutcome outcome = qlnc::run_scenario(cfg);
        std::cout << outcome.stdout_text;
        return outcome.exit_code;
    } catch (const qlnc::BadConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
