#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qlnc/formula_engine.hpp"
#include "qlnc/network.hpp"
#include "qlnc/traffic.hpp"

namespace qlnc {

// A network-located entanglement-distribution program: qubits are named by
// integer tags, created and combined at nodes, moved over specific links,
// and terminated with corrections whose measurement bits travel over
// specific classical-capable links. One schedule describes one round of a
// code; the protocol engine executes it against a time-stepped traffic log
// and the decomposition validator replays it against per-edge budgets.

struct LocalPlus { std::string node; int tag; };
struct LocalZero { std::string node; int tag; };
struct LocalCnot { std::string node; int control_tag; int target_tag; };
using LocalOp = std::variant<LocalPlus, LocalZero, LocalCnot>;

struct QubitMove {
    int tag;
    std::size_t link;
};

struct Termination {
    std::string node;
    int victim_tag;
    std::vector<int> correction_tags;
    // One entry per correction: the link carrying the measurement bit to the
    // correction's node, or nullopt when the correction is co-located.
    std::vector<std::optional<std::size_t>> bit_links;
};

// Within a step: local ops run first, then terminations (their bits travel
// this step), then qubit moves (concurrent with the bits).
struct ScheduleStep {
    std::vector<LocalOp> local;
    std::vector<Termination> terminations;
    std::vector<QubitMove> moves;
};

struct QlncSchedule {
    std::vector<ScheduleStep> steps;
};

struct ScheduleLimits {
    // When set, qubit moves (resp. termination bits) may only use these links.
    const std::set<std::size_t>* qubit_links = nullptr;
    const std::set<std::size_t>* bit_links = nullptr;
};

struct ScheduleRun {
    std::map<int, QubitId> qubit_of_tag;
    std::map<int, std::string> location_of_tag;
    std::map<std::size_t, int> link_uses;
};

// Executes one round. `log` may be null (budget-only replay); `first_step`
// numbers the schedule's first step in the log.
ScheduleRun run_schedule(FormulaEngine& engine, const Network& net,
                         const QlncSchedule& schedule, TrafficLog* log,
                         std::int64_t first_step = 1,
                         const ScheduleLimits& limits = {});

// The GHZ-merge code over a k-pair bottleneck network: receivers fan out
// GHZ qubits, relay_a folds them into a parity qubit and terminates its
// copies, relay_b fans the parity back out to the transmitters, and each
// transmitter cancels the foreign symbols and terminates them. Leaves one
// Bell pair per transmitter-receiver pair. Links are resolved first-match
// in stable order, skipping `exclude`; MissingLinkError if the network
// lacks a link the code needs.
struct KpairCodeSchedule {
    QlncSchedule schedule;
    std::vector<int> r_keep_tags;  // pair i's half kept at r_i (index i-1)
    std::vector<int> t_keep_tags;  // pair i's half ending at t_i
};
KpairCodeSchedule make_kpair_code_schedule(const Network& net,
                                           const std::string& relay_a = "m2",
                                           const std::string& relay_b = "m1",
                                           const std::set<std::size_t>* exclude = nullptr);

}  // namespace qlnc
