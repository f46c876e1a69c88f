#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlnc/formula_engine.hpp"
#include "qlnc/network.hpp"
#include "qlnc/rational.hpp"
#include "qlnc/schedule.hpp"
#include "qlnc/stabilizer.hpp"
#include "qlnc/traffic.hpp"

namespace qlnc {

// Two classical bits riding one superdense-coded qubit. Encoding convention:
// 00 -> I, 01 -> X, 10 -> Z, 11 -> X·Z on the transmitter half.
struct SuperdenseMessage {
    int b1 = 0;  // the Z-encoded bit
    int b0 = 0;  // the X-encoded bit
    bool operator==(const SuperdenseMessage&) const = default;
};

// Per-pair count of shared Bell pairs. Superdense transmission decrements,
// a replenishment round increments; counts never go negative.
class BellInventory {
public:
    explicit BellInventory(int pairs) : available_(pairs, 0) {}

    void add(int pair) { ++available_.at(pair - 1); }
    void consume(int pair) {
        auto& n = available_.at(pair - 1);
        if (n <= 0) {
            throw NoBellPairError("no Bell pair available for pair " + std::to_string(pair));
        }
        --n;
    }
    std::int64_t count(int pair) const { return available_.at(pair - 1); }
    std::int64_t peak() const { return peak_; }
    void note_peak() {
        for (const auto n : available_) peak_ = std::max(peak_, n);
    }

private:
    std::vector<std::int64_t> available_;
    std::int64_t peak_ = 0;
};

struct ThroughputReport {
    std::string mode;
    int k = 0;
    std::int64_t n_b = 0;
    std::int64_t elapsed_steps = 0;
    Rational avg_rate{0};     // (total delivered bits / k) / elapsed; 0 when idle
    Rational steady_rate{0};  // asymptotic per-pair rate of the mode
    std::vector<std::int64_t> per_pair_bits;
    std::optional<Rational> paper_literal_elapsed;  // superdense-only mode
    std::uint64_t seed = 0;
    int latency_constant = 3;
    std::optional<int> oracle_verified_pairs;

    std::string to_json() const;
    static ThroughputReport from_json(const std::string& text);
    std::string to_table() const;
};

struct RunOptions {
    std::uint64_t seed = 0;
    int latency_constant = 3;
    bool with_oracle = false;
    // -1: keep detailed records while they stay small; 0/1 force off/on.
    int keep_traffic = -1;
};

struct RunResult {
    std::shared_ptr<const Network> net;
    ThroughputReport report;
    TrafficLog traffic;
    std::vector<std::vector<std::uint8_t>> sent;       // per pair, n_b bits
    std::vector<std::vector<std::uint8_t>> delivered;
    std::int64_t inventory_peak = 0;
};

// --- one replenishment round -------------------------------------------------

struct QlncRoundResult {
    std::vector<QubitId> r_qubits;   // pair i's half at r_i (index i-1)
    std::vector<QubitId> t_qubits;   // pair i's half at t_i
    std::vector<SymbolId> symbols;   // pair i's symbol
    int latency = 3;
};

// Runs one round of the GHZ-merge code on a k-pair bottleneck network,
// writing traffic into `log` at steps first_step..first_step+3. The round's
// final correction bits overlap the following step's transmissions; the
// reported latency counts the three transit steps (configurable).
QlncRoundResult qlnc_round(const Network& net, FormulaEngine& engine, TrafficLog& log,
                           std::int64_t first_step = 1, int latency_constant = 3);

// Replays a recorded circuit (gates, measurement outcomes, conditional Zs)
// through a fresh tableau.
Tableau replay_trace(const CircuitTrace& trace, std::size_t n);

// True iff the tableau replay of the engine's circuit leaves every pair in
// the Bell state, unentangled with everything else.
bool verify_round_oracle(const FormulaEngine& engine, const QlncRoundResult& round);

// --- superdense coding over the tableau oracle --------------------------------

void superdense_encode(Tableau& t, SuperdenseMessage m, std::size_t transmitter_half);
SuperdenseMessage superdense_decode(Tableau& t, std::size_t half_a, std::size_t half_b);

// --- closed-form timings -------------------------------------------------------

std::int64_t combined_elapsed(int k, std::int64_t n_b, int latency_constant = 3);
std::int64_t qlnc_only_elapsed(std::int64_t n_b);
std::int64_t superdense_only_elapsed(int k, std::int64_t n_b);  // rate-derived
Rational superdense_only_paper_literal(int k, std::int64_t n_b);

// --- full scenario runs --------------------------------------------------------

// Pipelined operation: replenishment rounds sustain one Bell pair per pair
// per step after setup while the direct links carry superdense qubits.
RunResult run_combined(int k, std::int64_t n_b, const RunOptions& opts = {});

// Coding without superdense: one basis-state bit per pair per step over the
// direct links; the transmitter-side cut pins the rate at 1.
RunResult run_qlnc_only(int k, std::int64_t n_b, const RunOptions& opts = {});

// Superdense without coding: Bell halves are relayed through the m2->m1
// bottleneck round-robin, so each pair superdense-codes 1/k of its qubits.
RunResult run_superdense_only(int k, std::int64_t n_b, const RunOptions& opts = {});

// Two-node loop: the return link streams Bell halves, the forward link
// superdense-codes, approaching twice the unit rate.
RunResult run_fig1_loop(std::int64_t n_b, const RunOptions& opts = {});

using BitStream = std::vector<std::uint8_t>;

struct ButterflyResult {
    std::shared_ptr<const Network> net;
    BitStream out1, out2;
    TrafficLog traffic;
    std::int64_t elapsed_steps = 0;
};

// Streams both inputs through the XOR code: the adder node folds the
// streams, the single middle edge carries one coded bit per step, and each
// sink decodes the opposite stream from its direct feed.
ButterflyResult run_butterfly(const BitStream& b1, const BitStream& b2);

}  // namespace qlnc
