#include "qlnc/protocol.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qlnc {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// one replenishment round
// ---------------------------------------------------------------------------

QlncRoundResult qlnc_round(const Network& net, FormulaEngine& engine, TrafficLog& log,
                           std::int64_t first_step, int latency_constant) {
    const KpairCodeSchedule code = make_kpair_code_schedule(net);
    const ScheduleRun run = run_schedule(engine, net, code.schedule, &log, first_step);

    QlncRoundResult result;
    result.latency = latency_constant;
    const int k = net.pair_count;
    for (int i = 1; i <= k; ++i) {
        result.r_qubits.push_back(run.qubit_of_tag.at(code.r_keep_tags[i - 1]));
        result.t_qubits.push_back(run.qubit_of_tag.at(code.t_keep_tags[i - 1]));
        const Formula& f = engine.formula(result.r_qubits.back());
        if (f.size() != 1 || engine.formula(result.t_qubits.back()) != f) {
            throw Error("round left pair " + std::to_string(i) + " without a shared symbol");
        }
        result.symbols.push_back(f.symbols().front());
    }
    return result;
}

Tableau replay_trace(const CircuitTrace& trace, std::size_t n) {
    Tableau t(n);
    for (const TraceOp& op : trace) {
        if (const auto* plus = std::get_if<TraceInitPlus>(&op)) {
            t.h(plus->qubit.value);
        } else if (std::get_if<TraceInitZero>(&op)) {
            // |0> is the tableau's initial state
        } else if (const auto* cnot = std::get_if<TraceCnot>(&op)) {
            t.cnot(cnot->control.value, cnot->target.value);
        } else if (const auto* meas = std::get_if<TraceMeasureX>(&op)) {
            const auto [outcome, was_random] = t.measure_x_given(meas->qubit.value, meas->outcome);
            if (outcome != meas->outcome) {
                throw Error("trace replay diverged on a deterministic measurement");
            }
            (void)was_random;
        } else {
            t.z(std::get<TracePauliZ>(op).qubit.value);
        }
    }
    return t;
}

bool verify_round_oracle(const FormulaEngine& engine, const QlncRoundResult& round) {
    const Tableau t = replay_trace(engine.trace(), engine.qubit_count());
    for (std::size_t i = 0; i < round.r_qubits.size(); ++i) {
        if (!t.is_bell(round.t_qubits[i].value, round.r_qubits[i].value)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// superdense coding over the oracle
// ---------------------------------------------------------------------------

void superdense_encode(Tableau& t, SuperdenseMessage m, std::size_t transmitter_half) {
    if (m.b1) t.z(transmitter_half);
    if (m.b0) t.x(transmitter_half);
}

SuperdenseMessage superdense_decode(Tableau& t, std::size_t half_a, std::size_t half_b) {
    t.cnot(half_a, half_b);
    t.h(half_a);
    const auto [bit1, random1] = t.measure_z_given(half_a, 0);
    const auto [bit0, random0] = t.measure_z_given(half_b, 0);
    if (random1 || random0) {
        throw NoBellPairError("superdense_decode: halves were not in a Bell state");
    }
    return SuperdenseMessage{bit1, bit0};
}

// ---------------------------------------------------------------------------
// closed-form timings
// ---------------------------------------------------------------------------

std::int64_t combined_elapsed(int k, std::int64_t n_b, int latency_constant) {
    (void)k;
    return n_b == 0 ? 0 : n_b / 2 + latency_constant;
}

std::int64_t qlnc_only_elapsed(std::int64_t n_b) { return n_b; }

std::int64_t superdense_only_elapsed(int k, std::int64_t n_b) {
    if (n_b == 0) return 0;
    return ceil_rational(Rational(static_cast<std::int64_t>(k) * n_b, k + 1)) + 3;
}

Rational superdense_only_paper_literal(int k, std::int64_t n_b) {
    return Rational(k + 1, k) * n_b + 3;
}

// ---------------------------------------------------------------------------
// report formatting
// ---------------------------------------------------------------------------

namespace {

std::string approx(const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f",
                  static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()));
    return buf;
}

}  // namespace

std::string ThroughputReport::to_json() const {
    ordered_json j;
    j["mode"] = mode;
    j["k"] = k;
    j["n_b"] = n_b;
    j["elapsed_steps"] = elapsed_steps;
    j["avg_rate"] = rational_str(avg_rate);
    j["steady_rate"] = rational_str(steady_rate);
    j["per_pair_bits"] = per_pair_bits;
    if (paper_literal_elapsed) {
        j["paper_literal_elapsed"] = rational_str(*paper_literal_elapsed);
    }
    j["seed"] = seed;
    j["latency_constant"] = latency_constant;
    if (latency_constant != 3) {
        j["latency_note"] = "setup latency deviates from the default of 3 steps";
    }
    if (oracle_verified_pairs) {
        j["oracle_verified_pairs"] = *oracle_verified_pairs;
    }
    return j.dump(2) + "\n";
}

ThroughputReport ThroughputReport::from_json(const std::string& text) {
    ThroughputReport r;
    try {
        const ordered_json j = ordered_json::parse(text);
        r.mode = j.at("mode").get<std::string>();
        r.k = j.at("k").get<int>();
        r.n_b = j.at("n_b").get<std::int64_t>();
        r.elapsed_steps = j.at("elapsed_steps").get<std::int64_t>();
        r.avg_rate = parse_rational(j.at("avg_rate").get<std::string>());
        r.steady_rate = parse_rational(j.at("steady_rate").get<std::string>());
        r.per_pair_bits = j.at("per_pair_bits").get<std::vector<std::int64_t>>();
        if (j.contains("paper_literal_elapsed")) {
            r.paper_literal_elapsed =
                parse_rational(j.at("paper_literal_elapsed").get<std::string>());
        }
        r.seed = j.at("seed").get<std::uint64_t>();
        r.latency_constant = j.at("latency_constant").get<int>();
        if (j.contains("oracle_verified_pairs")) {
            r.oracle_verified_pairs = j.at("oracle_verified_pairs").get<int>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw FileError(std::string("report parse: ") + e.what());
    }
    return r;
}

std::string ThroughputReport::to_table() const {
    std::ostringstream out;
    out << "mode:            " << mode << "\n";
    out << "k:               " << k << "\n";
    out << "n_b:             " << n_b << "\n";
    out << "elapsed_steps:   " << elapsed_steps << "\n";
    out << "avg_rate:        " << rational_str(avg_rate) << " (~" << approx(avg_rate) << ")\n";
    out << "steady_rate:     " << rational_str(steady_rate) << "\n";
    if (paper_literal_elapsed) {
        out << "literal_elapsed: " << rational_str(*paper_literal_elapsed) << " (~"
            << approx(*paper_literal_elapsed) << ")\n";
    }
    out << "seed:            " << seed << "\n";
    out << "latency:         " << latency_constant
        << (latency_constant == 3 ? "" : "  [non-default]") << "\n";
    if (oracle_verified_pairs) {
        out << "oracle:          all " << *oracle_verified_pairs << " pairs Bell-verified\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// scenario runs
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kTrafficRecordBudget = 2'000'000;

bool decide_keep(const RunOptions& opts, std::int64_t projected_records) {
    if (opts.keep_traffic >= 0) return opts.keep_traffic != 0;
    return projected_records <= kTrafficRecordBudget;
}

std::vector<std::vector<std::uint8_t>> make_payloads(int k, std::int64_t n_b,
                                                     std::uint64_t seed) {
    // Payload bits come from their own stream so that measurement-outcome
    // draws stay aligned across modes.
    BitSource src(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::vector<std::uint8_t>> out(k);
    for (auto& stream : out) {
        stream.resize(n_b);
        for (auto& bit : stream) bit = static_cast<std::uint8_t>(src.next_bit());
    }
    return out;
}

Rational def3_rate(std::int64_t per_pair_bits, std::int64_t elapsed) {
    return elapsed == 0 ? Rational{0} : Rational(per_pair_bits, elapsed);
}

// Movement pattern of one replenishment round, harvested from a recorded
// round so the steady-state pipeline emits byte-identical traffic.
struct RoundPattern {
    std::vector<std::vector<TrafficRecord>> by_phase;  // 4 phases
};

RoundPattern harvest_pattern(const TrafficLog& round_log) {
    RoundPattern pattern;
    pattern.by_phase.resize(4);
    for (const TrafficRecord& rec : round_log.records()) {
        pattern.by_phase.at(static_cast<std::size_t>(rec.step - 1)).push_back(rec);
    }
    return pattern;
}

}  // namespace

RunResult run_combined(int k, std::int64_t n_b, const RunOptions& opts) {
    if (n_b < 0 || n_b % 2 != 0) {
        throw InvalidArgsError("run_combined: n_b must be even, got " + std::to_string(n_b));
    }
    if (opts.latency_constant < 3) {
        throw InvalidArgsError("run_combined: latency constant must be >= 3");
    }
    const int latency = opts.latency_constant;
    const std::int64_t rounds = n_b / 2;
    auto net = std::make_shared<const Network>(build_kpair_bottleneck(k));
    const std::int64_t per_round_records =
        static_cast<std::int64_t>(2 * k) * (k - 1) + 3 * k + 2;
    const bool keep = decide_keep(opts, rounds * (per_round_records + k));

    RunResult res{net, {}, TrafficLog(net, keep), {}, {}, 0};
    res.sent = make_payloads(k, n_b, opts.seed);
    res.delivered.assign(k, {});

    auto bits = std::make_shared<BitSource>(opts.seed);
    RoundPattern pattern;
    BellInventory inventory(k);

    // Per-round measurement byproducts, in draw order: k bits from the relay
    // terminations (pair-indexed, corrected at the receivers immediately),
    // then k(k-1) bits from the transmitter mesh whose parities land on the
    // transmitter halves.
    std::vector<int> pending_z_t(k, 0);
    const auto draw_round_byproducts = [&](BitSource& src, std::vector<int>& z_t) {
        for (int i = 0; i < k; ++i) {
            (void)src.next_bit();  // receiver-side correction, applied on arrival
        }
        std::fill(z_t.begin(), z_t.end(), 0);
        for (int i = 1; i <= k; ++i) {
            for (int j = 1; j <= k; ++j) {
                if (j == i) continue;
                z_t[j - 1] ^= src.next_bit();
            }
        }
    };

    int oracle_rounds_ok = 0;
    const auto run_symbolic_round = [&](std::vector<int>& z_t) {
        FormulaEngine engine(bits);
        TrafficLog round_log(net, true);
        const QlncRoundResult round = qlnc_round(*net, engine, round_log, 1, latency);
        if (pattern.by_phase.empty()) {
            pattern = harvest_pattern(round_log);
        }
        // Recover the transmitter-side byproduct parities from the Z log on
        // the retained halves.
        std::fill(z_t.begin(), z_t.end(), 0);
        for (const QubitId z : engine.z_log()) {
            for (int i = 0; i < k; ++i) {
                if (z == round.t_qubits[i]) z_t[i] ^= 1;
            }
        }
        const ClusterReport clusters = engine.classify();
        if (clusters.clusters.size() != static_cast<std::size_t>(k) ||
            !clusters.unresolved.empty()) {
            throw Error("replenishment round did not leave k clean pairs");
        }
        if (opts.with_oracle) {
            if (!verify_round_oracle(engine, round)) {
                throw Error("oracle rejected a replenishment round");
            }
            ++oracle_rounds_ok;
        }
        return round;
    };

    // Chunk c of pair i: round c's Bell pair carries source bits 2c, 2c+1.
    std::vector<std::vector<int>> round_z_t;  // per round, per pair
    const std::int64_t elapsed = combined_elapsed(k, n_b, latency);
    std::int64_t produced = 0, consumed = 0;

    for (std::int64_t s = 1; s <= elapsed; ++s) {
        // consumption: chunk c = s - latency - 1 rides the direct links
        const std::int64_t chunk = s - latency - 1;
        if (chunk >= 0 && chunk < rounds) {
            for (int i = 1; i <= k; ++i) {
                inventory.consume(i);
                const std::size_t link = *net->find_link(net->transmitter_id(i),
                                                         net->receiver_id(i),
                                                         LinkKind::Quantum);
                res.traffic.record(s, link, PayloadKind::Qubit,
                                   "superdense chunk " + std::to_string(chunk));
                const auto& src = res.sent[i - 1];
                SuperdenseMessage m{src[2 * chunk], src[2 * chunk + 1]};
                // Transmitter-half byproducts not yet corrected when the
                // qubit departs show up as a Z flip at the decoder.
                const int stray = latency == 3 ? round_z_t[chunk][i - 1] : 0;
                SuperdenseMessage raw{m.b1 ^ stray, m.b0};
                // The byproduct bits arrive during this same step and are
                // folded into the decoded output (they commute with the
                // Pauli encoding).
                const int fold = latency == 3 ? round_z_t[chunk][i - 1] : 0;
                res.delivered[i - 1].push_back(static_cast<std::uint8_t>(raw.b1 ^ fold));
                res.delivered[i - 1].push_back(static_cast<std::uint8_t>(raw.b0));
            }
            ++consumed;
        }

        // replenishment traffic for every round active at this step
        const std::int64_t r_lo = std::max<std::int64_t>(0, s - 4);
        const std::int64_t r_hi = std::min(rounds - 1, s - 1);
        for (std::int64_t r = r_lo; r <= r_hi; ++r) {
            const std::size_t phase = static_cast<std::size_t>(s - r - 1);
            if (phase == 0) {
                // the round's symbolic content happens as it starts
                std::vector<int> z_t(k, 0);
                if (r == 0 || opts.with_oracle) {
                    run_symbolic_round(z_t);
                } else {
                    draw_round_byproducts(*bits, z_t);
                }
                round_z_t.push_back(z_t);
            }
            if (pattern.by_phase.empty()) {
                throw Error("round pattern missing");
            }
            for (const TrafficRecord& rec : pattern.by_phase[phase]) {
                res.traffic.record(s, rec.link, rec.payload, rec.note);
            }
            if (phase == 2) {
                // transit complete; the pair is available from the next step
                for (int i = 1; i <= k; ++i) inventory.add(i);
                inventory.note_peak();
                ++produced;
            }
            if (phase == 3 && latency >= 4) {
                // corrections applied before the pair is consumed
                round_z_t[r].assign(k, 0);
            }
        }
    }
    assert(produced == rounds && consumed == rounds);
    res.inventory_peak = inventory.peak();

    for (int i = 0; i < k; ++i) {
        if (res.delivered[i] != res.sent[i]) {
            throw Error("combined run corrupted the payload of pair " + std::to_string(i + 1));
        }
    }

    res.report.mode = "prop1-combined";
    res.report.k = k;
    res.report.n_b = n_b;
    res.report.elapsed_steps = elapsed;
    res.report.avg_rate = def3_rate(n_b, elapsed);
    res.report.steady_rate = Rational{2};
    res.report.per_pair_bits.assign(k, n_b);
    res.report.seed = opts.seed;
    res.report.latency_constant = latency;
    if (opts.with_oracle) {
        res.report.oracle_verified_pairs = k;
        if (oracle_rounds_ok != rounds) {
            throw Error("oracle verification incomplete");
        }
    }
    return res;
}

RunResult run_qlnc_only(int k, std::int64_t n_b, const RunOptions& opts) {
    if (n_b < 0) {
        throw InvalidArgsError("run_qlnc_only: n_b must be nonnegative");
    }
    auto net = std::make_shared<const Network>(build_kpair_bottleneck(k));
    const bool keep = decide_keep(opts, n_b * k);
    RunResult res{net, {}, TrafficLog(net, keep), {}, {}, 0};
    res.sent = make_payloads(k, n_b, opts.seed);
    res.delivered.assign(k, {});

    const std::int64_t elapsed = qlnc_only_elapsed(n_b);
    for (std::int64_t s = 1; s <= elapsed; ++s) {
        for (int i = 1; i <= k; ++i) {
            const std::size_t link = *net->find_link(net->transmitter_id(i),
                                                     net->receiver_id(i), LinkKind::Quantum);
            res.traffic.record(s, link, PayloadKind::ClassicalBit, "basis-state bit");
            res.delivered[i - 1].push_back(res.sent[i - 1][s - 1]);
        }
    }
    for (int i = 0; i < k; ++i) {
        if (res.delivered[i] != res.sent[i]) {
            throw Error("plain run corrupted the payload");
        }
    }

    res.report.mode = "prop1-qlnc-only";
    res.report.k = k;
    res.report.n_b = n_b;
    res.report.elapsed_steps = elapsed;
    res.report.avg_rate = def3_rate(n_b, elapsed);
    res.report.steady_rate = Rational{1};
    res.report.per_pair_bits.assign(k, n_b);
    res.report.seed = opts.seed;
    res.report.latency_constant = opts.latency_constant;
    return res;
}

RunResult run_superdense_only(int k, std::int64_t n_b, const RunOptions& opts) {
    if (n_b < 0) {
        throw InvalidArgsError("run_superdense_only: n_b must be nonnegative");
    }
    auto net = std::make_shared<const Network>(build_kpair_bottleneck(k));
    const std::int64_t closed_form = superdense_only_elapsed(k, n_b);
    const bool keep = decide_keep(opts, closed_form * (k + 3));
    RunResult res{net, {}, TrafficLog(net, keep), {}, {}, 0};
    res.sent = make_payloads(k, n_b, opts.seed);
    res.delivered.assign(k, {});

    // Bell halves are relayed r_i -> m2 -> m1 -> t_i; the single m2->m1 edge
    // is shared round-robin. The half crossing m2->m1 at step u belongs to
    // pair ((u-2) mod k)+1, entered r->m2 at u-1, lands at its transmitter
    // at the end of u+1, and is usable from u+2.
    BellInventory inventory(k);
    std::vector<std::int64_t> cursor(k, 0);  // next unsent source bit per pair
    std::int64_t elapsed = 0;

    const auto all_done = [&] {
        for (int i = 0; i < k; ++i) {
            if (cursor[i] < n_b) return false;
        }
        return true;
    };
    const auto slot_pair = [k](std::int64_t mid_step) {
        return static_cast<int>((mid_step - 2) % k) + 1;
    };

    for (std::int64_t s = 1; !all_done(); ++s) {
        if (s > closed_form) {
            throw Error("superdense-only schedule overran its closed form");
        }
        elapsed = s;
        if (s >= 4) {
            inventory.add(slot_pair(s - 2));  // landed at the end of step s-1
            inventory.note_peak();
        }
        res.traffic.record(s, *net->find_link(net->receiver_id(slot_pair(s + 1)), "m2",
                                              LinkKind::Quantum),
                           PayloadKind::Qubit, "bell half");
        if (s >= 2) {
            res.traffic.record(s, *net->find_link("m2", "m1", LinkKind::Quantum),
                               PayloadKind::Qubit, "bell half");
        }
        if (s >= 3) {
            res.traffic.record(s, *net->find_link("m1", net->transmitter_id(slot_pair(s - 1)),
                                                  LinkKind::Quantum),
                               PayloadKind::Qubit, "bell half");
        }
        // transmission phase starts after the three setup steps
        if (s >= 4) {
            for (int i = 1; i <= k; ++i) {
                if (cursor[i - 1] >= n_b) continue;
                const std::size_t link = *net->find_link(net->transmitter_id(i),
                                                         net->receiver_id(i), LinkKind::Quantum);
                const bool dense = inventory.count(i) > 0 && n_b - cursor[i - 1] >= 2;
                if (dense) {
                    inventory.consume(i);
                    res.traffic.record(s, link, PayloadKind::Qubit, "superdense qubit");
                    res.delivered[i - 1].push_back(res.sent[i - 1][cursor[i - 1]]);
                    res.delivered[i - 1].push_back(res.sent[i - 1][cursor[i - 1] + 1]);
                    cursor[i - 1] += 2;
                } else {
                    res.traffic.record(s, link, PayloadKind::ClassicalBit, "basis-state bit");
                    res.delivered[i - 1].push_back(res.sent[i - 1][cursor[i - 1]]);
                    cursor[i - 1] += 1;
                }
            }
        }
    }
    if (elapsed != closed_form) {
        throw Error("superdense-only elapsed " + std::to_string(elapsed) +
                    " != closed form " + std::to_string(closed_form));
    }
    for (int i = 0; i < k; ++i) {
        if (res.delivered[i] != res.sent[i]) {
            throw Error("superdense-only run corrupted the payload");
        }
    }
    res.inventory_peak = inventory.peak();

    res.report.mode = "prop1-superdense-only";
    res.report.k = k;
    res.report.n_b = n_b;
    res.report.elapsed_steps = elapsed;
    res.report.avg_rate = def3_rate(n_b, elapsed);
    res.report.steady_rate = Rational(k + 1, k);
    res.report.per_pair_bits.assign(k, n_b);
    res.report.paper_literal_elapsed = superdense_only_paper_literal(k, n_b);
    res.report.seed = opts.seed;
    res.report.latency_constant = opts.latency_constant;
    return res;
}

RunResult run_fig1_loop(std::int64_t n_b, const RunOptions& opts) {
    if (n_b < 0 || n_b % 2 != 0) {
        throw InvalidArgsError("run_fig1_loop: n_b must be even, got " + std::to_string(n_b));
    }
    auto net = std::make_shared<const Network>(build_two_node_loop());
    const bool keep = decide_keep(opts, n_b + 2);
    RunResult res{net, {}, TrafficLog(net, keep), {}, {}, 0};
    res.sent = make_payloads(1, n_b, opts.seed);
    res.delivered.assign(1, {});

    const std::int64_t chunks = n_b / 2;
    const std::int64_t elapsed = chunks == 0 ? 0 : chunks + 1;
    const std::size_t back = *net->find_link("B", "A", LinkKind::Quantum);
    const std::size_t fwd = *net->find_link("A", "B", LinkKind::Quantum);
    BellInventory inventory(1);
    for (std::int64_t s = 1; s <= elapsed; ++s) {
        if (s <= chunks) {
            res.traffic.record(s, back, PayloadKind::Qubit, "bell half");
            inventory.add(1);
            inventory.note_peak();
        }
        if (s >= 2) {
            inventory.consume(1);
            res.traffic.record(s, fwd, PayloadKind::Qubit, "superdense qubit");
            const std::int64_t c = s - 2;
            res.delivered[0].push_back(res.sent[0][2 * c]);
            res.delivered[0].push_back(res.sent[0][2 * c + 1]);
        }
    }
    if (res.delivered[0] != res.sent[0]) {
        throw Error("loop run corrupted the payload");
    }
    res.inventory_peak = inventory.peak();

    res.report.mode = "fig1";
    res.report.k = 1;
    res.report.n_b = n_b;
    res.report.elapsed_steps = elapsed;
    res.report.avg_rate = def3_rate(n_b, elapsed);
    res.report.steady_rate = Rational{2};
    res.report.per_pair_bits.assign(1, n_b);
    res.report.seed = opts.seed;
    res.report.latency_constant = opts.latency_constant;
    return res;
}

ButterflyResult run_butterfly(const BitStream& b1, const BitStream& b2) {
    if (b1.size() != b2.size()) {
        throw LengthMismatchError("run_butterfly: stream lengths differ");
    }
    auto net = std::make_shared<const Network>(build_butterfly());
    ButterflyResult res{net, {}, {}, TrafficLog(net, true), 0};
    const std::int64_t m = static_cast<std::int64_t>(b1.size());

    const std::size_t s1_m1 = *net->find_link("s1", "m1", LinkKind::Classical);
    const std::size_t s2_m1 = *net->find_link("s2", "m1", LinkKind::Classical);
    const std::size_t s1_d2 = *net->find_link("s1", "d2", LinkKind::Classical);
    const std::size_t s2_d1 = *net->find_link("s2", "d1", LinkKind::Classical);
    const std::size_t mid = *net->find_link("m1", "m2", LinkKind::Classical);
    const std::size_t m2_d1 = *net->find_link("m2", "d1", LinkKind::Classical);
    const std::size_t m2_d2 = *net->find_link("m2", "d2", LinkKind::Classical);

    res.elapsed_steps = m == 0 ? 0 : m + 2;
    for (std::int64_t s = 1; s <= res.elapsed_steps; ++s) {
        if (s <= m) {
            res.traffic.record(s, s1_m1, PayloadKind::ClassicalBit, "b1");
            res.traffic.record(s, s2_m1, PayloadKind::ClassicalBit, "b2");
            res.traffic.record(s, s1_d2, PayloadKind::ClassicalBit, "b1 direct");
            res.traffic.record(s, s2_d1, PayloadKind::ClassicalBit, "b2 direct");
        }
        if (s >= 2 && s <= m + 1) {
            res.traffic.record(s, mid, PayloadKind::ClassicalBit, "b1 xor b2");
        }
        if (s >= 3) {
            const std::int64_t t = s - 3;
            res.traffic.record(s, m2_d1, PayloadKind::ClassicalBit, "coded");
            res.traffic.record(s, m2_d2, PayloadKind::ClassicalBit, "coded");
            const std::uint8_t coded = b1[t] ^ b2[t];
            res.out1.push_back(static_cast<std::uint8_t>(b2[t] ^ coded));  // at d1
            res.out2.push_back(static_cast<std::uint8_t>(b1[t] ^ coded));  // at d2
        }
    }
    return res;
}

}  // namespace qlnc
