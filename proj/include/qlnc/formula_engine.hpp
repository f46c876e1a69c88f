#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "qlnc/errors.hpp"
#include "qlnc/random.hpp"

namespace qlnc {

// One symbol per |+> initialisation; never reused within an engine instance.
struct SymbolId {
    std::uint32_t value = 0;
    auto operator<=>(const SymbolId&) const = default;
};

struct QubitId {
    std::uint32_t value = 0;
    auto operator<=>(const QubitId&) const = default;
};

// A GF(2) sum of symbols, kept as a sorted set. The empty formula is the
// label 0. Symmetric difference is the only mutation, which makes mod-2
// cancellation structural.
class Formula {
public:
    Formula() = default;
    explicit Formula(std::vector<SymbolId> symbols);

    static Formula single(SymbolId s) { return Formula({s}); }

    void add(const Formula& other);  // this ^= other
    bool empty() const { return symbols_.empty(); }
    std::size_t size() const { return symbols_.size(); }
    const std::vector<SymbolId>& symbols() const { return symbols_; }

    bool operator==(const Formula&) const = default;

private:
    std::vector<SymbolId> symbols_;
};

// Gate/measurement record, in execution order, for replay through the
// stabilizer oracle. Qubit ids double as tableau indices.
struct TraceInitPlus { QubitId qubit; };
struct TraceInitZero { QubitId qubit; };
struct TraceCnot { QubitId control, target; };
struct TraceMeasureX { QubitId qubit; int outcome; };
struct TracePauliZ { QubitId qubit; };
using TraceOp =
    std::variant<TraceInitPlus, TraceInitZero, TraceCnot, TraceMeasureX, TracePauliZ>;
using CircuitTrace = std::vector<TraceOp>;

struct Cluster {
    SymbolId symbol;
    std::vector<QubitId> qubits;  // sorted
};

// Grouping of the active qubits: single-symbol qubits clustered by symbol,
// everything else listed as unresolved. Every active qubit appears exactly
// once across clusters + unresolved.
struct ClusterReport {
    std::vector<Cluster> clusters;      // sorted by symbol
    std::vector<QubitId> unresolved;    // sorted
};

// Symbolic state machine: tracks one formula per qubit, applies CNOT as
// GF(2) addition, and terminates qubits via X measurement plus classically
// controlled Z corrections. Single-owner; not safe for concurrent mutation.
class FormulaEngine {
public:
    explicit FormulaEngine(std::uint64_t seed);
    explicit FormulaEngine(std::shared_ptr<BitSource> bits);

    std::pair<QubitId, SymbolId> new_plus();
    QubitId new_zero();

    // Sets target's formula to control + target; the control is unchanged.
    void apply_cnot(QubitId control, QubitId target);

    // Phase-only; the formula is unchanged, the application is logged.
    void apply_pauli_z(QubitId target);

    // X-measures the victim and, when the outcome is 1, logs a Pauli-Z on
    // each correction qubit. The corrections' formulas must sum to the
    // victim's formula; the measurement bit comes from the seeded stream.
    int terminate(QubitId victim, const std::vector<QubitId>& corrections);

    ClusterReport classify() const;

    const Formula& formula(QubitId q) const;
    bool is_active(QubitId q) const;
    std::size_t qubit_count() const { return qubits_.size(); }
    std::uint32_t symbols_created() const { return next_symbol_; }

    const std::vector<QubitId>& z_log() const { return z_log_; }
    const CircuitTrace& trace() const { return trace_; }
    const std::shared_ptr<BitSource>& bit_source() const { return bits_; }

private:
    struct QubitRec {
        Formula formula;
        bool active = true;
    };

    QubitRec& active_rec(QubitId q, const char* op);

    std::vector<QubitRec> qubits_;
    std::uint32_t next_symbol_ = 0;
    std::vector<QubitId> z_log_;
    CircuitTrace trace_;
    std::shared_ptr<BitSource> bits_;
};

}  // namespace qlnc
