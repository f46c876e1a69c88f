#include "qlnc/formula_engine.hpp"

#include <algorithm>
#include <map>

namespace qlnc {

Formula::Formula(std::vector<SymbolId> symbols) : symbols_(std::move(symbols)) {
    std::sort(symbols_.begin(), symbols_.end());
    // pairs cancel mod 2
    std::vector<SymbolId> reduced;
    for (const SymbolId s : symbols_) {
        if (!reduced.empty() && reduced.back() == s) {
            reduced.pop_back();
        } else {
            reduced.push_back(s);
        }
    }
    symbols_ = std::move(reduced);
}

void Formula::add(const Formula& other) {
    std::vector<SymbolId> out;
    out.reserve(symbols_.size() + other.symbols_.size());
    std::set_symmetric_difference(symbols_.begin(), symbols_.end(),
                                  other.symbols_.begin(), other.symbols_.end(),
                                  std::back_inserter(out));
    symbols_ = std::move(out);
}

FormulaEngine::FormulaEngine(std::uint64_t seed)
    : bits_(std::make_shared<BitSource>(seed)) {}

FormulaEngine::FormulaEngine(std::shared_ptr<BitSource> bits) : bits_(std::move(bits)) {}

FormulaEngine::QubitRec& FormulaEngine::active_rec(QubitId q, const char* op) {
    if (q.value >= qubits_.size()) {
        throw TerminatedQubitError(std::string(op) + ": unknown qubit");
    }
    QubitRec& rec = qubits_[q.value];
    if (!rec.active) {
        throw TerminatedQubitError(std::string(op) + ": qubit " +
                                   std::to_string(q.value) + " is terminated");
    }
    return rec;
}

std::pair<QubitId, SymbolId> FormulaEngine::new_plus() {
    const SymbolId s{next_symbol_++};
    const QubitId q{static_cast<std::uint32_t>(qubits_.size())};
    qubits_.push_back(QubitRec{Formula::single(s), true});
    trace_.push_back(TraceInitPlus{q});
    return {q, s};
}

QubitId FormulaEngine::new_zero() {
    const QubitId q{static_cast<std::uint32_t>(qubits_.size())};
    qubits_.push_back(QubitRec{Formula{}, true});
    trace_.push_back(TraceInitZero{q});
    return q;
}

void FormulaEngine::apply_cnot(QubitId control, QubitId target) {
    if (control == target) {
        throw SelfTargetError("apply_cnot: control equals target");
    }
    const QubitRec& ctl = active_rec(control, "apply_cnot");
    QubitRec& tgt = active_rec(target, "apply_cnot");
    tgt.formula.add(ctl.formula);
    trace_.push_back(TraceCnot{control, target});
}

void FormulaEngine::apply_pauli_z(QubitId target) {
    active_rec(target, "apply_pauli_z");
    z_log_.push_back(target);
    trace_.push_back(TracePauliZ{target});
}

int FormulaEngine::terminate(QubitId victim, const std::vector<QubitId>& corrections) {
    QubitRec& vic = active_rec(victim, "terminate");
    Formula sum;
    for (const QubitId c : corrections) {
        if (c == victim) {
            throw FormulaMismatchError("terminate: victim cannot correct itself");
        }
        sum.add(active_rec(c, "terminate").formula);
    }
    if (sum != vic.formula) {
        throw FormulaMismatchError("terminate: correction formulas do not sum to victim formula");
    }
    vic.active = false;
    const int bit = bits_->next_bit();
    trace_.push_back(TraceMeasureX{victim, bit});
    if (bit == 1) {
        for (const QubitId c : corrections) {
            apply_pauli_z(c);
        }
    }
    return bit;
}

ClusterReport FormulaEngine::classify() const {
    ClusterReport report;
    std::map<SymbolId, std::vector<QubitId>> by_symbol;
    for (std::uint32_t i = 0; i < qubits_.size(); ++i) {
        const QubitRec& rec = qubits_[i];
        if (!rec.active) continue;
        if (rec.formula.size() == 1) {
            by_symbol[rec.formula.symbols().front()].push_back(QubitId{i});
        } else {
            report.unresolved.push_back(QubitId{i});
        }
    }
    for (auto& [symbol, qubits] : by_symbol) {
        report.clusters.push_back(Cluster{symbol, std::move(qubits)});
    }
    return report;
}

const Formula& FormulaEngine::formula(QubitId q) const {
    return qubits_.at(q.value).formula;
}

bool FormulaEngine::is_active(QubitId q) const {
    return q.value < qubits_.size() && qubits_[q.value].active;
}

}  // namespace qlnc
