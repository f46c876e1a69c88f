#include "qlnc/stabilizer.hpp"

#include <algorithm>
#include <cassert>

namespace qlnc {

PauliString PauliString::parse(std::string_view text) {
    PauliString p;
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        p.sign = text[0] == '-' ? -1 : +1;
        i = 1;
    }
    for (; i < text.size(); ++i) {
        switch (text[i]) {
            case 'I': p.ops.push_back(Pauli::I); break;
            case 'X': p.ops.push_back(Pauli::X); break;
            case 'Y': p.ops.push_back(Pauli::Y); break;
            case 'Z': p.ops.push_back(Pauli::Z); break;
            default:
                throw LengthMismatchError("PauliString::parse: bad letter in '" +
                                          std::string(text) + "'");
        }
    }
    return p;
}

std::string PauliString::str() const {
    std::string out(sign < 0 ? "-" : "+");
    for (const Pauli p : ops) {
        out += "IXYZ"[static_cast<int>(p)];
    }
    return out;
}

Tableau::Tableau(std::size_t n) : n_(n) {
    if (n == 0) {
        throw IndexOutOfRangeError("Tableau: qubit count must be >= 1");
    }
    rows_.assign(2 * n, Row{std::vector<std::uint8_t>(n, 0),
                            std::vector<std::uint8_t>(n, 0), 0});
    for (std::size_t i = 0; i < n; ++i) {
        rows_[i].x[i] = 1;       // destabilizer X_i
        rows_[n + i].z[i] = 1;   // stabilizer Z_i
    }
}

void Tableau::range_check(std::size_t q, const char* op) const {
    if (q >= n_) {
        throw IndexOutOfRangeError(std::string(op) + ": qubit index " +
                                   std::to_string(q) + " out of range");
    }
}

void Tableau::h(std::size_t q) {
    range_check(q, "h");
    for (Row& row : rows_) {
        row.r ^= row.x[q] & row.z[q];
        std::swap(row.x[q], row.z[q]);
    }
    after_gate();
}

void Tableau::x(std::size_t q) {
    range_check(q, "x");
    for (Row& row : rows_) {
        row.r ^= row.z[q];
    }
    after_gate();
}

void Tableau::z(std::size_t q) {
    range_check(q, "z");
    for (Row& row : rows_) {
        row.r ^= row.x[q];
    }
    after_gate();
}

void Tableau::cnot(std::size_t control, std::size_t target) {
    range_check(control, "cnot");
    range_check(target, "cnot");
    if (control == target) {
        throw SelfTargetError("cnot: control equals target");
    }
    for (Row& row : rows_) {
        row.r ^= row.x[control] & row.z[target] &
                 (row.x[target] ^ row.z[control] ^ 1);
        row.x[target] ^= row.x[control];
        row.z[control] ^= row.z[target];
    }
    after_gate();
}

void Tableau::apply_gate(Gate g, const std::vector<std::size_t>& qubits) {
    switch (g) {
        case Gate::H: h(qubits.at(0)); break;
        case Gate::X: x(qubits.at(0)); break;
        case Gate::Z: z(qubits.at(0)); break;
        case Gate::CNOT: cnot(qubits.at(0), qubits.at(1)); break;
    }
}

// Exponent of i contributed on one qubit when multiplying Pauli letters
// (x1,z1) * (x2,z2), per the standard tableau sign rules.
int Tableau::phase_exponent(std::uint8_t x1, std::uint8_t z1, std::uint8_t x2,
                            std::uint8_t z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return z2 - x2;                      // Y * ...
    if (x1 && !z1) return z2 * (2 * x2 - 1);           // X * ...
    return x2 * (1 - 2 * z2);                          // Z * ...
}

void Tableau::row_mult(Row& h, const Row& i) const {
    int phase = 2 * h.r + 2 * i.r;
    for (std::size_t j = 0; j < n_; ++j) {
        phase += phase_exponent(i.x[j], i.z[j], h.x[j], h.z[j]);
        h.x[j] ^= i.x[j];
        h.z[j] ^= i.z[j];
    }
    phase = ((phase % 4) + 4) % 4;
    assert(phase == 0 || phase == 2);
    h.r = static_cast<std::uint8_t>(phase / 2);
}

bool Tableau::commutes(const Row& a, const Row& b) {
    int acc = 0;
    for (std::size_t j = 0; j < a.x.size(); ++j) {
        acc ^= (a.x[j] & b.z[j]) ^ (a.z[j] & b.x[j]);
    }
    return acc == 0;
}

std::pair<int, bool> Tableau::measure_z_core(std::size_t q, int desired,
                                             BitSource* bits) {
    range_check(q, "measure_z");
    std::size_t pivot = 2 * n_;
    for (std::size_t p = n_; p < 2 * n_; ++p) {
        if (rows_[p].x[q]) {
            pivot = p;
            break;
        }
    }
    if (pivot < 2 * n_) {
        // Random outcome: some stabilizer anticommutes with Z_q. Row
        // pivot-n is skipped because it is overwritten below.
        for (std::size_t i = 0; i < 2 * n_; ++i) {
            if (i != pivot && i != pivot - n_ && rows_[i].x[q]) {
                row_mult(rows_[i], rows_[pivot]);
            }
        }
        rows_[pivot - n_] = rows_[pivot];
        Row& stab = rows_[pivot];
        std::fill(stab.x.begin(), stab.x.end(), 0);
        std::fill(stab.z.begin(), stab.z.end(), 0);
        stab.z[q] = 1;
        const int outcome = bits ? bits->next_bit() : desired;
        stab.r = static_cast<std::uint8_t>(outcome);
        return {outcome, true};
    }
    // Deterministic: accumulate the stabilizer product dual to Z_q.
    Row scratch{std::vector<std::uint8_t>(n_, 0), std::vector<std::uint8_t>(n_, 0), 0};
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows_[i].x[q]) {
            row_mult(scratch, rows_[i + n_]);
        }
    }
    return {scratch.r, false};
}

int Tableau::measure_z(std::size_t q, BitSource& bits) {
    return measure_z_core(q, 0, &bits).first;
}

int Tableau::measure_x(std::size_t q, BitSource& bits) {
    h(q);
    const int outcome = measure_z(q, bits);
    h(q);
    return outcome;
}

std::pair<int, bool> Tableau::measure_z_given(std::size_t q, int desired) {
    return measure_z_core(q, desired, nullptr);
}

std::pair<int, bool> Tableau::measure_x_given(std::size_t q, int desired) {
    h(q);
    const auto result = measure_z_core(q, desired, nullptr);
    h(q);
    return result;
}

bool Tableau::stabilizes(const PauliString& p) const {
    if (p.ops.size() != n_) {
        throw LengthMismatchError("stabilizes: operator length " +
                                  std::to_string(p.ops.size()) + " vs " +
                                  std::to_string(n_) + " qubits");
    }
    Row target{std::vector<std::uint8_t>(n_, 0), std::vector<std::uint8_t>(n_, 0),
               static_cast<std::uint8_t>(p.sign < 0 ? 1 : 0)};
    for (std::size_t j = 0; j < n_; ++j) {
        switch (p.ops[j]) {
            case Pauli::I: break;
            case Pauli::X: target.x[j] = 1; break;
            case Pauli::Y: target.x[j] = 1; target.z[j] = 1; break;
            case Pauli::Z: target.z[j] = 1; break;
        }
    }
    // Membership up to sign: must commute with every stabilizer generator.
    for (std::size_t i = n_; i < 2 * n_; ++i) {
        if (!commutes(target, rows_[i])) return false;
    }
    // Reconstruct via the destabilizer duality: generator i participates
    // iff the operator anticommutes with destabilizer i.
    Row acc{std::vector<std::uint8_t>(n_, 0), std::vector<std::uint8_t>(n_, 0), 0};
    for (std::size_t i = 0; i < n_; ++i) {
        if (!commutes(target, rows_[i])) {
            row_mult(acc, rows_[i + n_]);
        }
    }
    return acc.x == target.x && acc.z == target.z && acc.r == target.r;
}

bool Tableau::is_bell(std::size_t q1, std::size_t q2) const {
    range_check(q1, "is_bell");
    range_check(q2, "is_bell");
    if (q1 == q2) {
        throw SelfTargetError("is_bell: identical qubits");
    }
    PauliString xx, zz;
    xx.ops.assign(n_, Pauli::I);
    zz.ops.assign(n_, Pauli::I);
    xx.ops[q1] = xx.ops[q2] = Pauli::X;
    zz.ops[q1] = zz.ops[q2] = Pauli::Z;
    return stabilizes(xx) && stabilizes(zz);
}

void Tableau::after_gate() {
    if (verify_after_gate_) {
        check_invariants();
    }
}

void Tableau::check_invariants() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            const bool stab_pair = commutes(rows_[n_ + i], rows_[n_ + j]);
            const bool destab_pair = commutes(rows_[i], rows_[j]);
            const bool cross = commutes(rows_[i], rows_[n_ + j]);
            if (!stab_pair || !destab_pair) {
                throw Error("tableau invariant: generators must commute pairwise");
            }
            if (cross == (i == j)) {
                throw Error("tableau invariant: destabilizer duality broken");
            }
        }
    }
}

}  // namespace qlnc
