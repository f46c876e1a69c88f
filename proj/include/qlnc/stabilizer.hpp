#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qlnc/errors.hpp"
#include "qlnc/random.hpp"

namespace qlnc {

enum class Pauli : std::uint8_t { I, X, Y, Z };

// A signed Pauli operator on n qubits, e.g. +X⊗X or -Z⊗I.
struct PauliString {
    std::vector<Pauli> ops;
    int sign = +1;  // +1 or -1

    // Accepts an optional +/- prefix followed by letters IXYZ, e.g. "-XZ".
    static PauliString parse(std::string_view text);
    std::string str() const;
};

enum class Gate : std::uint8_t { H, CNOT, X, Z };

// Stabilizer tableau with destabilizer rows: rows 0..n-1 are destabilizers,
// rows n..2n-1 stabilizers, one sign bit per row. Gates conjugate every
// generator; measurements are O(n^2).
class Tableau {
public:
    explicit Tableau(std::size_t n);  // |0...0>, stabilizers Z_i

    std::size_t num_qubits() const { return n_; }

    void h(std::size_t q);
    void x(std::size_t q);
    void z(std::size_t q);
    void cnot(std::size_t control, std::size_t target);
    void apply_gate(Gate g, const std::vector<std::size_t>& qubits);

    // Z-basis measurement: deterministic when ±Z_q is in the group,
    // otherwise a seeded random bit with state collapse.
    int measure_z(std::size_t q, BitSource& bits);
    // X-basis measurement, realised as an H-conjugated Z measurement.
    int measure_x(std::size_t q, BitSource& bits);

    // Replay variants: collapse onto `desired` when the outcome is random;
    // `.second` reports whether the outcome was random. A deterministic
    // outcome ignores `desired` and is returned as-is.
    std::pair<int, bool> measure_z_given(std::size_t q, int desired);
    std::pair<int, bool> measure_x_given(std::size_t q, int desired);

    // True iff p (with its sign) is an element of the stabilizer group.
    bool stabilizes(const PauliString& p) const;

    // True iff +XX and +ZZ on (q1,q2) both stabilize: the pair is in the
    // Bell state |Φ+> and carries no entanglement with any other qubit.
    bool is_bell(std::size_t q1, std::size_t q2) const;

    // Re-verifies the symplectic structure of the generators after every
    // gate. Off by default; unit tests switch it on for small circuits.
    void set_verify_after_gate(bool on) { verify_after_gate_ = on; }
    void check_invariants() const;

private:
    struct Row {
        std::vector<std::uint8_t> x, z;
        std::uint8_t r = 0;  // 0 -> +1, 1 -> -1
    };

    void range_check(std::size_t q, const char* op) const;
    void row_mult(Row& h, const Row& i) const;  // h <- h * i with sign tracking
    static int phase_exponent(std::uint8_t x1, std::uint8_t z1, std::uint8_t x2,
                              std::uint8_t z2);
    static bool commutes(const Row& a, const Row& b);
    std::pair<int, bool> measure_z_core(std::size_t q, int desired, BitSource* bits);
    void after_gate();

    std::size_t n_;
    std::vector<Row> rows_;  // 2n rows
    bool verify_after_gate_ = false;
};

}  // namespace qlnc
