#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qlnc/protocol.hpp"
#include "qlnc/stabilizer.hpp"

using namespace qlnc;

TEST_CASE("fresh tableaus stabilize Z on every qubit") {
    Tableau one(1);
    CHECK(one.stabilizes(PauliString::parse("Z")));
    CHECK_FALSE(one.stabilizes(PauliString::parse("-Z")));
    CHECK_FALSE(one.stabilizes(PauliString::parse("X")));

    Tableau two(2);
    CHECK(two.stabilizes(PauliString::parse("ZI")));
    CHECK(two.stabilizes(PauliString::parse("IZ")));
    CHECK(two.stabilizes(PauliString::parse("ZZ")));  // products stabilize too
}

TEST_CASE("hadamard turns |0> into |+>") {
    Tableau t(1);
    t.set_verify_after_gate(true);
    t.h(0);
    CHECK(t.stabilizes(PauliString::parse("X")));
    CHECK_FALSE(t.stabilizes(PauliString::parse("Z")));
}

TEST_CASE("bell construction stabilizes XX and ZZ") {
    Tableau t(2);
    t.set_verify_after_gate(true);
    t.h(0);
    t.cnot(0, 1);
    CHECK(t.stabilizes(PauliString::parse("XX")));
    CHECK(t.stabilizes(PauliString::parse("ZZ")));
    CHECK_FALSE(t.stabilizes(PauliString::parse("-XX")));
    CHECK(t.stabilizes(PauliString::parse("-YY")));
    CHECK(t.is_bell(0, 1));
    CHECK(t.is_bell(1, 0));
}

TEST_CASE("pauli gates flip stabilizer signs") {
    Tableau plus(1);
    plus.h(0);
    plus.z(0);
    CHECK(plus.stabilizes(PauliString::parse("-X")));

    Tableau zero(1);
    zero.x(0);
    CHECK(zero.stabilizes(PauliString::parse("-Z")));
}

TEST_CASE("three-qubit GHZ stabilizers") {
    Tableau t(3);
    t.set_verify_after_gate(true);
    t.h(0);
    t.cnot(0, 1);
    t.cnot(0, 2);
    CHECK(t.stabilizes(PauliString::parse("XXX")));
    CHECK(t.stabilizes(PauliString::parse("ZZI")));
    CHECK(t.stabilizes(PauliString::parse("IZZ")));
    CHECK(t.stabilizes(PauliString::parse("ZIZ")));
    CHECK_FALSE(t.stabilizes(PauliString::parse("XXI")));
    CHECK_FALSE(t.is_bell(0, 1));  // entangled with qubit 2
}

TEST_CASE("gate preconditions") {
    Tableau t(2);
    CHECK_THROWS_AS(t.h(2), IndexOutOfRangeError);
    CHECK_THROWS_AS(t.cnot(0, 0), SelfTargetError);
    CHECK_THROWS_AS(t.stabilizes(PauliString::parse("XXX")), LengthMismatchError);
    CHECK_THROWS_AS(t.is_bell(0, 0), SelfTargetError);
}

TEST_CASE("x measurement is deterministic on X eigenstates") {
    BitSource bits(5);
    Tableau plus(1);
    plus.h(0);
    CHECK(plus.measure_x(0, bits) == 0);
    CHECK(plus.measure_x(0, bits) == 0);  // measuring a group element is stable

    Tableau minus(1);
    minus.h(0);
    minus.z(0);
    CHECK(minus.measure_x(0, bits) == 1);
}

TEST_CASE("x measurement on half a bell pair is random over seeds") {
    std::set<int> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        BitSource bits(seed);
        Tableau t(2);
        t.h(0);
        t.cnot(0, 1);
        seen.insert(t.measure_x(0, bits));
    }
    CHECK(seen == std::set<int>{0, 1});
}

TEST_CASE("measuring an operator in the group never changes the state") {
    BitSource bits(11);
    Tableau t(2);
    t.h(0);
    t.cnot(0, 1);
    // XX is in the group; once one half collapses, repeating the same
    // measurement is deterministic.
    const int first = t.measure_x(0, bits);
    for (int i = 0; i < 5; ++i) {
        CHECK(t.measure_x(0, bits) == first);
    }
}

TEST_CASE("forced measurement collapses to the requested branch") {
    for (const int want : {0, 1}) {
        Tableau t(2);
        t.h(0);
        t.cnot(0, 1);
        const auto [outcome, was_random] = t.measure_x_given(0, want);
        CHECK(was_random);
        CHECK(outcome == want);
        // the other half now matches the forced branch deterministically
        const auto [other, random2] = t.measure_x_given(1, 0);
        CHECK_FALSE(random2);
        CHECK(other == want);
    }
}

TEST_CASE("measurement collapse updates the group") {
    BitSource bits(3);
    Tableau t(2);
    t.h(0);
    t.cnot(0, 1);
    const int z0 = t.measure_z(0, bits);
    const int z1 = t.measure_z(1, bits);
    CHECK(z0 == z1);  // ZZ correlation of the Bell pair
    CHECK(t.stabilizes(PauliString::parse(z0 ? "-ZI" : "+ZI")));
}

TEST_CASE("invariant checker accepts gate-conjugated tableaus") {
    Tableau t(4);
    t.set_verify_after_gate(true);
    t.h(0);
    t.cnot(0, 1);
    t.cnot(1, 2);
    t.x(3);
    t.z(2);
    t.cnot(2, 3);
    CHECK_NOTHROW(t.check_invariants());
}

TEST_CASE("superdense coding round-trips all four messages through the oracle") {
    for (int b1 = 0; b1 < 2; ++b1) {
        for (int b0 = 0; b0 < 2; ++b0) {
            Tableau t(2);
            t.h(0);
            t.cnot(0, 1);  // qubit 0 = transmitter half
            superdense_encode(t, SuperdenseMessage{b1, b0}, 0);
            const SuperdenseMessage m = superdense_decode(t, 0, 1);
            CHECK(m == SuperdenseMessage{b1, b0});
        }
    }
}

TEST_CASE("superdense decode demands a bell-like state") {
    Tableau t(2);  // |00>, never entangled
    CHECK_THROWS_AS(superdense_decode(t, 0, 1), NoBellPairError);
}

TEST_CASE("decode on an unencoded bell pair yields 00") {
    Tableau t(2);
    t.h(0);
    t.cnot(0, 1);
    CHECK(superdense_decode(t, 0, 1) == SuperdenseMessage{0, 0});
}

TEST_CASE("pauli string parsing and printing") {
    const PauliString p = PauliString::parse("-XIZY");
    CHECK(p.sign == -1);
    CHECK(p.ops.size() == 4);
    CHECK(p.str() == "-XIZY");
    CHECK(PauliString::parse("XX").str() == "+XX");
    CHECK_THROWS_AS(PauliString::parse("XQ"), LengthMismatchError);
}
