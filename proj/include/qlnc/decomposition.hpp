#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlnc/network.hpp"
#include "qlnc/rational.hpp"
#include "qlnc/schedule.hpp"

namespace qlnc {

// A component's claim on one of the network's links. Components may claim
// fractions of the same link: each claim is a parallel sub-edge in the
// rate-split multigraph view, and the claims on a link must fit its rate.
struct EdgeUse {
    std::size_t link = 0;
    Rational rate{0};
};

// A binary linear network code over the c1 edges: each edge carries a GF(2)
// combination of the k source streams, given as a k-entry 0/1 vector.
struct ClassicalCode {
    std::vector<std::vector<std::uint8_t>> edge_vectors;  // aligned with c1
};

// Four edge-disjoint components of a mixed network:
//   c1  a classical linear code connecting the pairs, uniform edge rate w~;
//   c2  quantum forward paths, one per pair, uniform edge rate w, used for
//       superdense coding;
//   c3  the subgraph running the entanglement-replenishment code;
//   c4  the subgraph carrying that code's termination bits.
// The replenishment code itself is carried as a schedule and replayed
// symbolically by the validator.
struct Decomposition {
    std::vector<EdgeUse> c1, c2, c3, c4;
    Rational w_tilde{0};
    Rational w{0};
    std::vector<std::vector<std::size_t>> c1_paths;  // pair i-1: link indices
    std::vector<std::vector<std::size_t>> c2_paths;
    std::optional<ClassicalCode> c1_code;  // used instead of c1_paths if set
    std::optional<QlncSchedule> code_schedule;

    std::string to_json() const;
    static Decomposition from_json(const std::string& text);
};

struct RateSummary {
    Rational w_tilde{0};
    Rational w{0};
    Rational achieved{0};  // w_tilde + 2w
};

// Structural and semantic checks: per-link rate budgets (edge-disjointness
// in the rate-split view), rate uniformity for c1/c2, path validity, the
// GF(2) span check for c1's code, and a symbolic replay of the c3/c4
// schedule that must leave one shared pair per transmitter-receiver pair
// (information flow in either direction). Violations are returned.
std::vector<std::string> validate_decomposition(const Network& net, const Decomposition& d);

// Throws NotValidatedError when validate_decomposition is nonempty.
RateSummary achieved_rate(const Network& net, const Decomposition& d);

// Greedy search: packs quantum forward paths, then looks for replenishment
// (reverse quantum paths with equal bottleneck sharing, or the full
// GHZ-merge relay pattern), and offers the leftover capacity to c1 as
// disjoint-path routing. Never returns less than plain routing achieves;
// the result always passes validate_decomposition.
Decomposition find_decomposition_greedy(const Network& net);

// Disjoint-path routing only: everything in c1.
Decomposition routing_only_decomposition(const Network& net);

// The built-in mapping for a k-pair bottleneck network: direct links as c2
// at rate 1, the replenishment components as c3, the transmitter mesh as
// c4, and an empty c1.
Decomposition qlnc_code_decomposition(const Network& net);

void save_decomposition(const Decomposition& d, const std::string& path);
Decomposition load_decomposition(const std::string& path);

}  // namespace qlnc
