#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qlnc/errors.hpp"
#include "qlnc/rational.hpp"

namespace qlnc {

enum class LinkKind : std::uint8_t { Classical, Quantum };

inline const char* link_kind_name(LinkKind k) {
    return k == LinkKind::Classical ? "classical" : "quantum";
}

struct NodeRole {
    enum class Kind : std::uint8_t { Transmitter, Receiver, Relay };
    Kind kind = Kind::Relay;
    int index = 0;     // 1..k for transmitter/receiver
    std::string name;  // relay only

    static NodeRole transmitter(int i) { return {Kind::Transmitter, i, {}}; }
    static NodeRole receiver(int i) { return {Kind::Receiver, i, {}}; }
    static NodeRole relay(std::string n) { return {Kind::Relay, 0, std::move(n)}; }
};

struct Node {
    std::string id;
    NodeRole role;
};

// Directed link; parallel links between the same endpoints are permitted.
struct Link {
    std::string src, dst;
    LinkKind kind = LinkKind::Classical;
    Rational rate{1};
};

// A mixed directed multigraph: the classical and quantum sub-multigraphs
// share one node set. Links keep a stable order so that iteration (and with
// it scheduling) is deterministic. Immutable after construction by intent.
struct Network {
    std::vector<Node> nodes;
    std::vector<Link> links;
    int pair_count = 0;

    std::optional<std::size_t> node_index(const std::string& id) const;
    const Node* find_node(const std::string& id) const;
    std::string transmitter_id(int i) const;  // throws if absent
    std::string receiver_id(int i) const;

    // First link src->dst of the given kind, by stable order.
    std::optional<std::size_t> find_link(const std::string& src, const std::string& dst,
                                         LinkKind kind) const;
};

struct Partition {
    std::set<std::string> inside;
};

// Two nodes joined by one unit-rate quantum link in each direction; A is
// transmitter 1, B receiver 1.
Network build_two_node_loop();

// The 6-node two-pair butterfly: two sources, two sinks, an adder node and
// a fanout node, all classical unit links. The sink of stream 1 sits
// diagonally opposite its source, so plain routing cannot serve both pairs
// but the XOR code through the single middle edge can.
Network build_butterfly();

// k transmitter-receiver pairs plus two relay nodes m1, m2. Quantum links:
// t_i->r_i, r_i->t_j (j != i), r_i->m2, m2->m1, m1->t_i. Classical links:
// m2->r_i and t_i->t_j (j != i). All rates 1. The only quantum route from
// the receiver side back to a paired transmitter runs through the single
// m2->m1 bottleneck.
Network build_kpair_bottleneck(int k);

// Splits every link into parallel links of rate <= 1 whose rates sum to the
// original (unit edges plus at most one fractional remainder), per the
// rate-split multigraph view.
Network normalize_unit_edges(const Network& net);

// Sum of rates of links of the selected kinds leaving the partition.
Rational cut_out_capacity(const Network& net, const Partition& p,
                          const std::set<LinkKind>& kinds);

// Structural checks: declared endpoints, positive rates, well-formed
// transmitter/receiver role indices. Violations are returned, not thrown.
std::vector<std::string> validate(const Network& net);

// JSON document form: {"k":.., "nodes":[{id,role,...}], "links":[...]}
// with rates as "p/q" strings. dump(load(text)) is byte-identical.
std::string network_to_json(const Network& net);
Network network_from_json(const std::string& text);
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

}  // namespace qlnc
