#include "qlnc/network.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace qlnc {

using ordered_json = nlohmann::ordered_json;

std::optional<std::size_t> Network::node_index(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) return i;
    }
    return std::nullopt;
}

const Node* Network::find_node(const std::string& id) const {
    const auto idx = node_index(id);
    return idx ? &nodes[*idx] : nullptr;
}

std::string Network::transmitter_id(int i) const {
    for (const Node& n : nodes) {
        if (n.role.kind == NodeRole::Kind::Transmitter && n.role.index == i) return n.id;
    }
    throw Error("network has no transmitter " + std::to_string(i));
}

std::string Network::receiver_id(int i) const {
    for (const Node& n : nodes) {
        if (n.role.kind == NodeRole::Kind::Receiver && n.role.index == i) return n.id;
    }
    throw Error("network has no receiver " + std::to_string(i));
}

std::optional<std::size_t> Network::find_link(const std::string& src,
                                              const std::string& dst,
                                              LinkKind kind) const {
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Link& l = links[i];
        if (l.src == src && l.dst == dst && l.kind == kind) return i;
    }
    return std::nullopt;
}

Network build_two_node_loop() {
    Network net;
    net.pair_count = 1;
    net.nodes = {{"A", NodeRole::transmitter(1)}, {"B", NodeRole::receiver(1)}};
    net.links = {{"A", "B", LinkKind::Quantum, Rational{1}},
                 {"B", "A", LinkKind::Quantum, Rational{1}}};
    return net;
}

Network build_butterfly() {
    Network net;
    net.pair_count = 2;
    net.nodes = {{"s1", NodeRole::transmitter(1)}, {"s2", NodeRole::transmitter(2)},
                 {"m1", NodeRole::relay("adder")}, {"m2", NodeRole::relay("fanout")},
                 {"d1", NodeRole::receiver(1)},    {"d2", NodeRole::receiver(2)}};
    const auto c = [](const char* s, const char* d) {
        return Link{s, d, LinkKind::Classical, Rational{1}};
    };
    // d1 (sink of stream 1) is fed directly by s2 and via the coded middle
    // edge; symmetrically for d2.
    net.links = {c("s1", "m1"), c("s2", "m1"), c("m1", "m2"), c("m2", "d1"),
                 c("m2", "d2"), c("s1", "d2"), c("s2", "d1")};
    return net;
}

Network build_kpair_bottleneck(int k) {
    if (k < 2) {
        throw InvalidKError("build_kpair_bottleneck: k must be >= 2, got " +
                            std::to_string(k));
    }
    Network net;
    net.pair_count = k;
    for (int i = 1; i <= k; ++i) {
        net.nodes.push_back({"t" + std::to_string(i), NodeRole::transmitter(i)});
    }
    for (int i = 1; i <= k; ++i) {
        net.nodes.push_back({"r" + std::to_string(i), NodeRole::receiver(i)});
    }
    net.nodes.push_back({"m1", NodeRole::relay("m1")});
    net.nodes.push_back({"m2", NodeRole::relay("m2")});

    const auto add = [&net](const std::string& s, const std::string& d, LinkKind kind) {
        net.links.push_back({s, d, kind, Rational{1}});
    };
    const auto t = [](int i) { return "t" + std::to_string(i); };
    const auto r = [](int i) { return "r" + std::to_string(i); };

    for (int i = 1; i <= k; ++i) add(t(i), r(i), LinkKind::Quantum);          // (a)
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            if (j != i) add(r(i), t(j), LinkKind::Quantum);                   // (b)
    for (int i = 1; i <= k; ++i) add(r(i), "m2", LinkKind::Quantum);          // (c)
    add("m2", "m1", LinkKind::Quantum);                                       // (d)
    for (int i = 1; i <= k; ++i) add("m1", t(i), LinkKind::Quantum);          // (e)
    for (int i = 1; i <= k; ++i) add("m2", r(i), LinkKind::Classical);        // (f)
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            if (j != i) add(t(i), t(j), LinkKind::Classical);                 // (g)
    return net;
}

Network normalize_unit_edges(const Network& net) {
    Network out;
    out.nodes = net.nodes;
    out.pair_count = net.pair_count;
    for (const Link& l : net.links) {
        Rational remaining = l.rate;
        const Rational one{1};
        while (remaining > one) {
            out.links.push_back({l.src, l.dst, l.kind, one});
            remaining -= one;
        }
        if (remaining > Rational{0}) {
            out.links.push_back({l.src, l.dst, l.kind, remaining});
        }
    }
    return out;
}

Rational cut_out_capacity(const Network& net, const Partition& p,
                          const std::set<LinkKind>& kinds) {
    if (p.inside.empty() || p.inside.size() >= net.nodes.size()) {
        throw InvalidPartitionError("cut_out_capacity: partition must be a nonempty proper subset");
    }
    for (const std::string& id : p.inside) {
        if (!net.find_node(id)) {
            throw InvalidPartitionError("cut_out_capacity: unknown node '" + id + "'");
        }
    }
    Rational total{0};
    for (const Link& l : net.links) {
        if (!kinds.contains(l.kind)) continue;
        if (p.inside.contains(l.src) && !p.inside.contains(l.dst)) {
            total += l.rate;
        }
    }
    return total;
}

std::vector<std::string> validate(const Network& net) {
    std::vector<std::string> violations;
    std::set<std::string> ids;
    for (const Node& n : net.nodes) {
        if (!ids.insert(n.id).second) {
            violations.push_back("duplicate node id '" + n.id + "'");
        }
    }
    std::map<int, int> t_seen, r_seen;
    for (const Node& n : net.nodes) {
        if (n.role.kind == NodeRole::Kind::Transmitter) ++t_seen[n.role.index];
        if (n.role.kind == NodeRole::Kind::Receiver) ++r_seen[n.role.index];
    }
    const auto check_roles = [&](const std::map<int, int>& seen, const char* what) {
        for (const auto& [index, count] : seen) {
            if (count > 1) {
                violations.push_back("duplicate " + std::string(what) + " index " +
                                     std::to_string(index));
            }
            if (index < 1 || index > net.pair_count) {
                violations.push_back(std::string(what) + " index " + std::to_string(index) +
                                     " outside 1.." + std::to_string(net.pair_count));
            }
        }
        for (int i = 1; i <= net.pair_count; ++i) {
            if (!seen.contains(i)) {
                violations.push_back("missing " + std::string(what) + " " + std::to_string(i));
            }
        }
    };
    check_roles(t_seen, "transmitter");
    check_roles(r_seen, "receiver");
    for (std::size_t i = 0; i < net.links.size(); ++i) {
        const Link& l = net.links[i];
        if (!ids.contains(l.src)) {
            violations.push_back("link " + std::to_string(i) + " has undeclared src '" +
                                 l.src + "'");
        }
        if (!ids.contains(l.dst)) {
            violations.push_back("link " + std::to_string(i) + " has undeclared dst '" +
                                 l.dst + "'");
        }
        if (l.rate <= Rational{0}) {
            violations.push_back("link " + std::to_string(i) + " has nonpositive rate");
        }
    }
    return violations;
}

namespace {

ordered_json role_to_json(const NodeRole& role) {
    ordered_json j;
    switch (role.kind) {
        case NodeRole::Kind::Transmitter:
            j["role"] = "transmitter";
            j["index"] = role.index;
            break;
        case NodeRole::Kind::Receiver:
            j["role"] = "receiver";
            j["index"] = role.index;
            break;
        case NodeRole::Kind::Relay:
            j["role"] = "relay";
            j["name"] = role.name;
            break;
    }
    return j;
}

NodeRole role_from_json(const ordered_json& j) {
    const std::string role = j.at("role").get<std::string>();
    if (role == "transmitter") return NodeRole::transmitter(j.at("index").get<int>());
    if (role == "receiver") return NodeRole::receiver(j.at("index").get<int>());
    if (role == "relay") return NodeRole::relay(j.at("name").get<std::string>());
    throw FileError("unknown node role '" + role + "'");
}

}  // namespace

std::string network_to_json(const Network& net) {
    ordered_json j;
    j["k"] = net.pair_count;
    j["nodes"] = ordered_json::array();
    for (const Node& n : net.nodes) {
        ordered_json jn;
        jn["id"] = n.id;
        jn.update(role_to_json(n.role));
        j["nodes"].push_back(jn);
    }
    j["links"] = ordered_json::array();
    for (const Link& l : net.links) {
        ordered_json jl;
        jl["src"] = l.src;
        jl["dst"] = l.dst;
        jl["kind"] = link_kind_name(l.kind);
        jl["rate"] = rational_str(l.rate);
        j["links"].push_back(jl);
    }
    return j.dump(2) + "\n";
}

Network network_from_json(const std::string& text) {
    Network net;
    try {
        const ordered_json j = ordered_json::parse(text);
        net.pair_count = j.at("k").get<int>();
        for (const auto& jn : j.at("nodes")) {
            net.nodes.push_back({jn.at("id").get<std::string>(), role_from_json(jn)});
        }
        for (const auto& jl : j.at("links")) {
            const std::string kind = jl.at("kind").get<std::string>();
            if (kind != "classical" && kind != "quantum") {
                throw FileError("unknown link kind '" + kind + "'");
            }
            net.links.push_back({jl.at("src").get<std::string>(),
                                 jl.at("dst").get<std::string>(),
                                 kind == "quantum" ? LinkKind::Quantum : LinkKind::Classical,
                                 parse_rational(jl.at("rate").get<std::string>())});
        }
    } catch (const nlohmann::json::exception& e) {
        throw FileError(std::string("network parse: ") + e.what());
    }
    return net;
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << network_to_json(net);
}

Network load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

}  // namespace qlnc
