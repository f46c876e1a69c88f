#include "qlnc/decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qlnc {

using ordered_json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// GF(2) span over <= 64 source streams
// ---------------------------------------------------------------------------

class Gf2Span {
public:
    bool contains(std::uint64_t v) const { return reduce(v) == 0; }

    void insert(std::uint64_t v) {
        v = reduce(v);
        if (v != 0) {
            basis_.push_back(v);
            std::sort(basis_.begin(), basis_.end(), std::greater<>());
        }
    }

private:
    std::uint64_t reduce(std::uint64_t v) const {
        for (const std::uint64_t b : basis_) {
            v = std::min(v, v ^ b);
        }
        return v;
    }

    std::vector<std::uint64_t> basis_;
};

std::uint64_t vector_mask(const std::vector<std::uint8_t>& v) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i]) mask |= std::uint64_t{1} << i;
    }
    return mask;
}

// ---------------------------------------------------------------------------
// path machinery (deterministic: neighbours ordered by node id, then link)
// ---------------------------------------------------------------------------

struct PathQuery {
    const Network& net;
    const std::vector<Rational>& residual;
    bool quantum_only = false;
    const std::set<std::size_t>* excluded = nullptr;
};

std::optional<std::vector<std::size_t>> bfs_path(const PathQuery& q, const std::string& src,
                                                 const std::string& dst) {
    std::vector<std::pair<std::string, std::size_t>> order;  // (dst id, link)
    for (std::size_t i = 0; i < q.net.links.size(); ++i) {
        order.emplace_back(q.net.links[i].dst, i);
    }
    std::sort(order.begin(), order.end());

    std::map<std::string, std::size_t> via;  // node -> link that reached it
    std::set<std::string> seen{src};
    std::queue<std::string> frontier;
    frontier.push(src);
    while (!frontier.empty() && !seen.contains(dst)) {
        const std::string node = frontier.front();
        frontier.pop();
        for (const auto& [to, link] : order) {
            const Link& l = q.net.links[link];
            if (l.src != node || seen.contains(to)) continue;
            if (q.quantum_only && l.kind != LinkKind::Quantum) continue;
            if (q.excluded && q.excluded->contains(link)) continue;
            if (q.residual[link] <= Rational{0}) continue;
            via[to] = link;
            seen.insert(to);
            frontier.push(to);
        }
    }
    if (!seen.contains(dst)) return std::nullopt;
    std::vector<std::size_t> path;
    std::string node = dst;
    while (node != src) {
        const std::size_t link = via.at(node);
        path.push_back(link);
        node = q.net.links[link].src;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Rational> full_rates(const Network& net) {
    std::vector<Rational> r;
    r.reserve(net.links.size());
    for (const Link& l : net.links) r.push_back(l.rate);
    return r;
}

// One exclusive path per pair; nullopt unless every pair is connected.
std::optional<std::vector<std::vector<std::size_t>>> pack_pair_paths(
    const Network& net, const std::vector<Rational>& residual, bool quantum_only,
    std::set<std::size_t>& used) {
    std::vector<std::vector<std::size_t>> paths;
    for (int i = 1; i <= net.pair_count; ++i) {
        const auto path = bfs_path({net, residual, quantum_only, &used},
                                   net.transmitter_id(i), net.receiver_id(i));
        if (!path) return std::nullopt;
        used.insert(path->begin(), path->end());
        paths.push_back(*path);
    }
    return paths;
}

Rational min_rate_over(const std::vector<Rational>& residual,
                       const std::set<std::size_t>& links) {
    Rational m{0};
    bool first = true;
    for (const std::size_t l : links) {
        if (first || residual[l] < m) m = residual[l];
        first = false;
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// validator
// ---------------------------------------------------------------------------

namespace {

struct PathCheck {
    const Network& net;
    std::vector<std::string>& violations;

    // Paths must cover the component's edges exactly, one path per pair.
    void run(const std::vector<EdgeUse>& comp,
             const std::vector<std::vector<std::size_t>>& paths, const char* name,
             bool quantum_only) {
        if (paths.size() != static_cast<std::size_t>(net.pair_count)) {
            violations.push_back(std::string(name) + ": expected one path per pair");
            return;
        }
        std::set<std::size_t> comp_links;
        for (const EdgeUse& e : comp) comp_links.insert(e.link);
        std::set<std::size_t> covered;
        for (int i = 1; i <= net.pair_count; ++i) {
            const auto& path = paths[i - 1];
            if (path.empty()) {
                violations.push_back(std::string(name) + ": pair " + std::to_string(i) +
                                     " has an empty path");
                continue;
            }
            std::string at = net.transmitter_id(i);
            for (const std::size_t link : path) {
                if (link >= net.links.size()) {
                    violations.push_back(std::string(name) + ": path link out of range");
                    return;
                }
                const Link& l = net.links[link];
                if (!comp_links.contains(link)) {
                    violations.push_back(std::string(name) + ": path uses link " +
                                         std::to_string(link) + " outside the component");
                }
                if (!covered.insert(link).second) {
                    violations.push_back(std::string(name) + ": link " + std::to_string(link) +
                                         " used by two paths");
                }
                if (quantum_only && l.kind != LinkKind::Quantum) {
                    violations.push_back(std::string(name) + ": classical link " +
                                         std::to_string(link) + " in a quantum path");
                }
                if (l.src != at) {
                    violations.push_back(std::string(name) + ": pair " + std::to_string(i) +
                                         " path is not connected");
                    break;
                }
                at = l.dst;
            }
            if (at != net.receiver_id(i)) {
                violations.push_back(std::string(name) + ": pair " + std::to_string(i) +
                                     " path does not end at its receiver");
            }
        }
        if (covered != comp_links) {
            violations.push_back(std::string(name) + ": paths do not cover the component edges");
        }
    }
};

void check_classical_code(const Network& net, const std::vector<EdgeUse>& c1,
                          const ClassicalCode& code, std::vector<std::string>& violations) {
    const int k = net.pair_count;
    if (code.edge_vectors.size() != c1.size()) {
        violations.push_back("c1 code: one vector per c1 edge required");
        return;
    }
    std::vector<std::uint64_t> masks;
    for (std::size_t e = 0; e < c1.size(); ++e) {
        if (code.edge_vectors[e].size() != static_cast<std::size_t>(k)) {
            violations.push_back("c1 code: vector length must equal k");
            return;
        }
        masks.push_back(vector_mask(code.edge_vectors[e]));
    }
    // Availability fixpoint: an edge may carry any combination spanned at
    // its tail; transmitters seed their own unit vector.
    std::map<std::string, Gf2Span> avail;
    for (int i = 1; i <= k; ++i) {
        avail[net.transmitter_id(i)].insert(std::uint64_t{1} << (i - 1));
    }
    std::vector<bool> ok(c1.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < c1.size(); ++e) {
            if (ok[e]) continue;
            const Link& l = net.links[c1[e].link];
            if (avail[l.src].contains(masks[e])) {
                ok[e] = true;
                avail[l.dst].insert(masks[e]);
                changed = true;
            }
        }
    }
    for (std::size_t e = 0; e < c1.size(); ++e) {
        if (!ok[e]) {
            violations.push_back("c1 code: edge " + std::to_string(c1[e].link) +
                                 " carries a combination not derivable at its tail");
        }
    }
    for (int i = 1; i <= k; ++i) {
        if (!avail[net.receiver_id(i)].contains(std::uint64_t{1} << (i - 1))) {
            violations.push_back("c1 code: receiver " + std::to_string(i) +
                                 " cannot recover its stream");
        }
    }
}

}  // namespace

std::vector<std::string> validate_decomposition(const Network& net, const Decomposition& d) {
    std::vector<std::string> violations;
    std::map<std::size_t, Rational> budget;

    const auto scan = [&](const std::vector<EdgeUse>& comp, const char* name,
                          const std::optional<Rational>& uniform) {
        std::set<std::size_t> seen;
        for (const EdgeUse& e : comp) {
            if (e.link >= net.links.size()) {
                violations.push_back(std::string(name) + ": link index " +
                                     std::to_string(e.link) + " out of range");
                continue;
            }
            if (!seen.insert(e.link).second) {
                violations.push_back(std::string(name) + ": duplicate link " +
                                     std::to_string(e.link));
            }
            if (e.rate <= Rational{0}) {
                violations.push_back(std::string(name) + ": nonpositive rate on link " +
                                     std::to_string(e.link));
            }
            if (uniform && e.rate != *uniform) {
                violations.push_back(std::string(name) + ": edge rate " + rational_str(e.rate) +
                                     " differs from the component rate " +
                                     rational_str(*uniform));
            }
            budget[e.link] += e.rate;
        }
    };
    scan(d.c1, "c1", d.w_tilde);
    scan(d.c2, "c2", d.w);
    scan(d.c3, "c3", std::nullopt);
    scan(d.c4, "c4", std::nullopt);

    for (const auto& [link, total] : budget) {
        if (link < net.links.size() && total > net.links[link].rate) {
            violations.push_back("edge-disjointness: allocations on link " +
                                 std::to_string(link) + " total " + rational_str(total) +
                                 " > rate " + rational_str(net.links[link].rate));
        }
    }

    if (d.c1.empty() && d.w_tilde != Rational{0}) {
        violations.push_back("c1 is empty but w~ is nonzero");
    }
    if (d.c2.empty() && d.w != Rational{0}) {
        violations.push_back("c2 is empty but w is nonzero");
    }

    PathCheck paths{net, violations};
    if (!d.c2.empty() || !d.c2_paths.empty()) {
        for (const EdgeUse& e : d.c2) {
            if (e.link < net.links.size() && net.links[e.link].kind != LinkKind::Quantum) {
                violations.push_back("c2: link " + std::to_string(e.link) + " is classical");
            }
        }
        paths.run(d.c2, d.c2_paths, "c2", true);
    }

    if (!d.c1.empty()) {
        if (d.c1_code) {
            check_classical_code(net, d.c1, *d.c1_code, violations);
        } else if (!d.c1_paths.empty()) {
            paths.run(d.c1, d.c1_paths, "c1", false);
            if (violations.empty()) {
                ClassicalCode derived;
                std::map<std::size_t, std::size_t> entry_of_link;
                for (std::size_t e = 0; e < d.c1.size(); ++e) entry_of_link[d.c1[e].link] = e;
                derived.edge_vectors.assign(d.c1.size(),
                                            std::vector<std::uint8_t>(net.pair_count, 0));
                for (int i = 1; i <= net.pair_count; ++i) {
                    for (const std::size_t link : d.c1_paths[i - 1]) {
                        derived.edge_vectors[entry_of_link.at(link)][i - 1] = 1;
                    }
                }
                check_classical_code(net, d.c1, derived, violations);
            }
        } else {
            violations.push_back("c1 has edges but neither paths nor a code");
        }
    }

    const bool has_code = !d.c3.empty() || !d.c4.empty() || d.code_schedule.has_value();
    if (has_code) {
        if (!d.code_schedule) {
            violations.push_back("c3/c4 present without a code schedule");
            return violations;
        }
        if (d.c2.empty()) {
            violations.push_back("replenishment components without c2 paths to feed");
        }
        std::set<std::size_t> qubit_links, bit_links;
        std::map<std::size_t, Rational> alloc;
        for (const EdgeUse& e : d.c3) {
            if (e.link >= net.links.size()) continue;
            if (net.links[e.link].kind == LinkKind::Quantum) qubit_links.insert(e.link);
            bit_links.insert(e.link);
            alloc[e.link] += e.rate;
        }
        for (const EdgeUse& e : d.c4) {
            if (e.link >= net.links.size()) continue;
            bit_links.insert(e.link);
            alloc[e.link] += e.rate;
        }
        try {
            FormulaEngine engine(std::uint64_t{0});
            ScheduleLimits limits{&qubit_links, &bit_links};
            const ScheduleRun run =
                run_schedule(engine, net, *d.code_schedule, nullptr, 1, limits);
            // Per round each edge moves `uses` payloads; at code rate w the
            // edge needs allocation uses * w.
            for (const auto& [link, uses] : run.link_uses) {
                if (d.w > Rational{0} && Rational(uses) * d.w > alloc[link]) {
                    violations.push_back("code schedule uses link " + std::to_string(link) +
                                         " " + std::to_string(uses) +
                                         "x per round, exceeding its allocation at rate w");
                }
            }
            const ClusterReport report = engine.classify();
            if (!report.unresolved.empty()) {
                violations.push_back("code replay left unresolved qubits");
            }
            std::map<QubitId, std::string> location;
            for (const auto& [tag, qubit] : run.qubit_of_tag) {
                location[qubit] = run.location_of_tag.at(tag);
            }
            std::set<int> matched;
            for (const Cluster& cluster : report.clusters) {
                if (cluster.qubits.size() != 2) {
                    violations.push_back("code replay produced a cluster of size " +
                                         std::to_string(cluster.qubits.size()));
                    continue;
                }
                const std::set<std::string> at{location.at(cluster.qubits[0]),
                                               location.at(cluster.qubits[1])};
                bool found = false;
                for (int i = 1; i <= net.pair_count; ++i) {
                    if (at == std::set<std::string>{net.transmitter_id(i), net.receiver_id(i)} &&
                        matched.insert(i).second) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    violations.push_back("code replay produced a pair not matching any "
                                         "transmitter-receiver pair");
                }
            }
            if (matched.size() != static_cast<std::size_t>(net.pair_count)) {
                violations.push_back("code replay did not connect every pair");
            }
        } catch (const std::exception& e) {
            violations.push_back(std::string("code replay: ") + e.what());
        }
    }
    return violations;
}

RateSummary achieved_rate(const Network& net, const Decomposition& d) {
    const auto violations = validate_decomposition(net, d);
    if (!violations.empty()) {
        throw NotValidatedError("achieved_rate: decomposition invalid: " + violations.front());
    }
    return RateSummary{d.w_tilde, d.w, d.w_tilde + Rational{2} * d.w};
}

// ---------------------------------------------------------------------------
// builders and the greedy search
// ---------------------------------------------------------------------------

Decomposition routing_only_decomposition(const Network& net) {
    Decomposition d;
    const std::vector<Rational> residual = full_rates(net);
    std::set<std::size_t> used;
    const auto paths = pack_pair_paths(net, residual, false, used);
    if (!paths) return d;  // no routing solution; empty is the honest answer
    d.c1_paths = *paths;
    d.w_tilde = min_rate_over(residual, used);
    for (const std::size_t link : used) d.c1.push_back({link, d.w_tilde});
    std::sort(d.c1.begin(), d.c1.end(),
              [](const EdgeUse& a, const EdgeUse& b) { return a.link < b.link; });
    return d;
}

namespace {

// Classify a schedule's movements into quantum-carrying and bit-carrying
// edges; bits sent between transmitters form the termination component.
void schedule_components(const Network& net, const QlncSchedule& schedule,
                         std::set<std::size_t>& c3_links, std::set<std::size_t>& c4_links) {
    std::set<std::string> transmitters;
    for (const Node& n : net.nodes) {
        if (n.role.kind == NodeRole::Kind::Transmitter) transmitters.insert(n.id);
    }
    for (const ScheduleStep& step : schedule.steps) {
        for (const QubitMove& move : step.moves) c3_links.insert(move.link);
        for (const Termination& term : step.terminations) {
            for (const auto& bit_link : term.bit_links) {
                if (!bit_link) continue;
                if (transmitters.contains(net.links[*bit_link].src)) {
                    c4_links.insert(*bit_link);
                } else {
                    c3_links.insert(*bit_link);
                }
            }
        }
    }
}

std::optional<Decomposition> reverse_path_candidate(const Network& net) {
    Decomposition d;
    const std::vector<Rational> residual = full_rates(net);
    std::set<std::size_t> c2_used;
    const auto forward = pack_pair_paths(net, residual, true, c2_used);
    if (!forward) return std::nullopt;
    d.c2_paths = *forward;

    // Reverse quantum paths may share edges; shared capacity is split
    // equally, so the sustainable rate is the worst rate/shares quotient.
    std::map<std::size_t, int> shares;
    std::vector<std::vector<std::size_t>> reverse_paths;
    for (int i = 1; i <= net.pair_count; ++i) {
        const auto path = bfs_path({net, residual, true, &c2_used}, net.receiver_id(i),
                                   net.transmitter_id(i));
        if (!path) return std::nullopt;
        for (const std::size_t link : *path) ++shares[link];
        reverse_paths.push_back(*path);
    }
    Rational w = min_rate_over(residual, c2_used);
    for (const auto& [link, count] : shares) {
        w = std::min(w, residual[link] / count);
    }
    if (w <= Rational{0}) return std::nullopt;
    d.w = w;
    for (const std::size_t link : c2_used) d.c2.push_back({link, w});
    std::sort(d.c2.begin(), d.c2.end(),
              [](const EdgeUse& a, const EdgeUse& b) { return a.link < b.link; });
    for (const auto& [link, count] : shares) {
        d.c3.push_back({link, Rational(count) * w});
    }

    // The replenishment schedule: each receiver mints a pair and relays one
    // half back along its reverse path, one hop per step.
    QlncSchedule schedule;
    std::size_t longest = 0;
    for (const auto& path : reverse_paths) longest = std::max(longest, path.size());
    schedule.steps.resize(longest);
    for (int i = 1; i <= net.pair_count; ++i) {
        const int keep_tag = 2 * (i - 1);
        const int move_tag = keep_tag + 1;
        const std::string r = net.receiver_id(i);
        schedule.steps[0].local.push_back(LocalPlus{r, keep_tag});
        schedule.steps[0].local.push_back(LocalZero{r, move_tag});
        schedule.steps[0].local.push_back(LocalCnot{r, keep_tag, move_tag});
        for (std::size_t hop = 0; hop < reverse_paths[i - 1].size(); ++hop) {
            schedule.steps[hop].moves.push_back(QubitMove{move_tag, reverse_paths[i - 1][hop]});
        }
    }
    d.code_schedule = std::move(schedule);

    // Offer whatever capacity is left to plain routing.
    std::vector<Rational> after = residual;
    for (const EdgeUse& e : d.c2) after[e.link] -= e.rate;
    for (const EdgeUse& e : d.c3) after[e.link] -= e.rate;
    std::set<std::size_t> c1_used;
    if (const auto c1_paths = pack_pair_paths(net, after, false, c1_used)) {
        d.c1_paths = *c1_paths;
        d.w_tilde = min_rate_over(after, c1_used);
        for (const std::size_t link : c1_used) d.c1.push_back({link, d.w_tilde});
        std::sort(d.c1.begin(), d.c1.end(),
                  [](const EdgeUse& a, const EdgeUse& b) { return a.link < b.link; });
    }
    return d;
}

std::optional<Decomposition> relay_pattern_candidate(const Network& net) {
    if (net.pair_count < 2) return std::nullopt;
    Decomposition d;
    const std::vector<Rational> residual = full_rates(net);
    std::set<std::size_t> c2_used;
    const auto forward = pack_pair_paths(net, residual, true, c2_used);
    if (!forward) return std::nullopt;
    d.c2_paths = *forward;

    // Look for two relay nodes wired like the GHZ-merge code wants:
    // receivers feed mA, mA feeds mB, mB feeds every transmitter, mA tells
    // the receivers its outcomes, and the transmitters form a full mesh.
    std::vector<std::string> ids;
    for (const Node& n : net.nodes) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());

    for (const std::string& ma : ids) {
        for (const std::string& mb : ids) {
            if (ma == mb) continue;
            KpairCodeSchedule code;
            try {
                code = make_kpair_code_schedule(net, ma, mb, &c2_used);
            } catch (const MissingLinkError&) {
                continue;
            } catch (const InvalidKError&) {
                return std::nullopt;
            }
            std::set<std::size_t> c3_links, c4_links;
            schedule_components(net, code.schedule, c3_links, c4_links);
            std::set<std::size_t> claimed = c2_used;
            claimed.insert(c3_links.begin(), c3_links.end());
            claimed.insert(c4_links.begin(), c4_links.end());
            const Rational w = min_rate_over(residual, claimed);
            if (w <= Rational{0}) continue;
            d.w = w;
            for (const std::size_t link : c2_used) d.c2.push_back({link, w});
            for (const std::size_t link : c3_links) d.c3.push_back({link, w});
            for (const std::size_t link : c4_links) d.c4.push_back({link, w});
            d.code_schedule = std::move(code.schedule);

            std::vector<Rational> after = residual;
            for (const std::size_t link : claimed) after[link] -= w;
            std::set<std::size_t> c1_used;
            if (const auto c1_paths = pack_pair_paths(net, after, false, c1_used)) {
                d.c1_paths = *c1_paths;
                d.w_tilde = min_rate_over(after, c1_used);
                for (const std::size_t link : c1_used) d.c1.push_back({link, d.w_tilde});
                std::sort(d.c1.begin(), d.c1.end(),
                          [](const EdgeUse& a, const EdgeUse& b) { return a.link < b.link; });
            }
            return d;
        }
    }
    return std::nullopt;
}

Rational candidate_rate(const Decomposition& d) { return d.w_tilde + Rational{2} * d.w; }

}  // namespace

Decomposition find_decomposition_greedy(const Network& net) {
    std::vector<Decomposition> candidates;
    candidates.push_back(routing_only_decomposition(net));
    if (auto reverse = reverse_path_candidate(net)) {
        candidates.push_back(std::move(*reverse));
    }
    if (auto pattern = relay_pattern_candidate(net)) {
        candidates.push_back(std::move(*pattern));
    }
    Decomposition best;  // the empty decomposition is the legal worst case
    Rational best_rate{0};
    for (auto& cand : candidates) {
        if (!validate_decomposition(net, cand).empty()) continue;
        const Rational rate = candidate_rate(cand);
        if (rate > best_rate) {
            best = std::move(cand);
            best_rate = rate;
        }
    }
    return best;
}

Decomposition qlnc_code_decomposition(const Network& net) {
    Decomposition d;
    const int k = net.pair_count;
    d.w = Rational{1};
    for (int i = 1; i <= k; ++i) {
        const auto direct =
            net.find_link(net.transmitter_id(i), net.receiver_id(i), LinkKind::Quantum);
        if (!direct) {
            throw MissingLinkError("no direct quantum link for pair " + std::to_string(i));
        }
        d.c2.push_back({*direct, d.w});
        d.c2_paths.push_back({*direct});
    }
    KpairCodeSchedule code = make_kpair_code_schedule(net);
    std::set<std::size_t> c3_links, c4_links;
    schedule_components(net, code.schedule, c3_links, c4_links);
    for (const std::size_t link : c3_links) d.c3.push_back({link, d.w});
    for (const std::size_t link : c4_links) d.c4.push_back({link, d.w});
    d.code_schedule = std::move(code.schedule);
    return d;
}

// ---------------------------------------------------------------------------
// file format
// ---------------------------------------------------------------------------

namespace {

ordered_json edges_to_json(const std::vector<EdgeUse>& edges) {
    ordered_json arr = ordered_json::array();
    for (const EdgeUse& e : edges) {
        ordered_json j;
        j["link"] = e.link;
        j["rate"] = rational_str(e.rate);
        arr.push_back(j);
    }
    return arr;
}

std::vector<EdgeUse> edges_from_json(const ordered_json& arr) {
    std::vector<EdgeUse> edges;
    for (const auto& j : arr) {
        edges.push_back({j.at("link").get<std::size_t>(),
                         parse_rational(j.at("rate").get<std::string>())});
    }
    return edges;
}

ordered_json schedule_to_json(const QlncSchedule& schedule) {
    ordered_json steps = ordered_json::array();
    for (const ScheduleStep& step : schedule.steps) {
        ordered_json js;
        js["local"] = ordered_json::array();
        for (const LocalOp& op : step.local) {
            ordered_json jo;
            if (const auto* plus = std::get_if<LocalPlus>(&op)) {
                jo["op"] = "plus";
                jo["node"] = plus->node;
                jo["tag"] = plus->tag;
            } else if (const auto* zero = std::get_if<LocalZero>(&op)) {
                jo["op"] = "zero";
                jo["node"] = zero->node;
                jo["tag"] = zero->tag;
            } else {
                const auto& cnot = std::get<LocalCnot>(op);
                jo["op"] = "cnot";
                jo["node"] = cnot.node;
                jo["control"] = cnot.control_tag;
                jo["target"] = cnot.target_tag;
            }
            js["local"].push_back(jo);
        }
        js["terminations"] = ordered_json::array();
        for (const Termination& term : step.terminations) {
            ordered_json jt;
            jt["node"] = term.node;
            jt["victim"] = term.victim_tag;
            jt["corrections"] = term.correction_tags;
            ordered_json links = ordered_json::array();
            for (const auto& l : term.bit_links) {
                links.push_back(l ? static_cast<std::int64_t>(*l) : -1);
            }
            jt["bit_links"] = links;
            js["terminations"].push_back(jt);
        }
        js["moves"] = ordered_json::array();
        for (const QubitMove& move : step.moves) {
            ordered_json jm;
            jm["tag"] = move.tag;
            jm["link"] = move.link;
            js["moves"].push_back(jm);
        }
        steps.push_back(js);
    }
    return steps;
}

QlncSchedule schedule_from_json(const ordered_json& steps) {
    QlncSchedule schedule;
    for (const auto& js : steps) {
        ScheduleStep step;
        for (const auto& jo : js.at("local")) {
            const std::string op = jo.at("op").get<std::string>();
            if (op == "plus") {
                step.local.push_back(LocalPlus{jo.at("node").get<std::string>(),
                                               jo.at("tag").get<int>()});
            } else if (op == "zero") {
                step.local.push_back(LocalZero{jo.at("node").get<std::string>(),
                                               jo.at("tag").get<int>()});
            } else if (op == "cnot") {
                step.local.push_back(LocalCnot{jo.at("node").get<std::string>(),
                                               jo.at("control").get<int>(),
                                               jo.at("target").get<int>()});
            } else {
                throw FileError("unknown schedule op '" + op + "'");
            }
        }
        for (const auto& jt : js.at("terminations")) {
            Termination term;
            term.node = jt.at("node").get<std::string>();
            term.victim_tag = jt.at("victim").get<int>();
            term.correction_tags = jt.at("corrections").get<std::vector<int>>();
            for (const auto& l : jt.at("bit_links")) {
                const std::int64_t v = l.get<std::int64_t>();
                term.bit_links.push_back(v < 0 ? std::nullopt
                                               : std::optional<std::size_t>(v));
            }
            step.terminations.push_back(std::move(term));
        }
        for (const auto& jm : js.at("moves")) {
            step.moves.push_back(QubitMove{jm.at("tag").get<int>(),
                                           jm.at("link").get<std::size_t>()});
        }
        schedule.steps.push_back(std::move(step));
    }
    return schedule;
}

}  // namespace

std::string Decomposition::to_json() const {
    ordered_json j;
    j["w_tilde"] = rational_str(w_tilde);
    j["w"] = rational_str(w);
    j["c1"] = edges_to_json(c1);
    j["c2"] = edges_to_json(c2);
    j["c3"] = edges_to_json(c3);
    j["c4"] = edges_to_json(c4);
    j["c1_paths"] = c1_paths;
    j["c2_paths"] = c2_paths;
    if (c1_code) {
        j["c1_code"] = c1_code->edge_vectors;
    }
    if (code_schedule) {
        j["schedule"] = schedule_to_json(*code_schedule);
    }
    return j.dump(2) + "\n";
}

Decomposition Decomposition::from_json(const std::string& text) {
    Decomposition d;
    try {
        const ordered_json j = ordered_json::parse(text);
        d.w_tilde = parse_rational(j.at("w_tilde").get<std::string>());
        d.w = parse_rational(j.at("w").get<std::string>());
        d.c1 = edges_from_json(j.at("c1"));
        d.c2 = edges_from_json(j.at("c2"));
        d.c3 = edges_from_json(j.at("c3"));
        d.c4 = edges_from_json(j.at("c4"));
        d.c1_paths = j.at("c1_paths").get<std::vector<std::vector<std::size_t>>>();
        d.c2_paths = j.at("c2_paths").get<std::vector<std::vector<std::size_t>>>();
        if (j.contains("c1_code")) {
            d.c1_code = ClassicalCode{
                j.at("c1_code").get<std::vector<std::vector<std::uint8_t>>>()};
        }
        if (j.contains("schedule")) {
            d.code_schedule = schedule_from_json(j.at("schedule"));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FileError(std::string("decomposition parse: ") + e.what());
    }
    return d;
}

void save_decomposition(const Decomposition& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << d.to_json();
}

Decomposition load_decomposition(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return Decomposition::from_json(buf.str());
}

}  // namespace qlnc
