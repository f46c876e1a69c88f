#include "qlnc/schedule.hpp"

namespace qlnc {

void TrafficLog::record(std::int64_t step, std::size_t link, PayloadKind payload,
                        std::string note) {
    if (link >= net_->links.size()) {
        throw Error("traffic: link index out of range");
    }
    if (step < current_step_) {
        throw Error("traffic: records must be written in step order");
    }
    if (step > current_step_) {
        current_step_ = step;
        step_usage_.clear();
    }
    const Link& l = net_->links[link];
    if (payload == PayloadKind::Qubit && l.kind != LinkKind::Quantum) {
        throw Error("traffic: qubit payload on classical link " + l.src + "->" + l.dst);
    }
    const std::int64_t used = ++step_usage_[link];
    if (Rational(used) > l.rate) {
        throw CapacityExceededError("traffic: link " + l.src + "->" + l.dst +
                                    " over rate " + rational_str(l.rate) + " at step " +
                                    std::to_string(step));
    }
    ++validated_;
    if (payload == PayloadKind::Qubit) {
        ++qubit_payloads_;
    } else {
        ++bit_payloads_;
    }
    if (keep_records_) {
        records_.push_back(TrafficRecord{step, link, payload, std::move(note)});
    }
}

namespace {

struct TagState {
    std::map<int, QubitId>& qubit_of_tag;
    std::map<int, std::string>& location_of_tag;

    QubitId qubit_at(int tag, const std::string& node, const char* what) const {
        const auto q = qubit_of_tag.find(tag);
        if (q == qubit_of_tag.end()) {
            throw Error(std::string(what) + ": unknown tag " + std::to_string(tag));
        }
        const auto loc = location_of_tag.find(tag);
        if (loc == location_of_tag.end() || loc->second != node) {
            throw Error(std::string(what) + ": tag " + std::to_string(tag) +
                        " is not at node " + node);
        }
        return q->second;
    }
};

}  // namespace

ScheduleRun run_schedule(FormulaEngine& engine, const Network& net,
                         const QlncSchedule& schedule, TrafficLog* log,
                         std::int64_t first_step, const ScheduleLimits& limits) {
    ScheduleRun run;
    TagState tags{run.qubit_of_tag, run.location_of_tag};

    const auto check_allowed = [](const std::set<std::size_t>* allowed, std::size_t link,
                                  const char* what) {
        if (allowed && !allowed->contains(link)) {
            throw Error(std::string(what) + ": link " + std::to_string(link) +
                        " is outside the permitted edge set");
        }
    };

    for (std::size_t s = 0; s < schedule.steps.size(); ++s) {
        const ScheduleStep& step = schedule.steps[s];
        const std::int64_t step_no = first_step + static_cast<std::int64_t>(s);

        for (const LocalOp& op : step.local) {
            if (const auto* plus = std::get_if<LocalPlus>(&op)) {
                const auto [q, sym] = engine.new_plus();
                (void)sym;
                run.qubit_of_tag[plus->tag] = q;
                run.location_of_tag[plus->tag] = plus->node;
            } else if (const auto* zero = std::get_if<LocalZero>(&op)) {
                run.qubit_of_tag[zero->tag] = engine.new_zero();
                run.location_of_tag[zero->tag] = zero->node;
            } else {
                const auto& cnot = std::get<LocalCnot>(op);
                engine.apply_cnot(tags.qubit_at(cnot.control_tag, cnot.node, "cnot"),
                                  tags.qubit_at(cnot.target_tag, cnot.node, "cnot"));
            }
        }

        for (const Termination& term : step.terminations) {
            if (term.correction_tags.size() != term.bit_links.size()) {
                throw Error("termination: corrections and bit links differ in length");
            }
            const QubitId victim = tags.qubit_at(term.victim_tag, term.node, "terminate");
            std::vector<QubitId> corrections;
            for (std::size_t c = 0; c < term.correction_tags.size(); ++c) {
                const int tag = term.correction_tags[c];
                const auto loc = run.location_of_tag.find(tag);
                if (loc == run.location_of_tag.end()) {
                    throw Error("termination: unknown correction tag");
                }
                corrections.push_back(run.qubit_of_tag.at(tag));
                const auto& bit_link = term.bit_links[c];
                if (loc->second == term.node) {
                    if (bit_link) {
                        throw Error("termination: co-located correction needs no link");
                    }
                    continue;
                }
                if (!bit_link) {
                    throw MissingLinkError("termination: no link for bit " + term.node +
                                           "->" + loc->second);
                }
                const Link& l = net.links.at(*bit_link);
                if (l.src != term.node || l.dst != loc->second) {
                    throw Error("termination: bit link does not join " + term.node +
                                " to " + loc->second);
                }
                check_allowed(limits.bit_links, *bit_link, "termination bit");
                ++run.link_uses[*bit_link];
                if (log) {
                    log->record(step_no, *bit_link, PayloadKind::ClassicalBit,
                                "correction bit for tag " + std::to_string(term.victim_tag));
                }
            }
            engine.terminate(victim, corrections);
        }

        for (const QubitMove& move : step.moves) {
            const Link& l = net.links.at(move.link);
            const auto loc = run.location_of_tag.find(move.tag);
            if (loc == run.location_of_tag.end() || loc->second != l.src) {
                throw Error("move: tag " + std::to_string(move.tag) + " is not at " + l.src);
            }
            if (l.kind != LinkKind::Quantum) {
                throw Error("move: qubit over classical link " + l.src + "->" + l.dst);
            }
            check_allowed(limits.qubit_links, move.link, "qubit move");
            ++run.link_uses[move.link];
            if (log) {
                log->record(step_no, move.link, PayloadKind::Qubit,
                            "qubit tag " + std::to_string(move.tag));
            }
            loc->second = l.dst;
        }
    }
    return run;
}

KpairCodeSchedule make_kpair_code_schedule(const Network& net, const std::string& relay_a,
                                           const std::string& relay_b,
                                           const std::set<std::size_t>* exclude) {
    const int k = net.pair_count;
    if (k < 2) {
        throw InvalidKError("k-pair code needs k >= 2");
    }
    const auto pick = [&net, exclude](const std::string& s, const std::string& d,
                                      LinkKind kind) {
        for (std::size_t i = 0; i < net.links.size(); ++i) {
            const Link& l = net.links[i];
            if (l.src == s && l.dst == d && l.kind == kind &&
                (!exclude || !exclude->contains(i))) {
                return i;
            }
        }
        throw MissingLinkError(std::string("no ") + link_kind_name(kind) + " link " + s +
                               "->" + d);
    };
    const auto quantum = [&pick](const std::string& s, const std::string& d) {
        return pick(s, d, LinkKind::Quantum);
    };
    const auto classical = [&pick](const std::string& s, const std::string& d) {
        return pick(s, d, LinkKind::Classical);
    };

    std::vector<std::string> t_id(k + 1), r_id(k + 1);
    for (int i = 1; i <= k; ++i) {
        t_id[i] = net.transmitter_id(i);
        r_id[i] = net.receiver_id(i);
    }

    KpairCodeSchedule out;
    int next_tag = 0;
    const auto fresh = [&next_tag] { return next_tag++; };

    // keep[i]: pair i's half retained at r_i. to_t[i][j]: pair i's GHZ qubit
    // sent to transmitter j. to_m2[i]: pair i's GHZ qubit sent to m2.
    std::vector<int> keep(k + 1), to_m2(k + 1);
    std::vector<std::vector<int>> to_t(k + 1, std::vector<int>(k + 1, -1));
    // parity[i]: the folded-parity qubit delivered to transmitter i.
    std::vector<int> parity(k + 1);

    QlncSchedule& sched = out.schedule;
    sched.steps.resize(4);

    // Step 1: each receiver builds its GHZ fan and ships the legs out.
    for (int i = 1; i <= k; ++i) {
        keep[i] = fresh();
        sched.steps[0].local.push_back(LocalPlus{r_id[i], keep[i]});
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            to_t[i][j] = fresh();
            sched.steps[0].local.push_back(LocalZero{r_id[i], to_t[i][j]});
            sched.steps[0].local.push_back(LocalCnot{r_id[i], keep[i], to_t[i][j]});
        }
        to_m2[i] = fresh();
        sched.steps[0].local.push_back(LocalZero{r_id[i], to_m2[i]});
        sched.steps[0].local.push_back(LocalCnot{r_id[i], keep[i], to_m2[i]});
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            sched.steps[0].moves.push_back(QubitMove{to_t[i][j], quantum(r_id[i], t_id[j])});
        }
        sched.steps[0].moves.push_back(QubitMove{to_m2[i], quantum(r_id[i], relay_a)});
    }

    // Step 2: m2 folds all symbols into one parity qubit, terminates its GHZ
    // copies (bits go back to the receivers), and ships the parity to m1.
    const int parity_seed = fresh();
    sched.steps[1].local.push_back(LocalZero{relay_a, parity_seed});
    for (int i = 1; i <= k; ++i) {
        sched.steps[1].local.push_back(LocalCnot{relay_a, to_m2[i], parity_seed});
    }
    for (int i = 1; i <= k; ++i) {
        sched.steps[1].terminations.push_back(
            Termination{relay_a, to_m2[i], {keep[i]}, {classical(relay_a, r_id[i])}});
    }
    sched.steps[1].moves.push_back(QubitMove{parity_seed, quantum(relay_a, relay_b)});

    // Step 3: m1 copies the parity qubit out to every transmitter.
    parity[1] = parity_seed;
    for (int i = 2; i <= k; ++i) {
        parity[i] = fresh();
        sched.steps[2].local.push_back(LocalZero{relay_b, parity[i]});
        sched.steps[2].local.push_back(LocalCnot{relay_b, parity_seed, parity[i]});
    }
    for (int i = 1; i <= k; ++i) {
        sched.steps[2].moves.push_back(QubitMove{parity[i], quantum(relay_b, t_id[i])});
    }

    // Step 4: each transmitter cancels the foreign symbols out of its parity
    // qubit, then terminates the foreign GHZ legs; their bits cross the
    // transmitter mesh and land as Z corrections on the freshly relabelled
    // halves.
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            sched.steps[3].local.push_back(LocalCnot{t_id[i], to_t[j][i], parity[i]});
        }
    }
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            sched.steps[3].terminations.push_back(Termination{
                t_id[i], to_t[j][i], {parity[j]}, {classical(t_id[i], t_id[j])}});
        }
    }

    out.r_keep_tags.assign(keep.begin() + 1, keep.end());
    out.t_keep_tags.assign(parity.begin() + 1, parity.end());
    return out;
}

}  // namespace qlnc
