#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncser/code.hpp"
#include "ncser/schedule.hpp"

namespace ncser {

/// Per-edge dual subspaces W_e, keyed by edge and source id. An information
/// vortex satisfies W_s = T_s on sources and W_e = T_e ∩ (span of incoming W)
/// on ordinary edges; a nontrivial one certifies non-serializability.
struct LinearVortex {
    std::map<std::string, Subspace> spaces;
};

struct LinearGreedyOutcome {
    LinearSchedule schedule;
    std::map<std::string, Subspace> sent;  // A_e per ordinary edge
    bool serializable = false;
};

/// Greedy serialization: send new information when possible. Maintains, per
/// ordinary edge, the span A_e of everything sent on it, and per vertex the
/// span of everything its incoming edges have sent (sources count in full
/// from the start). Each round transmits a single new functional on the
/// first edge, in declaration order, whose sendable space
/// B_e = T_e ∩ (span of incoming A) exceeds A_e. On termination the code is
/// serializable iff A_e = T_e everywhere; either way {A_e} is an information
/// vortex (the minimal one).
inline LinearGreedyOutcome greedy_serialize(const LinearCode& code) {
    detail::require_valid(code);
    const auto& g = code.graph;
    std::size_t ne = g.edges.size();

    std::vector<Subspace> sent(ne, zero_subspace(code.field, code.message_dim));
    std::map<std::string, Subspace> known;  // per vertex: span of incoming A
    for (const auto& v : g.vertices) {
        Subspace k = zero_subspace(code.field, code.message_dim);
        for (auto s : g.in_sources(v)) k = subspace_sum(k, code.source_spaces[s]);
        known.emplace(v, std::move(k));
    }
    std::vector<Subspace> sendable(ne, zero_subspace(code.field, code.message_dim));
    for (std::size_t e = 0; e < ne; ++e)
        sendable[e] = subspace_intersect(code.edge_spaces[e], known.at(g.edges[e].tail));

    long long bound = 0;
    for (const auto& t : code.edge_spaces) bound += t.dim();

    LinearGreedyOutcome out;
    long long rounds = 0;
    while (true) {
        std::size_t pick = ne;
        for (std::size_t e = 0; e < ne; ++e)
            if (sent[e] != sendable[e]) { pick = e; break; }
        if (pick == ne) break;

        auto x = pick_outside(sendable[pick], sent[pick]);
        if (!x) throw std::logic_error("greedy_serialize: A != B but no vector outside");
        long long before = sent[pick].dim();
        sent[pick] = subspace_sum(sent[pick], rref({*x}, code.message_dim, code.field));
        if (sent[pick].dim() != before + 1)
            throw std::logic_error("greedy_serialize: sent space did not grow by one");

        out.schedule.rounds.push_back({{g.edges[pick].id, Matrix{code.field, code.message_dim, {*x}}}});

        const std::string& head = g.edges[pick].head;
        Subspace& k = known.at(head);
        k = subspace_sum(k, rref({*x}, code.message_dim, code.field));
        for (auto e : g.out_edges(head))
            sendable[e] = subspace_intersect(code.edge_spaces[e], k);

        if (++rounds > bound)
            throw std::logic_error("greedy_serialize: round count exceeded sum of dim(T_e)");
    }

    out.serializable = true;
    for (std::size_t e = 0; e < ne; ++e) {
        out.sent.emplace(g.edges[e].id, sent[e]);
        if (sent[e] != code.edge_spaces[e]) out.serializable = false;
    }
    return out;
}

/// Package a greedy outcome as a vortex: W_e = A_e on ordinary edges,
/// W_s = T_s on sources.
inline LinearVortex greedy_vortex(const LinearCode& code, const LinearGreedyOutcome& outcome) {
    LinearVortex v;
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s)
        v.spaces.emplace(code.graph.sources[s].id, code.source_spaces[s]);
    for (const auto& e : code.graph.edges) v.spaces.emplace(e.id, outcome.sent.at(e.id));
    return v;
}

/// Exact check of the two vortex equations (subspace equality, not mere
/// containment).
inline bool verify_vortex(const LinearCode& code, const LinearVortex& vortex) {
    const auto& g = code.graph;
    auto lookup = [&](const std::string& id) -> const Subspace& {
        auto it = vortex.spaces.find(id);
        if (it == vortex.spaces.end())
            throw std::invalid_argument("vortex missing edge: " + id);
        return it->second;
    };
    for (std::size_t s = 0; s < g.sources.size(); ++s)
        if (lookup(g.sources[s].id) != code.source_spaces[s]) return false;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        Subspace incoming = zero_subspace(code.field, code.message_dim);
        for (auto s : g.in_sources(edge.tail)) incoming = subspace_sum(incoming, lookup(g.sources[s].id));
        for (auto i : g.in_edges(edge.tail)) incoming = subspace_sum(incoming, lookup(g.edges[i].id));
        if (lookup(edge.id) != subspace_intersect(code.edge_spaces[e], incoming)) return false;
    }
    return true;
}

/// Nontrivial iff W_e differs from T_e on some ordinary edge (sources are
/// excluded by definition).
inline bool is_nontrivial(const LinearCode& code, const LinearVortex& vortex) {
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e) {
        auto it = vortex.spaces.find(code.graph.edges[e].id);
        if (it == vortex.spaces.end())
            throw std::invalid_argument("vortex missing edge: " + code.graph.edges[e].id);
        if (it->second != code.edge_spaces[e]) return true;
    }
    return false;
}

inline ScheduleReport verify_schedule(const LinearCode& code, const LinearSchedule& schedule) {
    const auto& g = code.graph;
    for (const auto& round : schedule.rounds)
        for (const auto& [id, m] : round) {
            if (g.edge_index(id) < 0) throw SchemaError("schedule transmits on unknown edge: " + id);
            if (m.cols != code.message_dim) throw SchemaError("schedule row dimension mismatch on " + id);
            if (m.field != code.field) throw SchemaError("schedule field mismatch on " + id);
        }

    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        const Subspace& target = code.edge_spaces[e];
        // item 2: every round's rows lie in T_e
        for (std::size_t j = 0; j < schedule.rounds.size(); ++j) {
            auto it = schedule.rounds[j].find(edge.id);
            if (it == schedule.rounds[j].end()) continue;
            for (const auto& row : it->second.rows)
                if (!contains(target, row))
                    return {false, 2, edge.id, (long long)j,
                            "round sends a functional outside the edge's row space"};
        }
        // item 3: the concatenated rounds span all of T_e
        Subspace all = zero_subspace(code.field, code.message_dim);
        for (const auto& round : schedule.rounds) {
            auto it = round.find(edge.id);
            if (it != round.end()) all = subspace_sum(all, row_space(it->second));
        }
        if (all != target)
            return {false, 3, edge.id, -1, "rounds together do not span the edge's row space"};
        // item 4: each round computable from strictly earlier incoming rounds
        Subspace history = zero_subspace(code.field, code.message_dim);
        for (auto s : g.in_sources(edge.tail)) history = subspace_sum(history, code.source_spaces[s]);
        auto incoming = g.in_edges(edge.tail);
        for (std::size_t j = 0; j < schedule.rounds.size(); ++j) {
            auto it = schedule.rounds[j].find(edge.id);
            if (it != schedule.rounds[j].end())
                for (const auto& row : it->second.rows)
                    if (!contains(history, row))
                        return {false, 4, edge.id, (long long)j,
                                "round not computable from earlier incoming transmissions"};
            for (auto i : incoming) {
                auto hit = schedule.rounds[j].find(g.edges[i].id);
                if (hit != schedule.rounds[j].end())
                    history = subspace_sum(history, row_space(hit->second));
            }
        }
    }
    return {};
}

}  // namespace ncser
