#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncser/code.hpp"
#include "ncser/schedule.hpp"

namespace ncser {

/// Per-edge Boolean subalgebras, each stored as the partition of the message
/// set into its atoms. Keyed by edge and source id.
struct SemiVortex {
    std::map<std::string, Partition> parts;
};

enum class VortexClass { Giv, SemiVortexOnly, Invalid };

struct GeneralGreedyOutcome {
    GeneralSchedule schedule;
    std::map<std::string, Partition> sent;  // A_e per ordinary edge
    bool serializable = false;
};

namespace detail {
/// The smallest-min block of b that is a proper subset of its containing
/// a-block; nullopt iff a == b. Requires a coarsened by b.
inline std::optional<std::vector<int>> binary_split_block(const Partition& b, const Partition& a) {
    if (!refines(b, a)) throw std::invalid_argument("choose_binary: a is not coarsened by b");
    if (a == b) return std::nullopt;
    for (const auto& block : b.blocks()) {
        int a_label = a.labels[block.front()];
        int a_size = 0;
        for (int l : a.labels)
            if (l == a_label) ++a_size;
        if ((int)block.size() < a_size) return block;
    }
    throw std::logic_error("choose_binary: refinement strict but no splitting block found");
}
}  // namespace detail

/// Deterministic choice of a binary-valued function in balg(b) \ balg(a),
/// for a coarsened by b: the indicator of the smallest-min block of b that
/// is a proper subset of its containing a-block, as a two-block partition.
/// Returns nullopt iff a == b.
inline std::optional<Partition> choose_binary(const Partition& b, const Partition& a) {
    auto block = detail::binary_split_block(b, a);
    if (!block) return std::nullopt;
    std::vector<int> indicator(a.size(), 0);
    for (int m : *block) indicator[m] = 1;
    return Partition::from_table(indicator);
}

/// Greedy serialization for general codes, the Boolean-algebra mirror of the
/// linear greedy: per edge the algebra A_e generated by everything sent, per
/// vertex the algebra of everything received (sources in full from the
/// start), and per edge the sendable algebra
/// B_e = balg(f_e) ∩ (plus of incoming A). Each round transmits one binary
/// function on the first edge, in declaration order, with A_e strictly below
/// B_e; at termination the code is serializable iff A_e = balg(f_e)
/// everywhere, and {A_e} is the minimal generalized information vortex.
inline GeneralGreedyOutcome greedy_serialize(const GeneralCode& code) {
    detail::require_valid(code);
    const auto& g = code.graph;
    std::size_t ne = g.edges.size();
    int n = (int)code.message_count;

    std::vector<Partition> sent(ne, Partition::single_block(n));
    std::map<std::string, Partition> known;
    for (const auto& v : g.vertices) {
        Partition k = Partition::single_block(n);
        for (auto s : g.in_sources(v)) k = algebra_plus(k, code.source_parts[s]);
        known.emplace(v, std::move(k));
    }
    std::vector<Partition> sendable(ne, Partition::single_block(n));
    for (std::size_t e = 0; e < ne; ++e)
        sendable[e] = algebra_intersect(code.edge_parts[e], known.at(g.edges[e].tail));

    long long bound = 0;
    for (const auto& t : code.edge_fns) bound += t.alphabet_size;

    GeneralGreedyOutcome out;
    long long rounds = 0;
    while (true) {
        std::size_t pick = ne;
        for (std::size_t e = 0; e < ne; ++e)
            if (sent[e] != sendable[e]) { pick = e; break; }
        if (pick == ne) break;

        auto block = detail::binary_split_block(sendable[pick], sent[pick]);
        if (!block) throw std::logic_error("greedy_serialize: A != B but nothing to send");
        std::vector<int> table(n, 0);
        for (int m : *block) table[m] = 1;
        Partition x = Partition::from_table(table);

        int before = sent[pick].block_count();
        sent[pick] = algebra_plus(sent[pick], x);
        if (sent[pick].block_count() <= before)
            throw std::logic_error("greedy_serialize: atom count did not increase");

        out.schedule.rounds.push_back({{g.edges[pick].id, table}});

        const std::string& head = g.edges[pick].head;
        Partition& k = known.at(head);
        k = algebra_plus(k, x);
        for (auto e : g.out_edges(head))
            sendable[e] = algebra_intersect(code.edge_parts[e], k);

        if (++rounds > bound)
            throw std::logic_error("greedy_serialize: round count exceeded sum of alphabet sizes");
    }

    out.serializable = true;
    for (std::size_t e = 0; e < ne; ++e) {
        out.sent.emplace(g.edges[e].id, sent[e]);
        if (sent[e] != code.edge_parts[e]) out.serializable = false;
    }
    return out;
}

inline SemiVortex greedy_vortex(const GeneralCode& code, const GeneralGreedyOutcome& outcome) {
    SemiVortex v;
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s)
        v.parts.emplace(code.graph.sources[s].id, code.source_parts[s]);
    for (const auto& e : code.graph.edges) v.parts.emplace(e.id, outcome.sent.at(e.id));
    return v;
}

/// Classify a candidate assignment of subalgebras: a GIV satisfies
/// A_e = balg(f_e) ∩ (plus of incoming A) with equality everywhere, a
/// semi-vortex only the one-sided containment; a broken source algebra or a
/// failed containment is invalid.
inline VortexClass classify_semivortex(const GeneralCode& code, const SemiVortex& sv) {
    const auto& g = code.graph;
    auto lookup = [&](const std::string& id) -> const Partition& {
        auto it = sv.parts.find(id);
        if (it == sv.parts.end()) throw std::invalid_argument("semi-vortex missing edge: " + id);
        return it->second;
    };
    for (std::size_t s = 0; s < g.sources.size(); ++s)
        if (lookup(g.sources[s].id) != code.source_parts[s]) return VortexClass::Invalid;
    bool equality_everywhere = true;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        Partition incoming = Partition::single_block((int)code.message_count);
        for (auto s : g.in_sources(edge.tail)) incoming = algebra_plus(incoming, lookup(g.sources[s].id));
        for (auto i : g.in_edges(edge.tail)) incoming = algebra_plus(incoming, lookup(g.edges[i].id));
        Partition rhs = algebra_intersect(code.edge_parts[e], incoming);
        const Partition& mine = lookup(edge.id);
        if (mine == rhs) continue;
        if (algebra_subset(mine, rhs))
            equality_everywhere = false;
        else
            return VortexClass::Invalid;
    }
    return equality_everywhere ? VortexClass::Giv : VortexClass::SemiVortexOnly;
}

/// Nontrivial iff A_e differs from balg(f_e) on some ordinary edge.
inline bool is_nontrivial(const GeneralCode& code, const SemiVortex& sv) {
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e) {
        auto it = sv.parts.find(code.graph.edges[e].id);
        if (it == sv.parts.end())
            throw std::invalid_argument("semi-vortex missing edge: " + code.graph.edges[e].id);
        if (it->second != code.edge_parts[e]) return true;
    }
    return false;
}

/// The restriction corresponding to a semi-vortex: alphabets are the atoms
/// of A_e, coding functions the canonical maps onto them.
inline GeneralCode restriction_from_semivortex(const GeneralCode& code, const SemiVortex& sv) {
    if (classify_semivortex(code, sv) == VortexClass::Invalid)
        throw std::invalid_argument("restriction_from_semivortex: not a semi-vortex");
    auto table_of = [&](const Partition& p) {
        ValueTable t;
        t.values = p.canonical_table();
        t.alphabet_size = std::max(1, p.block_count());
        return t;
    };
    std::vector<ValueTable> sfns, efns;
    for (const auto& s : code.graph.sources) sfns.push_back(table_of(sv.parts.at(s.id)));
    for (const auto& e : code.graph.edges) efns.push_back(table_of(sv.parts.at(e.id)));
    return make_general_code(code.graph, code.message_count, std::move(sfns), std::move(efns));
}

/// Inverse of the correspondence: the unique semi-vortex with
/// A_r = balg(f'_r) for every edge and source of the restriction.
inline SemiVortex semivortex_from_restriction(const GeneralCode& code, const GeneralCode& restriction) {
    if (!is_extension(code, restriction))
        throw std::invalid_argument("semivortex_from_restriction: argument is not a restriction");
    detail::require_valid(restriction);
    SemiVortex sv;
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s)
        sv.parts.emplace(code.graph.sources[s].id, restriction.source_parts[s]);
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e)
        sv.parts.emplace(code.graph.edges[e].id, restriction.edge_parts[e]);
    return sv;
}

/// Semi-vortex containment: inner ⊆ outer iff every per-edge algebra of
/// inner is contained in the corresponding algebra of outer.
inline bool semivortex_subset(const SemiVortex& inner, const SemiVortex& outer) {
    for (const auto& [id, p] : inner.parts) {
        auto it = outer.parts.find(id);
        if (it == outer.parts.end()) throw std::invalid_argument("semi-vortex missing edge: " + id);
        if (!algebra_subset(p, it->second)) return false;
    }
    return true;
}

/// Exhaustively enumerate the GIVs of a small code: every assignment of
/// per-edge coarsenings of balg(f_e) satisfying the fixpoint condition,
/// sorted by total atom count (then structurally). Refuses when the product
/// of per-edge coarsening counts exceeds the cap.
inline std::vector<SemiVortex> enumerate_givs(const GeneralCode& code,
                                              unsigned long long cap = 1'000'000) {
    const auto& g = code.graph;
    unsigned long long combos = 1;
    for (const auto& p : code.edge_parts) {
        unsigned long long b = bell_number(p.block_count());
        if (b == 0 || combos > cap / b) throw BudgetError("enumerate_givs: cap exceeded");
        combos *= b;
    }
    std::vector<std::vector<Partition>> choices;
    for (const auto& p : code.edge_parts) choices.push_back(coarsenings_of(p));

    std::vector<SemiVortex> out;
    std::vector<std::size_t> idx(g.edges.size(), 0);
    while (true) {
        SemiVortex sv;
        for (std::size_t s = 0; s < g.sources.size(); ++s)
            sv.parts.emplace(g.sources[s].id, code.source_parts[s]);
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            sv.parts.emplace(g.edges[e].id, choices[e][idx[e]]);
        if (classify_semivortex(code, sv) == VortexClass::Giv) out.push_back(std::move(sv));

        std::size_t e = 0;
        while (e < idx.size() && ++idx[e] == choices[e].size()) idx[e++] = 0;
        if (e == idx.size()) break;
    }
    auto atoms_total = [](const SemiVortex& sv) {
        int n = 0;
        for (const auto& [_, p] : sv.parts) n += p.block_count();
        return n;
    };
    std::sort(out.begin(), out.end(), [&](const SemiVortex& a, const SemiVortex& b) {
        int na = atoms_total(a), nb = atoms_total(b);
        if (na != nb) return na < nb;
        return a.parts < b.parts;
    });
    return out;
}

/// Schedule verifier for general codes, mirroring the linear conditions on
/// partitions.
inline ScheduleReport verify_schedule(const GeneralCode& code, const GeneralSchedule& schedule) {
    const auto& g = code.graph;
    for (const auto& round : schedule.rounds)
        for (const auto& [id, table] : round) {
            if (g.edge_index(id) < 0) throw SchemaError("schedule transmits on unknown edge: " + id);
            if ((long long)table.size() != code.message_count)
                throw SchemaError("schedule table length mismatch on " + id);
        }
    int n = (int)code.message_count;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        const Partition& target = code.edge_parts[e];
        for (std::size_t j = 0; j < schedule.rounds.size(); ++j) {
            auto it = schedule.rounds[j].find(edge.id);
            if (it == schedule.rounds[j].end()) continue;
            if (!refines(target, Partition::from_table(it->second)))
                return {false, 2, edge.id, (long long)j, "round sends more than the edge's coding function"};
        }
        Partition all = Partition::single_block(n);
        for (const auto& round : schedule.rounds) {
            auto it = round.find(edge.id);
            if (it != round.end()) all = algebra_plus(all, Partition::from_table(it->second));
        }
        if (!refines(all, target))
            return {false, 3, edge.id, -1, "rounds together send less than the edge's coding function"};
        Partition history = Partition::single_block(n);
        for (auto s : g.in_sources(edge.tail)) history = algebra_plus(history, code.source_parts[s]);
        auto incoming = g.in_edges(edge.tail);
        for (std::size_t j = 0; j < schedule.rounds.size(); ++j) {
            auto it = schedule.rounds[j].find(edge.id);
            if (it != schedule.rounds[j].end())
                if (!refines(history, Partition::from_table(it->second)))
                    return {false, 4, edge.id, (long long)j,
                            "round not computable from earlier incoming transmissions"};
            for (auto i : incoming) {
                auto hit = schedule.rounds[j].find(g.edges[i].id);
                if (hit != schedule.rounds[j].end())
                    history = algebra_plus(history, Partition::from_table(hit->second));
            }
        }
    }
    return {};
}

}  // namespace ncser
