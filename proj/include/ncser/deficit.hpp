#pragma once

#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "ncser/code.hpp"
#include "ncser/entropy.hpp"
#include "ncser/linear_serializer.hpp"
#include "ncser/rational.hpp"

namespace ncser {

/// Extra symbols an extension transmits, summed over ordinary edges:
/// per edge, the difference of log2 of the alphabet sizes. For linear codes
/// this is the row-count difference times log2(p).
struct GapResult {
    long long symbols = 0;  // added scalar functionals (field symbols)
    EntropyValue bits;      // symbols * log2(p)
};

inline GapResult gap(const LinearCode& big, const LinearCode& small) {
    if (!is_extension(big, small)) throw std::invalid_argument("gap: not an extension");
    GapResult r;
    for (std::size_t e = 0; e < big.edge_fns.size(); ++e)
        r.symbols += (long long)big.edge_fns[e].rows.size() - (long long)small.edge_fns[e].rows.size();
    r.bits = EntropyValue::log2_of(big.field.p) * Rat(r.symbols);
    return r;
}

inline EntropyValue gap_bits(const GeneralCode& big, const GeneralCode& small) {
    if (!is_extension(big, small)) throw std::invalid_argument("gap: not an extension");
    EntropyValue bits;
    for (std::size_t e = 0; e < big.edge_fns.size(); ++e)
        bits += EntropyValue::log2_of(big.edge_fns[e].alphabet_size) -
                EntropyValue::log2_of(small.edge_fns[e].alphabet_size);
    return bits;
}

/// Result of the bounded brute-force deficit search. When exhausted is set
/// the deficit exceeds the budget and gap fields are meaningless.
struct DeficitResult {
    long long gap_symbols = 0;
    EntropyValue gap_bits;
    std::map<std::string, std::vector<FVec>> witness;  // added rows per edge
    bool exhausted = false;
};

struct DeficitOptions {
    long long max_symbols = 2;
    unsigned long long cap = 10'000'000;  // greedy-run guardrail
    unsigned jobs = 1;
};

namespace deficit_detail {

/// Nonzero dual vectors up to scalar: one representative per projective
/// point, leading nonzero coordinate 1, in lexicographic order.
inline std::vector<FVec> projective_points(long long d, FieldSpec field) {
    std::vector<FVec> out;
    FVec v(d, 0);
    while (true) {
        long long i = d - 1;
        while (i >= 0 && v[i] == field.p - 1) v[i--] = 0;
        if (i < 0) break;
        ++v[i];
        long long lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1) out.push_back(v);
    }
    return out;
}

struct Candidate {
    std::size_t edge;  // index into graph.edges
    FVec row;
};

inline LinearCode apply_candidates(const LinearCode& code, const std::vector<Candidate>& cands,
                                   const std::vector<std::size_t>& picks) {
    std::vector<Matrix> sfns = code.source_fns, efns = code.edge_fns;
    for (auto i : picks) efns[cands[i].edge].rows.push_back(cands[i].row);
    return make_linear_code(code.graph, code.field, code.message_dim, std::move(sfns), std::move(efns));
}

/// Enumerates k-combinations of candidate indices in lexicographic order,
/// calling fn with each; fn returns true to stop early.
template <typename Fn>
inline void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> picks(k);
    for (std::size_t i = 0; i < k; ++i) picks[i] = i;
    while (true) {
        if (fn(picks)) return;
        std::size_t i = k;
        while (i > 0 && picks[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++picks[i - 1];
        for (std::size_t j = i; j < k; ++j) picks[j] = picks[j - 1] + 1;
    }
}

}  // namespace deficit_detail

/// Bounded exact search for the linear serializability deficit: for
/// k = 0..max_symbols, tries every assignment of k added functionals to
/// ordinary edges (candidates are projective representatives not already in
/// the edge's row space) and runs the greedy serializer on each extension.
/// Returns the least k admitting a serializable extension, with the
/// lexicographically least witness; sets exhausted when the budget ends
/// without one. Search levels can fan out over worker threads; the reported
/// witness does not depend on the thread count.
inline DeficitResult lsd_bruteforce(const LinearCode& code, const DeficitOptions& opt = {}) {
    detail::require_valid(code);
    using namespace deficit_detail;

    if (greedy_serialize(code).serializable) return {};

    std::vector<Candidate> cands;
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e)
        for (const auto& v : projective_points(code.message_dim, code.field))
            if (!contains(code.edge_spaces[e], v)) cands.push_back({e, v});

    double pairs = (double)cands.size();
    for (long long k = 1; k <= opt.max_symbols; ++k) {
        if (std::pow(pairs, (double)k) > (double)opt.cap)
            throw BudgetError("lsd_bruteforce: candidate budget exceeds cap at k=" + std::to_string(k));

        unsigned jobs = std::max(1u, opt.jobs);
        std::atomic<std::size_t> best{SIZE_MAX};
        auto worker = [&](unsigned self) {
            std::size_t rank = 0;
            for_each_combination(cands.size(), (std::size_t)k, [&](const std::vector<std::size_t>& picks) {
                std::size_t r = rank++;
                if (r >= best.load(std::memory_order_relaxed)) return true;  // someone earlier won
                if (r % jobs != self) return false;
                auto extended = apply_candidates(code, cands, picks);
                // a serializable extension is automatically valid, so invalid
                // candidates can never be witnesses
                if (!validate(extended).empty()) return false;
                if (greedy_serialize(extended).serializable) {
                    std::size_t cur = best.load(std::memory_order_relaxed);
                    while (r < cur && !best.compare_exchange_weak(cur, r)) {
                    }
                    return true;
                }
                return false;
            });
        };
        if (jobs == 1) {
            worker(0);
        } else {
            std::vector<std::thread> threads;
            for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker, t);
            for (auto& t : threads) t.join();
        }

        if (best.load() != SIZE_MAX) {
            // re-derive the winning combination from its rank
            DeficitResult result;
            result.gap_symbols = k;
            result.gap_bits = EntropyValue::log2_of(code.field.p) * Rat(k);
            std::size_t rank = 0;
            for_each_combination(cands.size(), (std::size_t)k, [&](const std::vector<std::size_t>& picks) {
                if (rank++ != best.load()) return false;
                for (auto i : picks)
                    result.witness[code.graph.edges[cands[i].edge].id].push_back(cands[i].row);
                return true;
            });
            return result;
        }
    }
    DeficitResult result;
    result.exhausted = true;
    return result;
}

/// The per-copy lower-bound constant of a non-serializable code: from the
/// greedy vortex {W_e}, the best edge gives c = (dim T_e - dim W_e) / d^2.
/// Any serializable extension of the n-fold power must add at least c*n
/// symbols. Serializable codes get c = 0 and no witness edge.
struct DeficitRate {
    Rat c;
    std::optional<std::string> witness_edge;
};

inline DeficitRate deficit_lower_rate(const LinearCode& code) {
    auto outcome = greedy_serialize(code);
    if (outcome.serializable) return {Rat(0), std::nullopt};
    Rat best(0);
    std::string edge;
    for (const auto& e : code.graph.edges) {
        Rat c(code.space_of(e.id).dim() - outcome.sent.at(e.id).dim(),
              code.message_dim * code.message_dim);
        if (c > best) {
            best = c;
            edge = e.id;
        }
    }
    return {best, edge};
}

/// Checks the lower bound at a finite power: the brute-force deficit of the
/// n-fold product must be at least ceil(c*n). Conclusive when the search
/// resolves, or when it exhausts a budget already at or above the bound.
struct PowerBoundCheck {
    bool holds = false;
    bool conclusive = false;
    Rat c;
    long long required = 0;  // ceil(c*n)
    DeficitResult search;
};

inline PowerBoundCheck check_power_deficit_bound(const LinearCode& code, long long n,
                                                 const DeficitOptions& opt = {}) {
    PowerBoundCheck out;
    out.c = deficit_lower_rate(code).c;
    Rat cn = out.c * n;
    out.required = cn.numerator() / cn.denominator() + (cn.numerator() % cn.denominator() != 0 ? 1 : 0);
    out.search = lsd_bruteforce(cartesian_power(code, n), opt);
    if (!out.search.exhausted) {
        out.holds = out.search.gap_symbols >= out.required;
        out.conclusive = true;
    } else if (opt.max_symbols + 1 >= out.required) {
        // deficit > budget >= required - 1, so the bound holds
        out.holds = true;
        out.conclusive = true;
    }
    return out;
}

}  // namespace ncser
