#pragma once

#include <set>
#include <string>
#include <vector>

#include "ncser/code.hpp"
#include "ncser/linear_serializer.hpp"

namespace ncser {

/// A hitting set instance: universe {1..n} and a family of nonempty subsets.
/// S(i) lists the sets containing i, ordered by family declaration order.
struct HittingSetInstance {
    long long universe = 0;
    std::vector<std::vector<long long>> sets;

    void check() const {
        if (universe < 1) throw SchemaError("hitting set universe must be nonempty");
        if (sets.empty()) throw SchemaError("hitting set family must be nonempty");
        for (const auto& s : sets) {
            if (s.empty()) throw SchemaError("hitting set family contains an empty set");
            std::set<long long> seen;
            for (long long i : s) {
                if (i < 1 || i > universe) throw SchemaError("set element outside the universe");
                if (!seen.insert(i).second) throw SchemaError("set element repeated");
            }
        }
    }

    /// Indices (into sets) of the sets containing element i, declaration order.
    std::vector<std::size_t> incidence(long long i) const {
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < sets.size(); ++a)
            for (long long e : sets[a])
                if (e == i) out.push_back(a);
        return out;
    }
};

namespace hs_detail {

/// Coordinate layout: one X and one Y coordinate per (element, incident set)
/// pair, X block first. Incidences ordered by element, then by the family
/// order within the element.
struct Layout {
    std::vector<std::vector<std::size_t>> incid;  // per element (0-based), set indices
    std::vector<long long> x_base;                // first X coordinate of element i
    long long total = 0;                          // sum of n_i
    long long dim() const { return 2 * total; }

    explicit Layout(const HittingSetInstance& inst) {
        for (long long i = 1; i <= inst.universe; ++i) {
            x_base.push_back(total);
            incid.push_back(inst.incidence(i));
            total += (long long)incid.back().size();
        }
    }

    // X_i^{A_{i(k)}} and Y_i^{A_{i(k)}}, with i and k 1-based as in S(i)
    long long x_coord(long long i, long long k) const { return x_base[i - 1] + (k - 1); }
    long long y_coord(long long i, long long k) const { return total + x_base[i - 1] + (k - 1); }
};

inline FVec unit(long long dim, long long idx) {
    FVec v(dim, 0);
    v[idx] = 1;
    return v;
}

}  // namespace hs_detail

/// The hardness gadget: a network code whose minimum serializable extension
/// sizes track hitting sets of the instance. Per element i there is a
/// 4-vertex gadget {u_i, v_i, w_i, p_i} around a 2-cycle (u_i, w_i), fed by
/// a super-source s carrying every X block and a private source Y_i at w_i;
/// per set A the vertices {v_j : j in A} form a bidirected clique carrying
/// the set sum t(A).
inline LinearCode build_hitting_set_code(const HittingSetInstance& inst, FieldSpec field) {
    inst.check();
    hs_detail::Layout lay(inst);
    long long d = lay.dim();
    long long n = inst.universe;

    SourcedGraph g;
    g.vertices.push_back("s");
    for (const char* group : {"u", "v", "w", "p"})
        for (long long i = 1; i <= n; ++i)
            g.vertices.push_back(std::string(group) + std::to_string(i));
    auto vtx = [](const char* group, long long i) { return std::string(group) + std::to_string(i); };

    std::vector<std::vector<FVec>> src_rows;
    g.sources.push_back({"src_s", "s"});
    {
        std::vector<FVec> rows;
        for (long long i = 1; i <= n; ++i)
            for (std::size_t k = 1; k <= lay.incid[i - 1].size(); ++k)
                rows.push_back(hs_detail::unit(d, lay.x_coord(i, (long long)k)));
        src_rows.push_back(std::move(rows));
    }
    for (long long i = 1; i <= n; ++i) {
        g.sources.push_back({"src_w" + std::to_string(i), vtx("w", i)});
        std::vector<FVec> rows;
        for (std::size_t k = 1; k <= lay.incid[i - 1].size(); ++k)
            rows.push_back(hs_detail::unit(d, lay.y_coord(i, (long long)k)));
        src_rows.push_back(std::move(rows));
    }

    std::vector<std::vector<FVec>> edge_rows;
    auto add_edge = [&](const std::string& id, const std::string& tail, const std::string& head,
                        std::vector<FVec> rows) {
        g.edges.push_back({id, tail, head});
        edge_rows.push_back(std::move(rows));
    };
    auto t_of = [&](std::size_t set_idx) {  // t(A) = sum over k in A of X_k^A
        FVec v(d, 0);
        for (long long k : inst.sets[set_idx]) {
            // position of A within S(k)
            for (std::size_t pos = 0; pos < lay.incid[k - 1].size(); ++pos)
                if (lay.incid[k - 1][pos] == set_idx)
                    v[lay.x_coord(k, (long long)pos + 1)] = 1;
        }
        return v;
    };

    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        std::vector<FVec> rows;
        for (long long k = 1; k <= ni; ++k) rows.push_back(hs_detail::unit(d, lay.x_coord(i, k)));
        add_edge("s_u" + std::to_string(i), "s", vtx("u", i), rows);
    }
    for (long long i = 1; i <= n; ++i) {
        std::vector<FVec> rows;
        for (long long j = 1; j <= n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 1; k <= lay.incid[j - 1].size(); ++k)
                rows.push_back(hs_detail::unit(d, lay.x_coord(j, (long long)k)));
        }
        add_edge("s_v" + std::to_string(i), "s", vtx("v", i), rows);
    }
    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        FVec sum(d, 0);
        for (long long k = 2; k <= ni; ++k) sum[lay.x_coord(i, k)] = 1;
        std::vector<FVec> rows;
        if (ni >= 2) rows.push_back(sum);  // empty sum when n_i = 1: zero rows
        add_edge("s_p" + std::to_string(i), "s", vtx("p", i), rows);
    }
    for (long long i = 1; i <= n; ++i)
        for (long long j = 1; j <= n; ++j) {
            if (i == j) continue;
            std::vector<FVec> rows;
            for (std::size_t a = 0; a < inst.sets.size(); ++a) {
                bool has_i = false, has_j = false;
                for (long long e : inst.sets[a]) {
                    has_i |= e == i;
                    has_j |= e == j;
                }
                if (has_i && has_j) rows.push_back(t_of(a));
            }
            if (rows.empty()) continue;  // edge exists only when S(i) and S(j) intersect
            add_edge("v" + std::to_string(i) + "_v" + std::to_string(j), vtx("v", i), vtx("v", j),
                     std::move(rows));
        }
    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        std::vector<FVec> rows;
        for (long long k = 1; k <= ni; ++k) rows.push_back(hs_detail::unit(d, lay.x_coord(i, k)));
        add_edge("w" + std::to_string(i) + "_v" + std::to_string(i), vtx("w", i), vtx("v", i), rows);
    }
    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        std::vector<FVec> rows;
        if (ni >= 1) {
            FVec sum(d, 0);
            for (long long k = 1; k <= ni; ++k) sum[lay.x_coord(i, k)] = 1;
            rows.push_back(std::move(sum));
        }
        add_edge("v" + std::to_string(i) + "_p" + std::to_string(i), vtx("v", i), vtx("p", i),
                 std::move(rows));
    }
    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        std::vector<FVec> rows;
        if (ni >= 1) rows.push_back(hs_detail::unit(d, lay.x_coord(i, 1)));
        // isolated elements (in no set) have empty blocks and stay silent
        add_edge("p" + std::to_string(i) + "_w" + std::to_string(i), vtx("p", i), vtx("w", i),
                 std::move(rows));
    }
    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        std::vector<FVec> rows;
        for (long long k = 1; k <= ni; ++k) {
            FVec v(d, 0);
            v[lay.x_coord(i, k)] = 1;
            v[lay.y_coord(i, k)] = 1;
            rows.push_back(v);
        }
        add_edge("w" + std::to_string(i) + "_u" + std::to_string(i), vtx("w", i), vtx("u", i), rows);
    }
    for (long long i = 1; i <= n; ++i) {
        long long ni = (long long)lay.incid[i - 1].size();
        std::vector<FVec> rows;
        for (long long k = 1; k <= ni; ++k) {
            FVec v(d, 0);
            v[lay.x_coord(i, k % ni + 1)] = 1;  // index shift k+1 mod n_i, 1-based
            v[lay.y_coord(i, k)] = 1;
            rows.push_back(v);
        }
        add_edge("u" + std::to_string(i) + "_w" + std::to_string(i), vtx("u", i), vtx("w", i), rows);
    }

    return make_linear_code_rows(g, field, d, src_rows, edge_rows);
}

/// The extension matching an integral hitting set C: adds the single bit
/// X_c^{A_{c(1)}} to edge (u_c, w_c) for each c in C.
inline LinearCode hitting_set_extension(const LinearCode& code, const HittingSetInstance& inst,
                                        const std::vector<long long>& chosen) {
    hs_detail::Layout lay(inst);
    LinearCode out = code;
    for (long long c : chosen) {
        if (c < 1 || c > inst.universe)
            throw std::invalid_argument("hitting_set_extension: element outside the universe");
        if (lay.incid[c - 1].empty()) continue;  // isolated element: no bit to add
        out = extend_edge(out, "u" + std::to_string(c) + "_w" + std::to_string(c),
                          {hs_detail::unit(code.message_dim, lay.x_coord(c, 1))});
    }
    return out;
}

inline bool is_feasible_fractional(const HittingSetInstance& inst, const std::vector<long long>& z,
                                   long long q) {
    if ((long long)z.size() != inst.universe || q < 1)
        throw std::invalid_argument("fractional solution has wrong shape");
    for (const auto& s : inst.sets) {
        long long covered = 0;
        for (long long i : s) covered += z[i - 1];
        if (covered < q) return false;
    }
    return true;
}

/// The fractional extension of the q-fold power: element i receives z_i
/// added functionals X_i^{A_{i(1)}} ⊗ t on edge (u_i, w_i), the t drawn in
/// order from a shared pool of moment vectors (1, x_j, ..., x_j^{q-1}) over
/// distinct evaluation points, any q of which are independent. Total added
/// symbols = sum z_i. Feasible z (every set covered q times over) make the
/// result greedy-serializable.
inline LinearCode fractional_tensor_extension(const LinearCode& code, const HittingSetInstance& inst,
                                              const std::vector<long long>& z, long long q) {
    if ((long long)z.size() != inst.universe || q < 1)
        throw std::invalid_argument("fractional solution has wrong shape");
    long long p_total = 0;
    for (long long zi : z) {
        if (zi < 0) throw std::invalid_argument("negative fractional weight");
        p_total += zi;
    }
    if (p_total > code.field.p)
        throw std::invalid_argument("field too small for " + std::to_string(p_total) +
                                    " distinct evaluation points");
    hs_detail::Layout lay(inst);
    LinearCode power = cartesian_power(code, q);

    std::vector<FVec> pool;
    for (long long j = 0; j < p_total; ++j) {
        FVec t(q);
        long long val = 1;
        for (long long l = 0; l < q; ++l) {
            t[l] = val;
            val = code.field.mul(val, j);
        }
        pool.push_back(std::move(t));
    }

    LinearCode out = power;
    std::size_t next = 0;
    for (long long i = 1; i <= inst.universe; ++i) {
        if (lay.incid[i - 1].empty()) continue;
        FVec base = hs_detail::unit(code.message_dim, lay.x_coord(i, 1));
        for (long long r = 0; r < z[i - 1]; ++r)
            out = extend_edge(out, "u" + std::to_string(i) + "_w" + std::to_string(i),
                              {kronecker_row(base, pool[next++], code.field)});
    }
    return out;
}

/// The per-element subcode behind the unhit-set argument: the 4-vertex
/// gadget of element i with its feeds from s reinterpreted as sources. On
/// it, W = T on the two feeding sources (s, v_i) and (s, u_i) and W = 0 on
/// every gadget edge is an information vortex.
inline LinearCode element_subcode(const LinearCode& code, long long i) {
    std::string si = std::to_string(i);
    SourcedGraph g;
    g.vertices = {"u" + si, "v" + si, "w" + si, "p" + si};
    std::vector<std::vector<FVec>> src_rows, edge_rows;
    for (const std::string& id : {"src_w" + si, "s_u" + si, "s_v" + si, "s_p" + si}) {
        long long s = code.graph.source_index(id);
        long long e = code.graph.edge_index(id);
        const Matrix& m = s >= 0 ? code.source_fns[s] : code.edge_fns[e];
        const std::string& head = s >= 0 ? code.graph.sources[s].head : code.graph.edges[e].head;
        g.sources.push_back({id, head});
        src_rows.push_back(m.rows);
    }
    for (const std::string& id : {"w" + si + "_v" + si, "v" + si + "_p" + si, "p" + si + "_w" + si,
                                  "w" + si + "_u" + si, "u" + si + "_w" + si}) {
        long long e = code.graph.edge_index(id);
        if (e < 0) throw std::invalid_argument("element_subcode: missing edge " + id);
        g.edges.push_back(code.graph.edges[e]);
        edge_rows.push_back(code.edge_fns[e].rows);
    }
    return make_linear_code_rows(g, code.field, code.message_dim, src_rows, edge_rows);
}

/// The documented vortex on the element subcode.
inline LinearVortex element_vortex(const LinearCode& subcode) {
    LinearVortex v;
    for (std::size_t s = 0; s < subcode.graph.sources.size(); ++s)
        v.spaces.emplace(subcode.graph.sources[s].id, subcode.source_spaces[s]);
    for (const auto& e : subcode.graph.edges)
        v.spaces.emplace(e.id, zero_subspace(subcode.field, subcode.message_dim));
    return v;
}

}  // namespace ncser
