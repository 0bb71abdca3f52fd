#pragma once

#include <string>
#include <vector>

#include "ncser/graph.hpp"
#include "ncser/linalg.hpp"
#include "ncser/partition.hpp"

namespace ncser {

/// A linear network code: per edge/source a coding matrix whose rows are
/// dual functionals on the message space GF(p)^message_dim. Row spaces are
/// cached canonically at construction.
struct LinearCode {
    SourcedGraph graph;
    FieldSpec field;
    long long message_dim = 0;
    std::vector<Matrix> source_fns;  // parallel to graph.sources
    std::vector<Matrix> edge_fns;    // parallel to graph.edges
    std::vector<Subspace> source_spaces;
    std::vector<Subspace> edge_spaces;

    bool operator==(const LinearCode& o) const {
        return graph == o.graph && field == o.field && message_dim == o.message_dim &&
               source_fns == o.source_fns && edge_fns == o.edge_fns;
    }

    const Subspace& space_of(const std::string& id) const {
        long long e = graph.edge_index(id);
        if (e >= 0) return edge_spaces[e];
        long long s = graph.source_index(id);
        if (s >= 0) return source_spaces[s];
        throw std::invalid_argument("unknown edge id: " + id);
    }
};

inline LinearCode make_linear_code(SourcedGraph graph, FieldSpec field, long long message_dim,
                                   std::vector<Matrix> source_fns, std::vector<Matrix> edge_fns) {
    graph.check();
    if (message_dim < 0) throw std::invalid_argument("negative message dimension");
    if (source_fns.size() != graph.sources.size() || edge_fns.size() != graph.edges.size())
        throw std::invalid_argument("coding function count does not match graph");
    LinearCode code{std::move(graph), field, message_dim, std::move(source_fns), std::move(edge_fns), {}, {}};
    for (auto& m : code.source_fns) {
        m = make_matrix(field, message_dim, std::move(m.rows));
        code.source_spaces.push_back(row_space(m));
    }
    for (auto& m : code.edge_fns) {
        m = make_matrix(field, message_dim, std::move(m.rows));
        code.edge_spaces.push_back(row_space(m));
    }
    return code;
}

/// Convenience: rows given directly, matrices built against the message space.
inline LinearCode make_linear_code_rows(SourcedGraph graph, FieldSpec field, long long message_dim,
                                        std::vector<std::vector<FVec>> source_rows,
                                        std::vector<std::vector<FVec>> edge_rows) {
    std::vector<Matrix> sfns, efns;
    for (auto& r : source_rows) sfns.push_back(Matrix{field, message_dim, std::move(r)});
    for (auto& r : edge_rows) efns.push_back(Matrix{field, message_dim, std::move(r)});
    return make_linear_code(std::move(graph), field, message_dim, std::move(sfns), std::move(efns));
}

/// A coding function for a general network code: one symbol per message.
struct ValueTable {
    std::vector<int> values;
    int alphabet_size = 1;
    bool operator==(const ValueTable&) const = default;
};

/// A general network code over the message set {0..message_count-1}.
/// The partition of the message set into fibers is cached per edge.
struct GeneralCode {
    SourcedGraph graph;
    long long message_count = 0;
    std::vector<ValueTable> source_fns;
    std::vector<ValueTable> edge_fns;
    std::vector<Partition> source_parts;
    std::vector<Partition> edge_parts;

    bool operator==(const GeneralCode& o) const {
        return graph == o.graph && message_count == o.message_count &&
               source_fns == o.source_fns && edge_fns == o.edge_fns;
    }

    const Partition& partition_of(const std::string& id) const {
        long long e = graph.edge_index(id);
        if (e >= 0) return edge_parts[e];
        long long s = graph.source_index(id);
        if (s >= 0) return source_parts[s];
        throw std::invalid_argument("unknown edge id: " + id);
    }
};

inline GeneralCode make_general_code(SourcedGraph graph, long long message_count,
                                     std::vector<ValueTable> source_fns,
                                     std::vector<ValueTable> edge_fns) {
    graph.check();
    if (message_count < 1) throw std::invalid_argument("message count must be >= 1");
    if (source_fns.size() != graph.sources.size() || edge_fns.size() != graph.edges.size())
        throw std::invalid_argument("coding function count does not match graph");
    GeneralCode code{std::move(graph), message_count, std::move(source_fns), std::move(edge_fns), {}, {}};
    auto check_table = [&](const ValueTable& t, const std::string& id) {
        if ((long long)t.values.size() != message_count)
            throw std::invalid_argument("value table for " + id + " is not total");
        if (t.alphabet_size < 1) throw std::invalid_argument("alphabet of " + id + " is empty");
        for (int v : t.values)
            if (v < 0 || v >= t.alphabet_size)
                throw std::invalid_argument("table value out of alphabet range on " + id);
    };
    for (std::size_t i = 0; i < code.source_fns.size(); ++i) {
        check_table(code.source_fns[i], code.graph.sources[i].id);
        code.source_parts.push_back(Partition::from_table(code.source_fns[i].values));
    }
    for (std::size_t i = 0; i < code.edge_fns.size(); ++i) {
        check_table(code.edge_fns[i], code.graph.edges[i].id);
        code.edge_parts.push_back(Partition::from_table(code.edge_fns[i].values));
    }
    return code;
}

struct Violation {
    std::string edge_id;
    std::string message;
};

/// Classic validity: each ordinary edge's coding function must be computable
/// from its tail's incoming functions (sources included). Sources are never
/// violations.
inline std::vector<Violation> validate(const LinearCode& code) {
    std::vector<Violation> out;
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e) {
        const auto& edge = code.graph.edges[e];
        Subspace incoming = zero_subspace(code.field, code.message_dim);
        for (auto s : code.graph.in_sources(edge.tail))
            incoming = subspace_sum(incoming, code.source_spaces[s]);
        for (auto i : code.graph.in_edges(edge.tail))
            incoming = subspace_sum(incoming, code.edge_spaces[i]);
        if (!subspace_contains(incoming, code.edge_spaces[e]))
            out.push_back({edge.id, "row space not contained in the span of incoming row spaces"});
    }
    return out;
}

inline std::vector<Violation> validate(const GeneralCode& code) {
    std::vector<Violation> out;
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e) {
        const auto& edge = code.graph.edges[e];
        Partition incoming = Partition::single_block((int)code.message_count);
        for (auto s : code.graph.in_sources(edge.tail))
            incoming = algebra_plus(incoming, code.source_parts[s]);
        for (auto i : code.graph.in_edges(edge.tail))
            incoming = algebra_plus(incoming, code.edge_parts[i]);
        if (!refines(incoming, code.edge_parts[e]))
            out.push_back({edge.id, "coding function not constant on joint fibers of incoming functions"});
    }
    return out;
}

namespace detail {
template <typename Code>
inline void require_valid(const Code& code) {
    auto v = validate(code);
    if (!v.empty())
        throw std::invalid_argument("invalid code: edge " + v.front().edge_id + ": " + v.front().message);
}
}  // namespace detail

/// True iff big extends small: same graph, same message space, and per edge
/// the richer function determines the poorer one.
inline bool is_extension(const LinearCode& big, const LinearCode& small) {
    if (big.graph != small.graph || big.field != small.field || big.message_dim != small.message_dim)
        throw std::invalid_argument("is_extension: graph or message space mismatch");
    for (std::size_t e = 0; e < big.edge_spaces.size(); ++e)
        if (!subspace_contains(big.edge_spaces[e], small.edge_spaces[e])) return false;
    for (std::size_t s = 0; s < big.source_spaces.size(); ++s)
        if (!subspace_contains(big.source_spaces[s], small.source_spaces[s])) return false;
    return true;
}

inline bool is_extension(const GeneralCode& big, const GeneralCode& small) {
    if (big.graph != small.graph || big.message_count != small.message_count)
        throw std::invalid_argument("is_extension: graph or message space mismatch");
    for (std::size_t e = 0; e < big.edge_parts.size(); ++e)
        if (!refines(big.edge_parts[e], small.edge_parts[e])) return false;
    for (std::size_t s = 0; s < big.source_parts.size(); ++s)
        if (!refines(big.source_parts[s], small.source_parts[s])) return false;
    return true;
}

/// The n-fold cartesian product: message space GF(p)^(d*n) (coordinate j of
/// the original spreads over the block j*n..j*n+n-1), each coding matrix
/// becomes f ⊗ I_n, graph unchanged.
inline LinearCode cartesian_power(const LinearCode& code, long long n) {
    if (n < 1) throw std::invalid_argument("cartesian_power: n must be >= 1");
    Matrix eye = identity_matrix(code.field, n);
    std::vector<Matrix> sfns, efns;
    for (const auto& m : code.source_fns) sfns.push_back(kronecker(m, eye));
    for (const auto& m : code.edge_fns) efns.push_back(kronecker(m, eye));
    return make_linear_code(code.graph, code.field, code.message_dim * n, std::move(sfns), std::move(efns));
}

/// Extension adding rows to one edge (or source); the new alphabet is the
/// product of old and new, i.e. the rows are appended.
inline LinearCode extend_edge(const LinearCode& code, const std::string& edge_id,
                              const std::vector<FVec>& extra) {
    std::vector<Matrix> sfns = code.source_fns, efns = code.edge_fns;
    long long e = code.graph.edge_index(edge_id);
    long long s = code.graph.source_index(edge_id);
    Matrix* target = e >= 0 ? &efns[e] : s >= 0 ? &sfns[s] : nullptr;
    if (!target) throw std::invalid_argument("unknown edge id: " + edge_id);
    for (const auto& r : extra) {
        if ((long long)r.size() != code.message_dim)
            throw std::invalid_argument("extend_edge: row dimension mismatch");
        target->rows.push_back(r);
    }
    return make_linear_code(code.graph, code.field, code.message_dim, std::move(sfns), std::move(efns));
}

inline GeneralCode extend_edge(const GeneralCode& code, const std::string& edge_id,
                               const ValueTable& extra) {
    if ((long long)extra.values.size() != code.message_count)
        throw std::invalid_argument("extend_edge: table length mismatch");
    std::vector<ValueTable> sfns = code.source_fns, efns = code.edge_fns;
    long long e = code.graph.edge_index(edge_id);
    long long s = code.graph.source_index(edge_id);
    ValueTable* target = e >= 0 ? &efns[e] : s >= 0 ? &sfns[s] : nullptr;
    if (!target) throw std::invalid_argument("unknown edge id: " + edge_id);
    ValueTable joined;
    joined.alphabet_size = target->alphabet_size * extra.alphabet_size;
    for (long long m = 0; m < code.message_count; ++m)
        joined.values.push_back(target->values[m] * extra.alphabet_size + extra.values[m]);
    *target = std::move(joined);
    return make_general_code(code.graph, code.message_count, std::move(sfns), std::move(efns));
}

/// Encode a linear code as a general code: messages become indices (base-p
/// digits, coordinate j is digit j), outputs become symbol indices.
inline GeneralCode to_general(const LinearCode& code) {
    long long n = 1;
    for (long long j = 0; j < code.message_dim; ++j) {
        n *= code.field.p;
        if (n > 1'000'000) throw BudgetError("to_general: message space too large to enumerate");
    }
    auto table_of = [&](const Matrix& m) {
        ValueTable t;
        long long alpha = 1;
        for (std::size_t r = 0; r < m.rows.size(); ++r) alpha *= code.field.p;
        if (alpha > 1'000'000'000) throw BudgetError("to_general: edge alphabet too large");
        t.alphabet_size = (int)alpha;
        for (long long msg = 0; msg < n; ++msg) {
            FVec v(code.message_dim);
            long long rem = msg;
            for (long long j = 0; j < code.message_dim; ++j) {
                v[j] = rem % code.field.p;
                rem /= code.field.p;
            }
            long long sym = 0;
            for (std::size_t r = 0; r < m.rows.size(); ++r) {
                long long val = 0;
                for (long long j = 0; j < code.message_dim; ++j)
                    val = (val + m.rows[r][j] * v[j]) % code.field.p;
                sym = sym * code.field.p + val;
            }
            t.values.push_back((int)sym);
        }
        return t;
    };
    std::vector<ValueTable> sfns, efns;
    for (const auto& m : code.source_fns) sfns.push_back(table_of(m));
    for (const auto& m : code.edge_fns) efns.push_back(table_of(m));
    return make_general_code(code.graph, n, std::move(sfns), std::move(efns));
}

}  // namespace ncser
