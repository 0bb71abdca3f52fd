#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ncser/field.hpp"

namespace ncser {

/// An ordinary edge of a sourced graph.
struct Edge {
    std::string id, tail, head;
    bool operator==(const Edge&) const = default;
};

/// A source edge: it has a head but no tail.
struct Source {
    std::string id, head;
    bool operator==(const Source&) const = default;
};

/// Directed multigraph with source edges. Multi-edges and self-loops are
/// permitted; ids must be unique across edges and sources.
struct SourcedGraph {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<Source> sources;

    bool operator==(const SourcedGraph&) const = default;

    bool has_vertex(const std::string& v) const {
        for (const auto& w : vertices)
            if (w == v) return true;
        return false;
    }

    void check() const {
        std::set<std::string> vs(vertices.begin(), vertices.end());
        if (vs.size() != vertices.size()) throw SchemaError("duplicate vertex id");
        std::set<std::string> ids;
        for (const auto& e : edges) {
            if (!ids.insert(e.id).second) throw SchemaError("duplicate edge id: " + e.id);
            if (!vs.count(e.tail)) throw SchemaError("edge " + e.id + " references unknown vertex " + e.tail);
            if (!vs.count(e.head)) throw SchemaError("edge " + e.id + " references unknown vertex " + e.head);
        }
        for (const auto& s : sources) {
            if (!ids.insert(s.id).second) throw SchemaError("duplicate edge id: " + s.id);
            if (!vs.count(s.head)) throw SchemaError("source " + s.id + " references unknown vertex " + s.head);
        }
    }

    /// Indices of ordinary edges with head v, declaration order.
    std::vector<std::size_t> in_edges(const std::string& v) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].head == v) out.push_back(i);
        return out;
    }

    /// Indices of sources with head v, declaration order.
    std::vector<std::size_t> in_sources(const std::string& v) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < sources.size(); ++i)
            if (sources[i].head == v) out.push_back(i);
        return out;
    }

    /// Indices of ordinary edges with tail v, declaration order.
    std::vector<std::size_t> out_edges(const std::string& v) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].tail == v) out.push_back(i);
        return out;
    }

    long long edge_index(const std::string& id) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].id == id) return (long long)i;
        return -1;
    }

    long long source_index(const std::string& id) const {
        for (std::size_t i = 0; i < sources.size(); ++i)
            if (sources[i].id == id) return (long long)i;
        return -1;
    }
};

}  // namespace ncser
