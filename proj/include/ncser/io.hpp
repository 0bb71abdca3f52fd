#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "ncser/code.hpp"
#include "ncser/entropy.hpp"
#include "ncser/general_serializer.hpp"
#include "ncser/linear_serializer.hpp"
#include "ncser/schedule.hpp"

namespace ncser {

using Json = nlohmann::json;
using AnyCode = std::variant<LinearCode, GeneralCode>;

namespace io_detail {

inline Json load(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field: ") + key);
    return j.at(key);
}

inline std::vector<FVec> parse_rows(const Json& j, const char* where) {
    if (!j.is_array()) throw SchemaError(std::string(where) + ": rows must be an array");
    std::vector<FVec> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw SchemaError(std::string(where) + ": row must be an array");
        FVec v;
        for (const auto& x : r) {
            if (!x.is_number_integer()) throw SchemaError(std::string(where) + ": row entry not an integer");
            v.push_back(x.get<long long>());
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

inline Json emit_rows(const std::vector<FVec>& rows) {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back(r);
    return j;
}

}  // namespace io_detail

inline AnyCode parse_code(const std::string& text) {
    using namespace io_detail;
    Json j = load(text);
    std::string kind = field(j, "kind").get<std::string>();

    SourcedGraph g;
    for (const auto& v : field(j, "vertices")) g.vertices.push_back(v.get<std::string>());
    for (const auto& s : field(j, "sources"))
        g.sources.push_back({field(s, "id").get<std::string>(), field(s, "head").get<std::string>()});
    for (const auto& e : field(j, "edges"))
        g.edges.push_back({field(e, "id").get<std::string>(), field(e, "tail").get<std::string>(),
                           field(e, "head").get<std::string>()});

    try {
        if (kind == "linear") {
            FieldSpec f(field(field(j, "field"), "p").get<long long>());
            long long d = field(j, "message_dim").get<long long>();
            std::vector<Matrix> sfns, efns;
            for (const auto& s : field(j, "sources"))
                sfns.push_back(Matrix{f, d, parse_rows(field(s, "rows"), "source")});
            for (const auto& e : field(j, "edges"))
                efns.push_back(Matrix{f, d, parse_rows(field(e, "rows"), "edge")});
            return make_linear_code(std::move(g), f, d, std::move(sfns), std::move(efns));
        }
        if (kind == "general") {
            long long n = field(j, "message_count").get<long long>();
            auto parse_table = [&](const Json& spec) {
                ValueTable t;
                t.alphabet_size = field(spec, "alphabet_size").get<int>();
                for (const auto& x : field(spec, "table")) t.values.push_back(x.get<int>());
                return t;
            };
            std::vector<ValueTable> sfns, efns;
            for (const auto& s : field(j, "sources")) sfns.push_back(parse_table(s));
            for (const auto& e : field(j, "edges")) efns.push_back(parse_table(e));
            return make_general_code(std::move(g), n, std::move(sfns), std::move(efns));
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    throw SchemaError("unknown code kind: " + kind);
}

inline Json emit_json(const LinearCode& code) {
    using namespace io_detail;
    Json j;
    j["kind"] = "linear";
    j["field"] = Json{{"p", code.field.p}};
    j["message_dim"] = code.message_dim;
    j["vertices"] = code.graph.vertices;
    j["sources"] = Json::array();
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s)
        j["sources"].push_back(Json{{"id", code.graph.sources[s].id},
                                    {"head", code.graph.sources[s].head},
                                    {"rows", emit_rows(code.source_fns[s].rows)}});
    j["edges"] = Json::array();
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e)
        j["edges"].push_back(Json{{"id", code.graph.edges[e].id},
                                  {"tail", code.graph.edges[e].tail},
                                  {"head", code.graph.edges[e].head},
                                  {"rows", emit_rows(code.edge_fns[e].rows)}});
    return j;
}

inline Json emit_json(const GeneralCode& code) {
    Json j;
    j["kind"] = "general";
    j["message_count"] = code.message_count;
    j["vertices"] = code.graph.vertices;
    j["sources"] = Json::array();
    for (std::size_t s = 0; s < code.graph.sources.size(); ++s)
        j["sources"].push_back(Json{{"id", code.graph.sources[s].id},
                                    {"head", code.graph.sources[s].head},
                                    {"table", code.source_fns[s].values},
                                    {"alphabet_size", code.source_fns[s].alphabet_size}});
    j["edges"] = Json::array();
    for (std::size_t e = 0; e < code.graph.edges.size(); ++e)
        j["edges"].push_back(Json{{"id", code.graph.edges[e].id},
                                  {"tail", code.graph.edges[e].tail},
                                  {"head", code.graph.edges[e].head},
                                  {"table", code.edge_fns[e].values},
                                  {"alphabet_size", code.edge_fns[e].alphabet_size}});
    return j;
}

inline std::string emit(const LinearCode& code) { return emit_json(code).dump(2) + "\n"; }
inline std::string emit(const GeneralCode& code) { return emit_json(code).dump(2) + "\n"; }
inline std::string emit(const AnyCode& code) {
    return std::visit([](const auto& c) { return emit(c); }, code);
}

// --- schedules ------------------------------------------------------------
//
// Linear micro-functions are encoded as arrays of rows; general ones as flat
// arrays of symbols. {"rounds": [{"a": [[1,0]]}, {"b": [0,1,1,0]}]}

inline Json emit_json(const LinearSchedule& s) {
    Json rounds = Json::array();
    for (const auto& round : s.rounds) {
        Json r = Json::object();
        for (const auto& [id, m] : round) r[id] = io_detail::emit_rows(m.rows);
        rounds.push_back(std::move(r));
    }
    return Json{{"rounds", rounds}};
}

inline Json emit_json(const GeneralSchedule& s) {
    Json rounds = Json::array();
    for (const auto& round : s.rounds) {
        Json r = Json::object();
        for (const auto& [id, t] : round) r[id] = t;
        rounds.push_back(std::move(r));
    }
    return Json{{"rounds", rounds}};
}

inline LinearSchedule parse_linear_schedule(const std::string& text, const LinearCode& code) {
    using namespace io_detail;
    Json j = load(text);
    LinearSchedule s;
    for (const auto& round : field(j, "rounds")) {
        if (!round.is_object()) throw SchemaError("schedule round must be an object");
        std::map<std::string, Matrix> r;
        for (const auto& [id, rows] : round.items())
            r.emplace(id, Matrix{code.field, code.message_dim, parse_rows(rows, "schedule")});
        s.rounds.push_back(std::move(r));
    }
    return s;
}

inline GeneralSchedule parse_general_schedule(const std::string& text) {
    using namespace io_detail;
    Json j = load(text);
    GeneralSchedule s;
    for (const auto& round : field(j, "rounds")) {
        if (!round.is_object()) throw SchemaError("schedule round must be an object");
        std::map<std::string, std::vector<int>> r;
        for (const auto& [id, table] : round.items()) {
            if (!table.is_array()) throw SchemaError("schedule table must be an array");
            std::vector<int> t;
            for (const auto& x : table) t.push_back(x.get<int>());
            r.emplace(id, std::move(t));
        }
        s.rounds.push_back(std::move(r));
    }
    return s;
}

// --- certificates -----------------------------------------------------------
//
// Linear vortex: {edge_id: [basis rows]}. General vortex: {edge_id: [labels]}.

inline Json emit_json(const LinearVortex& v) {
    Json j = Json::object();
    for (const auto& [id, s] : v.spaces) j[id] = io_detail::emit_rows(s.basis);
    return j;
}

inline LinearVortex parse_linear_vortex(const std::string& text, const LinearCode& code) {
    using namespace io_detail;
    Json j = load(text);
    if (!j.is_object()) throw SchemaError("vortex file must be an object");
    LinearVortex v;
    for (const auto& [id, rows] : j.items())
        v.spaces.emplace(id, rref(parse_rows(rows, "vortex"), code.message_dim, code.field));
    return v;
}

inline Json emit_json(const SemiVortex& v) {
    Json j = Json::object();
    for (const auto& [id, p] : v.parts) j[id] = p.labels;
    return j;
}

inline SemiVortex parse_semivortex(const std::string& text) {
    using namespace io_detail;
    Json j = load(text);
    if (!j.is_object()) throw SchemaError("vortex file must be an object");
    SemiVortex v;
    for (const auto& [id, labels] : j.items()) {
        if (!labels.is_array()) throw SchemaError("vortex labels must be an array");
        std::vector<int> l;
        for (const auto& x : labels) l.push_back(x.get<int>());
        v.parts.emplace(id, Partition::from_labels(l));
    }
    return v;
}

// --- entropic vectors -------------------------------------------------------
//
// {"ids": [...], "values": {"a,b,x": "3/2", ...}}; subset keys are the
// lexicographically sorted member ids joined by commas, values are exact
// rationals. Irrational coordinates are not representable in this format.

inline Json emit_json(const EntropicVector& v) {
    Json values = Json::object();
    for (const auto& [mask, value] : v.values) {
        std::vector<std::string> members;
        for (std::size_t i = 0; i < v.ids.size(); ++i)
            if (mask & (1u << i)) members.push_back(v.ids[i]);
        std::sort(members.begin(), members.end());
        std::string key;
        for (const auto& m : members) key += (key.empty() ? "" : ",") + m;
        if (!value.is_rational())
            throw SchemaError("entropic vector has an irrational coordinate at {" + key +
                              "}: " + value.str());
        values[key] = rat_str(value.rational());
    }
    Json j;
    j["ids"] = v.ids;
    j["values"] = values;
    return j;
}

inline EntropicVector parse_entropic_vector(const std::string& text) {
    using namespace io_detail;
    Json j = load(text);
    EntropicVector v;
    for (const auto& id : field(j, "ids")) v.ids.push_back(id.get<std::string>());
    for (const auto& [key, value] : field(j, "values").items()) {
        std::vector<std::string> members;
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, ',')) members.push_back(part);
        v.values.emplace(v.mask_of(members), EntropyValue::from_rational(parse_rat(value.get<std::string>())));
    }
    std::uint32_t ground = (std::uint32_t)((1ull << v.ids.size()) - 1);
    for (std::uint32_t mask = 1; mask <= ground; ++mask)
        if (!v.values.count(mask)) throw SchemaError("entropic vector missing a subset value");
    return v;
}

// --- files ------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << text;
}

inline AnyCode load_code(const std::string& path) { return parse_code(read_file(path)); }

}  // namespace ncser
