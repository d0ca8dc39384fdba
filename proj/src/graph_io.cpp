#include "tessiso/graph_io.hpp"

#include "tessiso/errors.hpp"

#include <fstream>
#include <sstream>

namespace tessiso {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing");
    return j.at(key);
}

Label as_label(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer id");
    return j.get<Label>();
}

Rational as_length(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) fail(path, "expected a rational string such as \"3/2\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

}  // namespace

GraphSpec graph_spec_from_json(const json& j) {
    if (!j.is_object()) fail("<root>", "expected an object");
    GraphSpec spec;

    const json& vertices = require(j, "vertices", "");
    if (!vertices.is_array()) fail("vertices", "expected an array");
    for (size_t i = 0; i < vertices.size(); ++i) {
        const std::string path = "vertices[" + std::to_string(i) + "]";
        VertexSpec v;
        v.id = as_label(require(vertices[i], "id", path), path + ".id");
        const json& rot = require(vertices[i], "rotation", path);
        if (!rot.is_array()) fail(path + ".rotation", "expected an array");
        for (size_t k = 0; k < rot.size(); ++k)
            v.rotation.push_back(as_label(rot[k], path + ".rotation[" + std::to_string(k) + "]"));
        spec.vertices.push_back(std::move(v));
    }

    const json& edges = require(j, "edges", "");
    if (!edges.is_array()) fail("edges", "expected an array");
    for (size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "edges[" + std::to_string(i) + "]";
        EdgeSpec e;
        e.id = as_label(require(edges[i], "id", path), path + ".id");
        const json& ends = require(edges[i], "ends", path);
        if (!ends.is_array() || ends.size() != 2) fail(path + ".ends", "expected a pair");
        e.ends = {as_label(ends[0], path + ".ends[0]"), as_label(ends[1], path + ".ends[1]")};
        e.length = edges[i].contains("length") ? as_length(edges[i]["length"], path + ".length") : Rational(1);
        spec.edges.push_back(e);
    }

    if (j.contains("frontier_vertices")) {
        const json& fr = j["frontier_vertices"];
        if (!fr.is_array()) fail("frontier_vertices", "expected an array");
        for (size_t i = 0; i < fr.size(); ++i)
            spec.frontier_vertices.push_back(as_label(fr[i], "frontier_vertices[" + std::to_string(i) + "]"));
    }
    if (j.contains("true_degree")) {
        const json& td = j["true_degree"];
        if (!td.is_object()) fail("true_degree", "expected an object keyed by vertex id");
        for (const auto& [key, val] : td.items()) {
            const std::string path = "true_degree." + key;
            Label id = 0;
            try {
                size_t used = 0;
                id = std::stoll(key, &used);
                if (used != key.size()) fail(path, "key is not an integer");
            } catch (const std::logic_error&) {
                fail(path, "key is not an integer");
            }
            if (!val.is_number_integer()) fail(path, "expected an integer");
            spec.true_degree[id] = val.get<int>();
        }
    }
    if (j.contains("unbounded_face_reps")) {
        const json& reps = j["unbounded_face_reps"];
        if (!reps.is_array()) fail("unbounded_face_reps", "expected an array");
        for (size_t i = 0; i < reps.size(); ++i) {
            const std::string path = "unbounded_face_reps[" + std::to_string(i) + "]";
            if (!reps[i].is_array() || reps[i].size() != 2) fail(path, "expected [edge id, head vertex id]");
            spec.unbounded_face_reps.push_back({as_label(reps[i][0], path), as_label(reps[i][1], path)});
        }
    }
    if (j.contains("family")) spec.family = j["family"];
    return spec;
}

json graph_spec_to_json(const GraphSpec& spec) {
    json j;
    j["schema"] = kGraphSchema;
    json vertices = json::array();
    for (const auto& v : spec.vertices) vertices.push_back({{"id", v.id}, {"rotation", v.rotation}});
    j["vertices"] = std::move(vertices);
    json edges = json::array();
    for (const auto& e : spec.edges)
        edges.push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}, {"length", to_string(e.length)}});
    j["edges"] = std::move(edges);
    j["frontier_vertices"] = spec.frontier_vertices;
    json td = json::object();
    for (const auto& [id, deg] : spec.true_degree) td[std::to_string(id)] = deg;
    j["true_degree"] = std::move(td);
    json reps = json::array();
    for (const auto& r : spec.unbounded_face_reps) reps.push_back({r.edge, r.head});
    j["unbounded_face_reps"] = std::move(reps);
    if (!spec.family.is_null()) j["family"] = spec.family;
    return j;
}

GraphSpec parse_graph_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return graph_spec_from_json(j);
}

std::string graph_spec_to_text(const GraphSpec& spec) { return graph_spec_to_json(spec).dump(1) + "\n"; }

GraphSpec read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str());
}

void write_graph_file(const std::filesystem::path& path, const GraphSpec& spec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << graph_spec_to_text(spec);
}

}  // namespace tessiso
