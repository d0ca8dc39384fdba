#include "tessiso/graph.hpp"

#include "tessiso/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tessiso {

std::optional<int> EmbeddedGraph::vertex_index(Label id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> EmbeddedGraph::edge_index(Label id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

bool EmbeddedGraph::has_frontier() const {
    return std::any_of(frontier_.begin(), frontier_.end(), [](char c) { return c != 0; });
}

std::string_view to_string(TileStatus s) {
    switch (s) {
        case TileStatus::Bounded: return "bounded";
        case TileStatus::Unbounded: return "unbounded";
        case TileStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

class GraphBuilder {
public:
    static EmbeddedGraph build(const GraphSpec& spec) {
        EmbeddedGraph g;

        std::vector<const VertexSpec*> vs;
        for (const auto& v : spec.vertices) vs.push_back(&v);
        std::sort(vs.begin(), vs.end(), [](auto* a, auto* b) { return a->id < b->id; });
        for (size_t i = 0; i < vs.size(); ++i) {
            if (i > 0 && vs[i]->id == vs[i - 1]->id)
                throw Error(ErrorCode::ParseError, "duplicate vertex id " + std::to_string(vs[i]->id));
            g.vertex_labels_.push_back(vs[i]->id);
            g.vertex_index_.emplace(vs[i]->id, static_cast<int>(i));
        }
        if (vs.empty()) throw Error(ErrorCode::ParseError, "graph has no vertices");

        std::vector<const EdgeSpec*> es;
        for (const auto& e : spec.edges) es.push_back(&e);
        std::sort(es.begin(), es.end(), [](auto* a, auto* b) { return a->id < b->id; });
        std::set<std::pair<int, int>> pairs;
        for (size_t i = 0; i < es.size(); ++i) {
            const EdgeSpec& e = *es[i];
            if (i > 0 && e.id == es[i - 1]->id)
                throw Error(ErrorCode::ParseError, "duplicate edge id " + std::to_string(e.id));
            auto a = g.vertex_index(e.ends[0]);
            auto b = g.vertex_index(e.ends[1]);
            if (!a || !b)
                throw Error(ErrorCode::ParseError, "edge " + std::to_string(e.id) + " references an unknown vertex");
            if (*a == *b) throw Error(ErrorCode::NonSimple, "edge " + std::to_string(e.id) + " is a loop");
            if (!pairs.emplace(std::min(*a, *b), std::max(*a, *b)).second)
                throw Error(ErrorCode::NonSimple, "edge " + std::to_string(e.id) + " duplicates another edge");
            g.edge_labels_.push_back(e.id);
            g.edge_index_.emplace(e.id, static_cast<int>(i));
            g.edge_ends_.push_back({*a, *b});
        }

        const int n = g.vertex_count();
        const int m = g.edge_count();
        std::vector<int> visible(n, 0);
        for (const auto& ends : g.edge_ends_) {
            ++visible[ends[0]];
            ++visible[ends[1]];
        }

        g.rot_next_.assign(2 * m, -1);
        g.rot_prev_.assign(2 * m, -1);
        g.out_offset_.assign(n + 1, 0);
        for (int v = 0; v < n; ++v) {
            const VertexSpec& spec_v = *vs[v];
            const std::string where = "vertex " + std::to_string(spec_v.id);
            if (static_cast<int>(spec_v.rotation.size()) != visible[v])
                throw Error(ErrorCode::MalformedRotation, where + ": rotation lists " +
                                                              std::to_string(spec_v.rotation.size()) +
                                                              " edges but the vertex has " +
                                                              std::to_string(visible[v]));
            std::vector<int> darts;
            std::set<int> seen;
            for (Label el : spec_v.rotation) {
                auto e = g.edge_index(el);
                if (!e) throw Error(ErrorCode::MalformedRotation, where + ": unknown edge " + std::to_string(el));
                if (g.edge_ends_[*e][0] != v && g.edge_ends_[*e][1] != v)
                    throw Error(ErrorCode::MalformedRotation,
                                where + ": edge " + std::to_string(el) + " is not incident");
                if (!seen.insert(*e).second)
                    throw Error(ErrorCode::MalformedRotation, where + ": edge " + std::to_string(el) + " repeated");
                darts.push_back(g.dart_from(*e, v));
            }
            g.out_offset_[v + 1] = g.out_offset_[v] + static_cast<int>(darts.size());
            for (size_t i = 0; i < darts.size(); ++i) {
                g.rot_next_[darts[i]] = darts[(i + 1) % darts.size()];
                g.rot_prev_[darts[(i + 1) % darts.size()]] = darts[i];
            }
            g.out_darts_.insert(g.out_darts_.end(), darts.begin(), darts.end());
        }

        // Connectivity.
        {
            std::vector<char> seen(n, 0);
            std::vector<int> stack{0};
            seen[0] = 1;
            int reached = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int d : g.out_darts(v)) {
                    int w = g.head(d);
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++reached;
                        stack.push_back(w);
                    }
                }
            }
            if (reached != n)
                throw Error(ErrorCode::Disconnected, std::to_string(n - reached) + " vertices unreachable");
        }

        g.frontier_.assign(n, 0);
        for (Label id : spec.frontier_vertices) {
            auto v = g.vertex_index(id);
            if (!v) throw Error(ErrorCode::ParseError, "unknown frontier vertex " + std::to_string(id));
            g.frontier_[*v] = 1;
        }
        g.true_degree_.assign(n, -1);
        for (int v = 0; v < n; ++v)
            if (!g.frontier_[v]) g.true_degree_[v] = visible[v];
        for (const auto& [id, deg] : spec.true_degree) {
            auto v = g.vertex_index(id);
            if (!v) throw Error(ErrorCode::ParseError, "true_degree for unknown vertex " + std::to_string(id));
            if (deg < visible[*v])
                throw Error(ErrorCode::InconsistentFrontier, "vertex " + std::to_string(id) + ": true degree " +
                                                                 std::to_string(deg) + " below visible degree " +
                                                                 std::to_string(visible[*v]));
            if (!g.frontier_[*v] && deg != visible[*v])
                throw Error(ErrorCode::InconsistentFrontier,
                            "vertex " + std::to_string(id) + " is not frontier but true degree differs");
            g.true_degree_[*v] = deg;
        }
        return g;
    }
};

std::vector<Tile> trace_faces(const EmbeddedGraph& g) {
    std::vector<Tile> tiles;
    std::vector<char> used(g.dart_count(), 0);
    for (int start = 0; start < g.dart_count(); ++start) {
        if (used[start]) continue;
        Tile t;
        bool frontier = false;
        int d = start;
        do {
            used[d] = 1;
            t.face_cycle.push_back(d);
            t.edge_set.push_back(EmbeddedGraph::dart_edge(d));
            frontier = frontier || g.is_frontier(g.tail(d));
            d = g.face_next(d);
        } while (d != start);
        std::sort(t.edge_set.begin(), t.edge_set.end());
        t.edge_set.erase(std::unique(t.edge_set.begin(), t.edge_set.end()), t.edge_set.end());
        t.degree = static_cast<int>(t.edge_set.size());
        t.status = frontier ? TileStatus::Indeterminate : TileStatus::Bounded;
        tiles.push_back(std::move(t));
    }
    return tiles;
}

MetricGraph build_graph(const GraphSpec& spec) {
    MetricGraph g;
    g.emb_ = GraphBuilder::build(spec);
    const EmbeddedGraph& emb = g.emb_;

    g.lengths_.assign(emb.edge_count(), Rational(0));
    for (const auto& e : spec.edges) {
        if (e.length <= 0)
            throw Error(ErrorCode::NonPositiveLength, "edge " + std::to_string(e.id) + " has length " +
                                                          to_string(e.length));
        g.lengths_[*emb.edge_index(e.id)] = e.length;
    }

    g.dart_marked_.assign(emb.dart_count(), 0);
    for (const auto& rep : spec.unbounded_face_reps) {
        auto e = emb.edge_index(rep.edge);
        auto h = emb.vertex_index(rep.head);
        if (!e || !h || (emb.ends(*e)[0] != *h && emb.ends(*e)[1] != *h))
            throw Error(ErrorCode::ParseError, "unbounded face rep [" + std::to_string(rep.edge) + ", " +
                                                   std::to_string(rep.head) + "] is not a directed edge");
        g.dart_marked_[EmbeddedGraph::twin(emb.dart_from(*e, *h))] = 1;
    }

    g.tiles_ = trace_faces(emb);
    g.dart_face_.assign(emb.dart_count(), -1);
    for (size_t f = 0; f < g.tiles_.size(); ++f) {
        Tile& t = g.tiles_[f];
        bool marked = false;
        for (int d : t.face_cycle) {
            g.dart_face_[d] = static_cast<int>(f);
            marked = marked || g.dart_marked_[d];
        }
        if (marked) g.outer_marks_.push_back(static_cast<int>(f));
        if (t.status == TileStatus::Indeterminate) continue;
        if (marked) {
            t.status = TileStatus::Unbounded;
            t.perimeter = ExtRational::infinity();
        } else {
            Rational p = 0;
            for (int e : t.edge_set) p += g.lengths_[e];
            t.perimeter = ExtRational(p);
        }
    }
    g.family_ = spec.family;
    return g;
}

SideKind MetricGraph::side(int dart) const {
    switch (tiles_[dart_face_[dart]].status) {
        case TileStatus::Bounded: return SideKind::Bounded;
        case TileStatus::Unbounded: return SideKind::Unbounded;
        case TileStatus::Indeterminate: break;
    }
    return dart_marked_[dart] ? SideKind::Unbounded : SideKind::Indeterminate;
}

GraphSpec MetricGraph::to_spec() const {
    GraphSpec spec;
    for (int v = 0; v < emb_.vertex_count(); ++v) {
        VertexSpec vs{emb_.vertex_label(v), {}};
        for (int d : emb_.out_darts(v)) vs.rotation.push_back(emb_.edge_label(EmbeddedGraph::dart_edge(d)));
        spec.vertices.push_back(std::move(vs));
        if (emb_.is_frontier(v)) {
            spec.frontier_vertices.push_back(emb_.vertex_label(v));
            if (auto td = emb_.true_degree(v)) spec.true_degree.emplace(emb_.vertex_label(v), *td);
        }
    }
    for (int e = 0; e < emb_.edge_count(); ++e) {
        const auto& ends = emb_.ends(e);
        spec.edges.push_back({emb_.edge_label(e), {emb_.vertex_label(ends[0]), emb_.vertex_label(ends[1])}, lengths_[e]});
    }
    for (int d = 0; d < emb_.dart_count(); ++d) {
        if (!dart_marked_[d]) continue;
        spec.unbounded_face_reps.push_back(
            {emb_.edge_label(EmbeddedGraph::dart_edge(d)), emb_.vertex_label(emb_.head(d))});
    }
    spec.family = family_;
    return spec;
}

ValidationReport validate_tessellation(const MetricGraph& g, ValidationMode mode) {
    ValidationReport report;
    report.mode = mode;
    const EmbeddedGraph& emb = g.embedding();
    const bool truncation = mode == ValidationMode::Truncation;

    if (!truncation) {
        if (emb.has_frontier())
            report.violations.push_back({"outer", "finite mode on a graph with frontier vertices", {}, {}, -1});
        int unbounded = 0;
        for (const Tile& t : g.tiles()) unbounded += t.status == TileStatus::Unbounded ? 1 : 0;
        if (unbounded != 1)
            report.violations.push_back(
                {"outer", "a finite plane graph has exactly one unbounded face; " + std::to_string(unbounded) +
                              " are marked",
                 {}, {}, -1});
    }

    for (int v = 0; v < emb.vertex_count(); ++v) {
        if (truncation && emb.is_frontier(v)) continue;
        int deg = emb.true_degree(v).value_or(emb.degree(v));
        if (deg < 3)
            report.violations.push_back(
                {"v", "vertex degree " + std::to_string(deg) + " < 3", {emb.vertex_label(v)}, {}, -1});
    }

    for (size_t f = 0; f < g.tiles().size(); ++f) {
        const Tile& t = g.tiles()[f];
        if (t.status != TileStatus::Bounded) continue;
        std::set<int> verts;
        for (int d : t.face_cycle) verts.insert(emb.tail(d));
        const bool simple_cycle = verts.size() == t.face_cycle.size() &&
                                  static_cast<int>(t.face_cycle.size()) == t.degree;
        if (t.degree < 3 || !simple_cycle) {
            Violation viol{"ii", "", {}, {}, static_cast<int>(f)};
            viol.message = t.degree < 3 ? "bounded tile with " + std::to_string(t.degree) + " edges"
                                        : "bounded tile boundary is not a simple cycle";
            for (int e : t.edge_set) viol.edges.push_back(emb.edge_label(e));
            report.violations.push_back(std::move(viol));
        }
    }

    for (int e = 0; e < emb.edge_count(); ++e) {
        int f0 = g.dart_face(2 * e);
        int f1 = g.dart_face(2 * e + 1);
        if (truncation && (g.tile(f0).status == TileStatus::Indeterminate ||
                           g.tile(f1).status == TileStatus::Indeterminate))
            continue;
        if (f0 == f1)
            report.violations.push_back({"iv", "both sides of the edge lie on the same face",
                                         {}, {emb.edge_label(e)}, f0});
    }
    return report;
}

}  // namespace tessiso
