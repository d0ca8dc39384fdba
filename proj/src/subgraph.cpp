#include "tessiso/subgraph.hpp"

#include "tessiso/errors.hpp"

#include <algorithm>
#include <numeric>

namespace tessiso {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

}  // namespace

std::vector<Label> SubgraphSelection::edge_labels(const MetricGraph& g) const {
    std::vector<Label> out;
    out.reserve(edges.size());
    for (int e : edges) out.push_back(g.embedding().edge_label(e));
    return out;
}

SubgraphSelection subgraph_stats(const MetricGraph& g, std::span<const int> edge_subset) {
    const EmbeddedGraph& emb = g.embedding();
    SubgraphSelection s;
    s.edges.assign(edge_subset.begin(), edge_subset.end());
    std::sort(s.edges.begin(), s.edges.end());
    s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
    if (s.edges.empty()) throw Error(ErrorCode::OutOfRange, "empty edge selection");
    for (int e : s.edges)
        if (e < 0 || e >= emb.edge_count()) throw Error(ErrorCode::OutOfRange, "edge index out of range");

    std::vector<int> deg_in(emb.vertex_count(), 0);
    for (int e : s.edges) {
        ++deg_in[emb.ends(e)[0]];
        ++deg_in[emb.ends(e)[1]];
        s.measure += g.length(e);
    }
    for (int v = 0; v < emb.vertex_count(); ++v)
        if (deg_in[v] > 0) s.vertices.push_back(v);

    // Connectivity over the selected edges.
    DisjointSets sets(emb.vertex_count());
    for (int e : s.edges) sets.unite(emb.ends(e)[0], emb.ends(e)[1]);
    const int root = sets.find(s.vertices.front());
    for (int v : s.vertices)
        if (sets.find(v) != root)
            throw Error(ErrorCode::DisconnectedSelection, "selected edges do not form a connected subgraph");

    std::vector<char> interior(emb.vertex_count(), 0);
    for (int v : s.vertices) {
        auto td = emb.true_degree(v);
        if (!td)
            throw Error(ErrorCode::FrontierContact,
                        "vertex " + std::to_string(emb.vertex_label(v)) + " has no known true degree");
        if (deg_in[v] < *td) {
            s.boundary.push_back(v);
            s.boundary_degree += deg_in[v];
        } else {
            s.interior_vertices.push_back(v);
            interior[v] = 1;
        }
    }
    for (int e : s.edges)
        if (interior[emb.ends(e)[0]] && interior[emb.ends(e)[1]]) s.interior_edges.push_back(e);
    return s;
}

SubgraphSelection subgraph_stats_by_label(const MetricGraph& g, std::span<const Label> edge_labels) {
    std::vector<int> edges;
    for (Label l : edge_labels) {
        auto e = g.embedding().edge_index(l);
        if (!e) throw Error(ErrorCode::OutOfRange, "unknown edge id " + std::to_string(l));
        edges.push_back(*e);
    }
    return subgraph_stats(g, edges);
}

SubgraphSelection star_union(const MetricGraph& g, std::span<const int> generators) {
    const EmbeddedGraph& emb = g.embedding();
    std::vector<int> edges;
    for (int v : generators) {
        if (emb.is_frontier(v))
            throw Error(ErrorCode::FrontierContact,
                        "star of frontier vertex " + std::to_string(emb.vertex_label(v)) + " is incomplete");
        for (int d : emb.out_darts(v)) edges.push_back(EmbeddedGraph::dart_edge(d));
    }
    return subgraph_stats(g, edges);
}

InteriorFaces interior_faces(const MetricGraph& g, const SubgraphSelection& s) {
    const EmbeddedGraph& emb = g.embedding();
    const int face_count = static_cast<int>(g.tiles().size());

    std::vector<char> in_h(emb.edge_count(), 0);
    for (int e : s.interior_edges) in_h[e] = 1;
    std::vector<char> h_vertex(emb.vertex_count(), 0);
    for (int v : s.interior_vertices) h_vertex[v] = 1;

    // Tiles glued across edges outside the interior graph form its faces.
    DisjointSets sets(face_count);
    for (int e = 0; e < emb.edge_count(); ++e)
        if (!in_h[e]) sets.unite(g.dart_face(2 * e), g.dart_face(2 * e + 1));

    std::vector<char> outside_root(face_count, 0);
    for (int f = 0; f < face_count; ++f)
        if (g.tile(f).status != TileStatus::Bounded) outside_root[sets.find(f)] = 1;
    const int outside_classes = static_cast<int>(std::count(outside_root.begin(), outside_root.end(), 1));
    if (outside_classes != 1)
        throw Error(ErrorCode::IndeterminateFaces,
                    outside_classes == 0 ? "no face of the ambient graph is known to be unbounded"
                                         : "interior graph separates frontier faces; bounded faces undecidable");

    std::vector<int> class_slot(face_count, -1);
    InteriorFaces out;
    for (int f = 0; f < face_count; ++f) {
        const int r = sets.find(f);
        if (outside_root[r]) continue;
        if (class_slot[r] < 0) {
            class_slot[r] = static_cast<int>(out.bounded.size());
            out.bounded.emplace_back();
        }
        out.bounded[class_slot[r]].push_back(f);
    }
    for (int v = 0; v < emb.vertex_count(); ++v) {
        if (h_vertex[v] || emb.degree(v) == 0) continue;
        const int r = sets.find(g.dart_face(emb.out_darts(v).front()));
        if (!outside_root[r]) out.enclosed_vertices.push_back(v);
    }
    return out;
}

Classification classify_subgraph(const MetricGraph& g, const SubgraphSelection& s) {
    const EmbeddedGraph& emb = g.embedding();
    Classification c;

    // Any generating set consists of vertices whose whole star is selected;
    // it suffices to test the components of that set.
    std::vector<char> full(emb.vertex_count(), 0);
    for (int v : s.interior_vertices) full[v] = 1;
    std::vector<char> seen(emb.vertex_count(), 0);
    for (int start : s.interior_vertices) {
        if (seen[start]) continue;
        std::vector<int> stack{start};
        seen[start] = 1;
        std::vector<int> covered;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int d : emb.out_darts(v)) {
                covered.push_back(EmbeddedGraph::dart_edge(d));
                const int w = emb.head(d);
                if (full[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(covered.begin(), covered.end());
        covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
        if (covered.size() == s.edges.size()) {
            c.star_like = true;
            break;
        }
    }

    const InteriorFaces faces = interior_faces(g, s);
    c.complete = std::all_of(faces.bounded.begin(), faces.bounded.end(),
                             [](const std::vector<int>& cls) { return cls.size() == 1; });
    return c;
}

SubgraphSelection complete_closure(const MetricGraph& g, const SubgraphSelection& s) {
    const EmbeddedGraph& emb = g.embedding();
    if (!classify_subgraph(g, s).star_like)
        throw Error(ErrorCode::NotStarLikeComplete, "completion closure needs a star-like selection");
    SubgraphSelection cur = s;
    for (;;) {
        const InteriorFaces faces = interior_faces(g, cur);
        if (faces.enclosed_vertices.empty()) return cur;
        std::vector<int> edges = cur.edges;
        for (int v : faces.enclosed_vertices) {
            if (emb.is_frontier(v))
                throw Error(ErrorCode::FrontierContact,
                            "closure reaches frontier vertex " + std::to_string(emb.vertex_label(v)));
            for (int d : emb.out_darts(v)) edges.push_back(EmbeddedGraph::dart_edge(d));
        }
        cur = subgraph_stats(g, edges);
    }
}

}  // namespace tessiso
