#pragma once

#include "tessiso/graph.hpp"

#include <span>
#include <vector>

namespace tessiso {

/// A finite connected edge subset together with its derived quantities. All
/// index vectors are sorted dense indices of the ambient graph.
struct SubgraphSelection {
    std::vector<int> edges;
    std::vector<int> vertices;
    std::vector<int> boundary;  ///< {v : deg_S(v) < deg(v)}
    long long boundary_degree = 0;
    Rational measure{0};
    std::vector<int> interior_vertices;
    std::vector<int> interior_edges;

    Rational ratio() const { return Rational(boundary_degree) / measure; }
    std::vector<Label> edge_labels(const MetricGraph& g) const;
};

/// Throws DisconnectedSelection, FrontierContact (a vertex without a known
/// true degree) or OutOfRange (empty or unknown edge).
SubgraphSelection subgraph_stats(const MetricGraph& g, std::span<const int> edges);
SubgraphSelection subgraph_stats_by_label(const MetricGraph& g, std::span<const Label> edge_labels);

/// ∪_{v∈U} E_v. Every generator must be frontier-free.
SubgraphSelection star_union(const MetricGraph& g, std::span<const int> generators);

struct Classification {
    bool star_like = false;
    bool complete = false;
};

/// Faces of the interior graph, expressed through the tiles they contain.
struct InteriorFaces {
    /// Each entry is one bounded face of the interior graph, as the sorted list
    /// of tile indices whose union it is.
    std::vector<std::vector<int>> bounded;
    /// Vertices outside the interior graph lying inside a bounded face.
    std::vector<int> enclosed_vertices;
};

/// Throws IndeterminateFaces when the unbounded face of the interior graph
/// cannot be singled out from frontier-free data.
InteriorFaces interior_faces(const MetricGraph& g, const SubgraphSelection& s);

Classification classify_subgraph(const MetricGraph& g, const SubgraphSelection& s);

/// Adds stars of enclosed vertices until the selection is complete. Requires
/// a star-like input; throws NotStarLikeComplete otherwise and FrontierContact
/// if an enclosed vertex is a frontier vertex.
SubgraphSelection complete_closure(const MetricGraph& g, const SubgraphSelection& s);

}  // namespace tessiso
