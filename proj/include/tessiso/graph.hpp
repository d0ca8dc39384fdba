#pragma once

#include "tessiso/rational.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tessiso {

/// External identifier of a vertex or edge as it appears in the interchange file.
using Label = std::int64_t;

// ---------------------------------------------------------------------------
// Interchange record
// ---------------------------------------------------------------------------

struct VertexSpec {
    Label id = 0;
    std::vector<Label> rotation;  ///< incident edge ids, cyclic, clockwise
};

struct EdgeSpec {
    Label id = 0;
    std::array<Label, 2> ends{};
    Rational length{1};
};

/// A directed edge named by its edge id and the vertex it points to.
struct DartRef {
    Label edge = 0;
    Label head = 0;
    friend bool operator==(const DartRef&, const DartRef&) = default;
};

struct GraphSpec {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    std::vector<Label> frontier_vertices;
    std::map<Label, int> true_degree;
    /// One directed edge per unbounded face. On faces that touch the frontier
    /// each entry marks only the side of that directed edge.
    std::vector<DartRef> unbounded_face_reps;
    nlohmann::json family;  ///< null when absent
};

// ---------------------------------------------------------------------------
// Combinatorial embedding
// ---------------------------------------------------------------------------

/// Rotation-system representation. Vertices and edges are addressed by dense
/// indices ordered like their labels. Edge e owns darts 2e (ends[0] -> ends[1])
/// and 2e+1 (the reverse).
class EmbeddedGraph {
public:
    int vertex_count() const { return static_cast<int>(vertex_labels_.size()); }
    int edge_count() const { return static_cast<int>(edge_ends_.size()); }
    int dart_count() const { return 2 * edge_count(); }

    Label vertex_label(int v) const { return vertex_labels_[v]; }
    Label edge_label(int e) const { return edge_labels_[e]; }
    std::optional<int> vertex_index(Label id) const;
    std::optional<int> edge_index(Label id) const;

    const std::array<int, 2>& ends(int e) const { return edge_ends_[e]; }
    int other_end(int e, int v) const { return edge_ends_[e][0] == v ? edge_ends_[e][1] : edge_ends_[e][0]; }

    static int twin(int dart) { return dart ^ 1; }
    static int dart_edge(int dart) { return dart >> 1; }
    int tail(int dart) const { return edge_ends_[dart >> 1][dart & 1]; }
    int head(int dart) const { return edge_ends_[dart >> 1][(dart & 1) ^ 1]; }
    /// Dart of edge e leaving vertex v.
    int dart_from(int e, int v) const { return 2 * e + (edge_ends_[e][0] == v ? 0 : 1); }

    int rot_next(int dart) const { return rot_next_[dart]; }
    int rot_prev(int dart) const { return rot_prev_[dart]; }
    /// Successor of a dart along its face cycle.
    int face_next(int dart) const { return rot_next_[twin(dart)]; }

    /// Darts leaving v in rotation order.
    std::span<const int> out_darts(int v) const {
        return {out_darts_.data() + out_offset_[v], out_darts_.data() + out_offset_[v + 1]};
    }
    int degree(int v) const { return out_offset_[v + 1] - out_offset_[v]; }

    bool is_frontier(int v) const { return frontier_[v] != 0; }
    bool has_frontier() const;
    /// Degree in the full graph; empty for a frontier vertex without annotation.
    std::optional<int> true_degree(int v) const {
        return true_degree_[v] < 0 ? std::nullopt : std::optional<int>(true_degree_[v]);
    }

private:
    friend class GraphBuilder;

    std::vector<Label> vertex_labels_;
    std::vector<Label> edge_labels_;
    std::unordered_map<Label, int> vertex_index_;
    std::unordered_map<Label, int> edge_index_;
    std::vector<std::array<int, 2>> edge_ends_;
    std::vector<int> rot_next_;
    std::vector<int> rot_prev_;
    std::vector<int> out_offset_;
    std::vector<int> out_darts_;
    std::vector<char> frontier_;
    std::vector<int> true_degree_;
};

// ---------------------------------------------------------------------------
// Tiles and the metric graph
// ---------------------------------------------------------------------------

enum class TileStatus { Bounded, Unbounded, Indeterminate };
std::string_view to_string(TileStatus s);

struct Tile {
    std::vector<int> face_cycle;  ///< darts in face order
    std::vector<int> edge_set;    ///< sorted, unique
    int degree = 0;               ///< #edge_set
    TileStatus status = TileStatus::Bounded;
    /// Sum of lengths when bounded, inf when unbounded, empty when indeterminate.
    std::optional<ExtRational> perimeter;
};

/// What lies on one side of an edge, seen from a dart.
enum class SideKind { Bounded, Unbounded, Indeterminate };

/// Face cycles under the convention successor(h) = rot_next(twin(h)). Status is
/// Indeterminate for cycles through a frontier vertex and Bounded otherwise;
/// perimeters are left empty. MetricGraph refines both.
std::vector<Tile> trace_faces(const EmbeddedGraph& g);

class MetricGraph {
public:
    const EmbeddedGraph& embedding() const { return emb_; }
    const Rational& length(int e) const { return lengths_[e]; }
    std::span<const Rational> lengths() const { return lengths_; }

    std::span<const Tile> tiles() const { return tiles_; }
    const Tile& tile(int f) const { return tiles_[f]; }
    int dart_face(int dart) const { return dart_face_[dart]; }
    bool dart_marked_unbounded(int dart) const { return dart_marked_[dart] != 0; }
    SideKind side(int dart) const;
    /// Faces containing at least one marked dart.
    const std::vector<int>& outer_face_marks() const { return outer_marks_; }

    /// True when the graph carries no frontier vertex.
    bool is_finite() const { return !emb_.has_frontier(); }
    const nlohmann::json& family() const { return family_; }

    /// The interchange record this graph was built from (normalised order).
    GraphSpec to_spec() const;

    // Convenience forwarding.
    int vertex_count() const { return emb_.vertex_count(); }
    int edge_count() const { return emb_.edge_count(); }

private:
    friend MetricGraph build_graph(const GraphSpec& spec);

    EmbeddedGraph emb_;
    std::vector<Rational> lengths_;
    std::vector<Tile> tiles_;
    std::vector<int> dart_face_;
    std::vector<char> dart_marked_;
    std::vector<int> outer_marks_;
    nlohmann::json family_;
};

/// Validates and builds. Throws Error with MalformedRotation, NonSimple,
/// Disconnected, NonPositiveLength, InconsistentFrontier or ParseError.
MetricGraph build_graph(const GraphSpec& spec);

// ---------------------------------------------------------------------------
// Tessellation axioms
// ---------------------------------------------------------------------------

enum class ValidationMode { Finite, Truncation };

struct Violation {
    std::string condition;  ///< "ii", "iv", "v" or "outer"
    std::string message;
    std::vector<Label> vertices;
    std::vector<Label> edges;
    int face = -1;
};

struct ValidationReport {
    ValidationMode mode = ValidationMode::Finite;
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Checks conditions (ii), (iv), (v) and, in finite mode, that exactly one
/// face is unbounded. Condition (iii) is not checked. In truncation mode only
/// frontier-free vertices and faces are inspected.
ValidationReport validate_tessellation(const MetricGraph& g, ValidationMode mode);

}  // namespace tessiso
