#include "tessiso/errors.hpp"
#include "tessiso/families.hpp"
#include "tessiso/subgraph.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace tessiso;

namespace {

std::set<int> tile_vertices(const MetricGraph& g, const Tile& t) {
    std::set<int> out;
    for (int d : t.face_cycle) out.insert(g.embedding().tail(d));
    return out;
}

// Vertices of all tiles meeting `core`: the next ℓ∞ shell in a square lattice.
std::set<int> grow(const MetricGraph& g, const std::set<int>& core) {
    std::set<int> out = core;
    for (const Tile& t : g.tiles()) {
        const auto vs = tile_vertices(g, t);
        bool touches = false;
        for (int v : vs) touches = touches || core.count(v);
        if (touches) out.insert(vs.begin(), vs.end());
    }
    return out;
}

std::vector<int> all_edges_touching(const MetricGraph& g, const std::set<int>& vs) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (vs.count(g.embedding().ends(e)[0]) || vs.count(g.embedding().ends(e)[1])) out.push_back(e);
    return out;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::MissingAnalysis;
}

}  // namespace

TEST(Stats, UnitSquareAndStar) {
    const MetricGraph g = gen_pq_ball({4, 4}, 2);
    const Tile* square = nullptr;
    for (const Tile& t : g.tiles())
        if (t.status == TileStatus::Bounded) square = &t;
    ASSERT_TRUE(square);
    const SubgraphSelection s = subgraph_stats(g, square->edge_set);
    EXPECT_EQ(s.boundary.size(), 4u);
    EXPECT_EQ(s.boundary_degree, 8);
    EXPECT_EQ(s.measure, 4);
    EXPECT_TRUE(s.interior_vertices.empty());
    EXPECT_FALSE(classify_subgraph(g, s).star_like);

    const int centre = 0;
    const SubgraphSelection star = star_union(g, std::vector<int>{centre});
    EXPECT_EQ(star.edges.size(), 4u);
    EXPECT_EQ(star.interior_vertices, std::vector<int>{centre});
    EXPECT_EQ(star.boundary_degree, 4);
    const Classification c = classify_subgraph(g, star);
    EXPECT_TRUE(c.star_like && c.complete);
}

TEST(Stats, Errors) {
    const MetricGraph g = gen_pq_ball({4, 4}, 2);
    EXPECT_EQ(code_of([&] { subgraph_stats(g, std::vector<int>{}); }), ErrorCode::OutOfRange);
    // Edge 0 touches the centre, the last edge lies on the rim.
    const int far = g.edge_count() - 1;
    EXPECT_EQ(code_of([&] { subgraph_stats(g, std::vector<int>{0, far}); }), ErrorCode::DisconnectedSelection);
    int frontier = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.embedding().is_frontier(v)) frontier = v;
    EXPECT_EQ(code_of([&] { star_union(g, std::vector<int>{frontier}); }), ErrorCode::FrontierContact);

    GraphSpec s = gen_pq_ball_spec({4, 4}, 2);
    s.true_degree.clear();
    const MetricGraph h = build_graph(s);
    EXPECT_EQ(code_of([&] { subgraph_stats(h, std::vector<int>{far}); }), ErrorCode::FrontierContact);
}

TEST(Closure, RingAroundBlockIsFilled) {
    const MetricGraph g = gen_pq_ball({4, 4}, 3);
    const std::set<int> b1 = grow(g, {0});
    const std::set<int> b2 = grow(g, b1);
    ASSERT_EQ(b1.size(), 9u);
    ASSERT_EQ(b2.size(), 25u);
    std::vector<int> ring;
    for (int v : b2)
        if (!b1.count(v)) ring.push_back(v);
    ASSERT_EQ(ring.size(), 16u);

    const SubgraphSelection s = star_union(g, ring);
    EXPECT_EQ(s.interior_vertices.size(), 16u);
    EXPECT_EQ(s.interior_edges.size(), 16u);
    const Classification before = classify_subgraph(g, s);
    EXPECT_TRUE(before.star_like);
    EXPECT_FALSE(before.complete);
    const InteriorFaces faces = interior_faces(g, s);
    ASSERT_EQ(faces.bounded.size(), 1u);
    EXPECT_EQ(faces.bounded[0].size(), 16u);
    EXPECT_EQ(faces.enclosed_vertices.size(), 9u);

    const SubgraphSelection closed = complete_closure(g, s);
    // Stars of all 25 block vertices: 40 block edges and 20 leaving it.
    EXPECT_EQ(closed.edges, all_edges_touching(g, b2));
    EXPECT_EQ(closed.edges.size(), 60u);
    const Classification after = classify_subgraph(g, closed);
    EXPECT_TRUE(after.star_like && after.complete);
    EXPECT_EQ(complete_closure(g, closed).edges, closed.edges);
}

TEST(Closure, SquareCornersAlreadyComplete) {
    const MetricGraph g = gen_pq_ball({4, 4}, 3);
    const Tile* inner = nullptr;
    for (const Tile& t : g.tiles())
        if (t.status == TileStatus::Bounded && tile_vertices(g, t).count(0)) inner = &t;
    ASSERT_TRUE(inner);
    const auto corners = tile_vertices(g, *inner);
    const SubgraphSelection s = star_union(g, std::vector<int>(corners.begin(), corners.end()));
    EXPECT_EQ(s.edges.size(), 12u);
    EXPECT_EQ(s.interior_edges.size(), 4u);
    const InteriorFaces faces = interior_faces(g, s);
    ASSERT_EQ(faces.bounded.size(), 1u);
    EXPECT_EQ(faces.bounded[0].size(), 1u);
    EXPECT_TRUE(faces.enclosed_vertices.empty());
    EXPECT_EQ(complete_closure(g, s).edges, s.edges);
}

TEST(Closure, RejectsNonStarLike) {
    const MetricGraph g = gen_pq_ball({4, 4}, 2);
    const SubgraphSelection s = subgraph_stats(g, std::vector<int>{0});
    EXPECT_EQ(code_of([&] { complete_closure(g, s); }), ErrorCode::NotStarLikeComplete);
}

TEST(Closure, RingAroundCentre) {
    // Stars of the 8 neighbours in the 3x3 block already contain the centre's star.
    const MetricGraph g = gen_pq_ball({4, 4}, 2);
    const std::set<int> b1 = grow(g, {0});
    std::vector<int> ring;
    for (int v : b1)
        if (v != 0) ring.push_back(v);
    const SubgraphSelection s = star_union(g, ring);
    const SubgraphSelection closed = complete_closure(g, s);
    EXPECT_EQ(closed.edges, all_edges_touching(g, b1));
}

TEST(Classify, TreeUnionsAreComplete) {
    const MetricGraph g = gen_pq_ball({3, std::nullopt}, 3);
    const SubgraphSelection s = star_union(g, std::vector<int>{0, 1});
    const Classification c = classify_subgraph(g, s);
    EXPECT_TRUE(c.star_like && c.complete);
    EXPECT_EQ(s.edges.size(), 5u);
    EXPECT_EQ(s.boundary_degree, 4);
}
