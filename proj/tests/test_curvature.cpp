#include "tessiso/curvature.hpp"
#include "tessiso/errors.hpp"
#include "tessiso/families.hpp"
#include "tessiso/isoperimetry.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace tessiso;

namespace {

// c(e) recomputed from the raw spec of a finite graph: stars from edge ends,
// tiles from the traced face cycles.
std::vector<Rational> oracle_c(const MetricGraph& g) {
    const auto& emb = g.embedding();
    std::vector<Rational> m(g.vertex_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e)
        for (int v : emb.ends(e)) m[v] += g.length(e);
    std::vector<Rational> c(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        c[e] = 1 / g.length(e) - 1 / m[emb.ends(e)[0]] - 1 / m[emb.ends(e)[1]];
        std::set<int> faces{g.dart_face(2 * e), g.dart_face(2 * e + 1)};
        for (int f : faces) {
            const Tile& t = g.tile(f);
            if (t.status != TileStatus::Bounded) continue;
            Rational p = 0;
            for (int x : t.edge_set) p += g.length(x);
            c[e] -= 1 / p;
        }
    }
    return c;
}

std::vector<GraphSpec> finite_corpus() {
    return {gen_wheel_spec(3), gen_wheel_spec(4), gen_wheel_spec(5), gen_wheel_spec(6),
            seal_ball(gen_pq_ball_spec({6, 3}, 2))};
}

}  // namespace

TEST(Curvature, K4Values) {
    const MetricGraph g = build_graph(gen_wheel_spec(3));
    for (int e = 0; e < 3; ++e) EXPECT_EQ(*characteristic_value(g, e), Rational(-1, 3));
    for (int e = 3; e < 6; ++e) EXPECT_EQ(*characteristic_value(g, e), 0);
    EXPECT_EQ(vertex_weight(g, 0), 3);
    EXPECT_EQ(vertex_curvature(g, 0), Rational(1, 2));
    EXPECT_EQ(vertex_curvature(g, 1), Rational(1, 6));
}

TEST(Curvature, GaussBonnetCorpus) {
    for (const GraphSpec& base : finite_corpus()) {
        for (unsigned seed : {0u, 1u, 2u, 3u}) {
            const GraphSpec s = seed == 0 ? base : randomize_lengths(base, seed);
            const MetricGraph g = build_graph(s);
            const auto c = oracle_c(g);
            Rational sum = 0;
            for (int e = 0; e < g.edge_count(); ++e) {
                EXPECT_EQ(*characteristic_value(g, e), c[e]);
                sum -= c[e] * g.length(e);
            }
            EXPECT_EQ(sum, 1);
            const GaussBonnetResult r = gauss_bonnet_check(g);
            EXPECT_TRUE(r.holds);
            EXPECT_EQ(r.sum, 1);
        }
    }
}

TEST(Curvature, GaussBonnetRejectsTruncation) {
    const MetricGraph g = gen_pq_ball({4, 4}, 2);
    try {
        gauss_bonnet_check(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotFiniteTessellation);
    }
}

TEST(Curvature, CombinatorialGaussBonnet) {
    // Σ κ(v) = 1 on finite tessellations with the outer corners counted as 0.
    for (const GraphSpec& s : finite_corpus()) {
        const MetricGraph g = build_graph(s);
        Rational sum = 0;
        for (int v = 0; v < g.vertex_count(); ++v) sum += vertex_curvature(g, v);
        EXPECT_EQ(sum, 1);
    }
}

TEST(Curvature, ZeroOnEuclideanLattices) {
    for (auto [p, q] : {std::pair{4, 4}, {3, 6}, {6, 3}}) {
        const MetricGraph g = gen_pq_ball({p, q}, 3);
        const CurvatureReport r = global_constants(g);
        int known = 0;
        for (int e = 0; e < g.edge_count(); ++e)
            if (r.char_value[e]) {
                ++known;
                EXPECT_EQ(*r.char_value[e], 0);
            }
        EXPECT_GT(known, 0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (r.vertex_curvature[v]) EXPECT_EQ(*r.vertex_curvature[v], 0);
        EXPECT_EQ(*r.c_star, 0);
    }
}

TEST(Curvature, FrontierValuesUnknown) {
    const MetricGraph g = gen_pq_ball({4, 4}, 2);
    int frontier = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.embedding().is_frontier(v)) frontier = v;
    EXPECT_THROW(vertex_weight(g, frontier), Error);
    EXPECT_THROW(vertex_curvature(g, frontier), Error);
    const int rim_edge = g.edge_count() - 1;
    EXPECT_FALSE(characteristic_value(g, rim_edge));
}

TEST(Constants, KFormula) {
    for (int M = 3; M <= 9; ++M)
        for (int P = 3; P <= 9; ++P) {
            const Rational m(M), p(P);
            EXPECT_EQ(*k_constant(ExtRational(m), ExtRational(p)), 1 - 1 / m - 2 / p - 1 / ((m - 2) * p));
        }
    EXPECT_EQ(*k_constant(ExtRational(5), ExtRational::infinity()), Rational(4, 5));
    EXPECT_FALSE(k_constant(ExtRational(2), ExtRational(4)));
}

TEST(Constants, ScalingCovariance) {
    for (const GraphSpec& base : {randomize_lengths(gen_wheel_spec(5), 9), randomize_lengths(gen_pq_ball_spec({3, 7}, 2), 4),
                                  seal_ball(gen_pq_ball_spec({6, 3}, 2))}) {
        const MetricGraph g = build_graph(base);
        const CurvatureReport r = global_constants(g);
        for (const Rational& t : {Rational(1, 3), Rational(2), Rational(7, 5)}) {
            const MetricGraph h = build_graph(scale_lengths(base, t));
            const CurvatureReport s = global_constants(h);
            for (int e = 0; e < g.edge_count(); ++e) {
                ASSERT_EQ(r.char_value[e].has_value(), s.char_value[e].has_value());
                if (r.char_value[e]) EXPECT_EQ(*s.char_value[e], *r.char_value[e] / t);
            }
            for (int v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(r.vertex_curvature[v], s.vertex_curvature[v]);
            EXPECT_EQ(r.M, s.M);
            EXPECT_EQ(r.P, s.P);
            EXPECT_EQ(r.K, s.K);
            EXPECT_EQ(*s.c_star, *r.c_star / t);
        }
    }
}

TEST(Constants, InequalitiesOnFamilies) {
    const std::vector<MetricGraph> graphs = {gen_pq_ball({4, 5}, 3), gen_pq_ball({3, 7}, 3),
                                             gen_pq_ball({3, std::nullopt}, 3), gen_Gk({3, 2, 2, 3}),
                                             build_graph(gen_wheel_spec(5))};
    for (const MetricGraph& g : graphs) {
        const CurvatureReport r = global_constants(g);
        for (const InequalityCheck& c : curvature_inequalities(r))
            if (c.applicable) EXPECT_TRUE(c.holds) << c.name << ": " << c.lhs << " vs " << c.rhs;
    }
}

TEST(Constants, PQBallMatchesParameters) {
    const CurvatureReport r = global_constants(gen_pq_ball({5, 4}, 3));
    EXPECT_EQ(r.M, ExtRational(5));
    EXPECT_EQ(r.P, ExtRational(4));
    EXPECT_EQ(*r.c_star, c_pq({5, 4}));
    EXPECT_TRUE(r.observed);
}

TEST(Degsum, StarlikeSubgraphsSatisfyBoth) {
    for (const MetricGraph& g : {gen_pq_ball({4, 4}, 3), gen_pq_ball({3, 7}, 3), gen_Gk({3, 2, 2, 3})}) {
        const CurvatureReport r = global_constants(g);
        Budget b;
        b.max_generators = 4;
        int checked = 0;
        for (const SubgraphSelection& s : enumerate_starlike_complete(g, b).subgraphs) {
            try {
                const DegsumResult d = degsum_check(g, r, s);
                EXPECT_LE(d.lhs, d.rhs);
                EXPECT_LE(d.lhs, d.tech_rhs);
                EXPECT_TRUE(d.holds);
                ++checked;
            } catch (const Error& e) {
                EXPECT_EQ(e.code(), ErrorCode::FrontierContact);
            }
        }
        EXPECT_GT(checked, 0);
    }
}

TEST(Degsum, LatticeStarValues) {
    // One star in the square lattice: c = 0 so lhs = 0; four leaves give deg(∂S) = 4.
    const MetricGraph g = gen_pq_ball({4, 4}, 3);
    const CurvatureReport r = global_constants(g);
    const DegsumResult d = degsum_check(g, r, star_union(g, std::vector<int>{0}));
    EXPECT_EQ(d.lhs, 0);
    EXPECT_EQ(d.rhs, 4);
}
