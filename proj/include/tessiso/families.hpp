#pragma once

#include "tessiso/graph.hpp"
#include "tessiso/subgraph.hpp"

#include <optional>

namespace tessiso {

/// q empty means q = ∞.
struct PQParams {
    int p = 3;
    std::optional<int> q;
};

struct GkParams {
    int k = 3;
    int rows = 2;
    int cols = 2;
    int tree_depth = 2;
};

Rational c_pq(const PQParams& params);

/// Tile-layer ball around a central vertex: radius 1 is the closed star of
/// the centre, each further layer closes every vertex of the previous
/// boundary. Vertices and edges are numbered in creation order, so the
/// radius-r ball is an index prefix of the radius-(r+1) ball. For q = ∞ this
/// is the p-regular tree ball of the given depth.
/// Throws NegativeCurvatureParams, RadiusTooSmall or ParamTooSmall.
GraphSpec gen_pq_ball_spec(const PQParams& params, int radius);
MetricGraph gen_pq_ball(const PQParams& params, int radius);

/// Half-plane lattice with k-ary trees hanging from row 0.
/// Throws ParamTooSmall for k < 3 or non-positive extents.
GraphSpec gen_Gk_spec(const GkParams& params);
MetricGraph gen_Gk(const GkParams& params);

/// p-regular tree ball with one edge at the root stretched to length p.
/// Throws ParamTooSmall for p < 5 or depth < 2.
GraphSpec gen_nonequilateral_tree_spec(int p, int depth);
MetricGraph gen_nonequilateral_tree(int p, int depth);

/// Wheel with hub 0 and rim 1..n (n = 3 is planar K4).
GraphSpec gen_wheel_spec(int n);

/// Turns a generated (p,q) ball into a finite graph: drops the frontier and
/// declares the outer face unbounded.
GraphSpec seal_ball(const GraphSpec& ball);

/// Replaces every length by a random rational a/b, 1 <= a <= 20, 1 <= b <= 12.
GraphSpec randomize_lengths(const GraphSpec& spec, unsigned seed);
GraphSpec scale_lengths(const GraphSpec& spec, const Rational& t);

struct PQClosedForms {
    Rational c;
    Rational kappa;
    double alpha_comb = 0;
    double alpha = 0;
    Rational estpq;
    std::optional<double> delta;  ///< q finite only
    Rational kp11_bound;
    /// Exact values where they are rational: α_comb and α for q = ∞.
    std::optional<Rational> alpha_comb_exact;
    std::optional<Rational> alpha_exact;
};

/// Throws NegativeCurvatureParams when c_{p,q} < 0, ParamTooSmall when p or q < 3.
PQClosedForms closed_forms_pq(const PQParams& params);

/// c*/K with M = p, P = q.
Rational lower_bound_pq(const PQParams& params);

double equilateral_transform(double alpha_comb);

struct GkWitness {
    Integer measure;
    Integer boundary_degree;  ///< k + 3 + k(k-1)^{l-1}
    Rational ratio;
    /// The tree part boundary without the three lattice edges at the root.
    Integer exact_boundary_degree;
    Rational exact_ratio;
};

/// Throws ParamTooSmall for k < 3 or l < 2.
GkWitness gk_witness_sequence(int k, int l);

/// The depth-l tree below the root vertex of a generated G_k truncation.
/// Throws TruncationTooShallow when the trees are shallower than l.
SubgraphSelection gk_witness_subgraph(const MetricGraph& gk, int l);

/// Constants the family metadata lets us state without enumeration.
struct FamilyFacts {
    std::string name;
    std::optional<Rational> c_star;
    std::optional<ExtRational> M;
    std::optional<ExtRational> P;
    std::optional<Rational> K;
    std::optional<Rational> ell_star;
    std::optional<Rational> ell_min;
    /// Certified lower bound on the infimum over star-like complete subgraphs.
    std::optional<Rational> alpha_S_lower;
    std::optional<Rational> alpha_upper;
    std::optional<Rational> alpha_exact;
    std::optional<double> alpha_real;
    std::optional<Rational> alpha_comb_exact;
    std::optional<double> alpha_comb_real;
    std::optional<Rational> alpha_comb_upper;
    bool infinite = true;
};

std::optional<FamilyFacts> family_facts(const nlohmann::json& family);

}  // namespace tessiso
