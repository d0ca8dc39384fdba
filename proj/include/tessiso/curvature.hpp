#pragma once

#include "tessiso/graph.hpp"
#include "tessiso/subgraph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tessiso {

/// m(v), the total length of the star. Throws FrontierContact on frontier vertices.
Rational vertex_weight(const MetricGraph& g, int v);

/// c(e); empty when a vertex weight or a perimeter it needs is not known.
std::optional<Rational> characteristic_value(const MetricGraph& g, int e);

/// κ(v) = 1 - deg/2 + Σ 1/d_T, with unbounded corners contributing 0.
/// Throws FrontierContact for frontier vertices or indeterminate corners.
Rational vertex_curvature(const MetricGraph& g, int v);

struct CurvatureReport {
    std::vector<std::optional<Rational>> vertex_weight;
    std::vector<std::optional<ExtRational>> tile_perimeter;
    std::vector<std::optional<Rational>> char_value;
    std::vector<std::optional<Rational>> vertex_curvature;

    ExtRational ell_star;
    Rational ell_min;
    std::optional<Rational> c_star;  ///< over edges with known c
    ExtRational M;
    ExtRational P;
    std::optional<Rational> K;  ///< empty when M <= 2
    int deg_star = 0;
    ExtRational dT_star;

    /// Set when the graph has a frontier: suprema and infima are then taken
    /// over the known part only.
    bool observed = false;
    int known_edges = 0;
    int known_vertices = 0;
    int known_tiles = 0;
    /// Some κ(v) used the 1/d_T = 0 convention for an unbounded corner.
    bool kappa_uses_unbounded = false;
};

/// K from M and P; empty when M <= 2 or no tile is known.
std::optional<Rational> k_constant(const ExtRational& M, const ExtRational& P);

/// Throws EmptyFrontierFreeRegion when no vertex is frontier-free.
CurvatureReport global_constants(const MetricGraph& g);

struct GaussBonnetResult {
    Rational sum;  ///< Σ -c(e)|e|
    bool holds = false;
};

/// Throws NotFiniteTessellation unless g is frontier-free and passes finite validation.
GaussBonnetResult gauss_bonnet_check(const MetricGraph& g);

struct DegsumResult {
    Rational lhs;       ///< Σ_{e∈S} c(e)|e|
    Rational rhs;       ///< deg(∂S)
    Rational tech_rhs;  ///< refined right side using M and P
    bool holds = false;  ///< lhs <= rhs and lhs <= tech_rhs
};

/// Throws NotStarLikeComplete, or FrontierContact when some c(e) on S is unknown.
DegsumResult degsum_check(const MetricGraph& g, const CurvatureReport& report, const SubgraphSelection& s);

struct InequalityCheck {
    std::string name;
    bool applicable = false;
    bool holds = true;
    std::string lhs;
    std::string rhs;
    std::string note;
};

/// The pointwise inequalities between c*, ℓ*, deg*, d_T*, M, P and K.
std::vector<InequalityCheck> curvature_inequalities(const CurvatureReport& r);

}  // namespace tessiso
