#include "tessiso/curvature.hpp"

#include "tessiso/errors.hpp"

#include <algorithm>

namespace tessiso {

namespace {

std::string vlabel(const MetricGraph& g, int v) { return std::to_string(g.embedding().vertex_label(v)); }

bool has_unbounded_side(const MetricGraph& g) {
    for (int d = 0; d < g.embedding().dart_count(); ++d)
        if (g.side(d) == SideKind::Unbounded) return true;
    return false;
}

Rational min_incident_length(const MetricGraph& g, int v) {
    const EmbeddedGraph& emb = g.embedding();
    Rational best = g.length(EmbeddedGraph::dart_edge(emb.out_darts(v).front()));
    for (int d : emb.out_darts(v)) best = std::min(best, g.length(EmbeddedGraph::dart_edge(d)));
    return best;
}

}  // namespace

Rational vertex_weight(const MetricGraph& g, int v) {
    const EmbeddedGraph& emb = g.embedding();
    if (emb.is_frontier(v)) throw Error(ErrorCode::FrontierContact, "weight of frontier vertex " + vlabel(g, v));
    Rational m = 0;
    for (int d : emb.out_darts(v)) m += g.length(EmbeddedGraph::dart_edge(d));
    return m;
}

std::optional<Rational> characteristic_value(const MetricGraph& g, int e) {
    const EmbeddedGraph& emb = g.embedding();
    const auto& ends = emb.ends(e);
    if (emb.is_frontier(ends[0]) || emb.is_frontier(ends[1])) return std::nullopt;
    const SideKind left = g.side(2 * e);
    const SideKind right = g.side(2 * e + 1);
    if (left == SideKind::Indeterminate || right == SideKind::Indeterminate) return std::nullopt;

    Rational c = 1 / g.length(e);
    c -= 1 / vertex_weight(g, ends[0]);
    c -= 1 / vertex_weight(g, ends[1]);
    const int f_left = g.dart_face(2 * e);
    const int f_right = g.dart_face(2 * e + 1);
    if (left == SideKind::Bounded) c -= g.tile(f_left).perimeter->reciprocal();
    // A tile bordering e from both sides is still a single tile.
    if (right == SideKind::Bounded && !(left == SideKind::Bounded && f_left == f_right))
        c -= g.tile(f_right).perimeter->reciprocal();
    return c;
}

Rational vertex_curvature(const MetricGraph& g, int v) {
    const EmbeddedGraph& emb = g.embedding();
    if (emb.is_frontier(v)) throw Error(ErrorCode::FrontierContact, "curvature of frontier vertex " + vlabel(g, v));
    Rational k = 1 - Rational(emb.degree(v), 2);
    for (int o : emb.out_darts(v)) {
        // Corner between o and its rotational successor.
        const int d = EmbeddedGraph::twin(o);
        switch (g.side(d)) {
            case SideKind::Bounded: k += Rational(1, g.tile(g.dart_face(d)).degree); break;
            case SideKind::Unbounded: break;
            case SideKind::Indeterminate:
                throw Error(ErrorCode::FrontierContact, "corner at vertex " + vlabel(g, v) + " has unknown tile");
        }
    }
    return k;
}

std::optional<Rational> k_constant(const ExtRational& M, const ExtRational& P) {
    if (M <= ExtRational(2) || P == ExtRational(0)) return std::nullopt;
    Rational k = 1 - M.reciprocal() - 2 * P.reciprocal();
    if (P.is_finite()) k -= 1 / ((M.value() - 2) * P.value());
    return k;
}

CurvatureReport global_constants(const MetricGraph& g) {
    const EmbeddedGraph& emb = g.embedding();
    CurvatureReport r;
    r.observed = !g.is_finite();

    r.vertex_weight.resize(emb.vertex_count());
    r.vertex_curvature.resize(emb.vertex_count());
    Rational M = 0;
    for (int v = 0; v < emb.vertex_count(); ++v) {
        if (auto td = emb.true_degree(v)) r.deg_star = std::max(r.deg_star, *td);
        if (emb.is_frontier(v)) continue;
        ++r.known_vertices;
        r.vertex_weight[v] = vertex_weight(g, v);
        if (emb.degree(v) > 0) M = std::max(M, Rational(*r.vertex_weight[v] / min_incident_length(g, v)));
        try {
            r.vertex_curvature[v] = vertex_curvature(g, v);
            for (int o : emb.out_darts(v))
                if (g.side(EmbeddedGraph::twin(o)) == SideKind::Unbounded) r.kappa_uses_unbounded = true;
        } catch (const Error&) {
        }
    }
    if (r.known_vertices == 0) throw Error(ErrorCode::EmptyFrontierFreeRegion, "every vertex is a frontier vertex");
    r.M = M;

    const bool unbounded = has_unbounded_side(g);
    Rational P = 0;
    int dT = 0;
    r.tile_perimeter.resize(g.tiles().size());
    for (size_t f = 0; f < g.tiles().size(); ++f) {
        const Tile& t = g.tile(static_cast<int>(f));
        r.tile_perimeter[f] = t.perimeter;
        if (t.status != TileStatus::Bounded) continue;
        ++r.known_tiles;
        Rational shortest = g.length(t.edge_set.front());
        for (int e : t.edge_set) shortest = std::min(shortest, g.length(e));
        P = std::max(P, Rational(t.perimeter->value() / shortest));
        dT = std::max(dT, t.degree);
    }
    r.P = unbounded ? ExtRational::infinity() : ExtRational(P);
    r.dT_star = unbounded ? ExtRational::infinity() : ExtRational(dT);
    r.K = k_constant(r.M, r.P);

    r.char_value.resize(emb.edge_count());
    Rational ls = g.length(0);
    r.ell_min = g.length(0);
    for (int e = 0; e < emb.edge_count(); ++e) {
        ls = std::max(ls, g.length(e));
        r.ell_min = std::min(r.ell_min, g.length(e));
        r.char_value[e] = characteristic_value(g, e);
        if (!r.char_value[e]) continue;
        ++r.known_edges;
        if (!r.c_star || *r.char_value[e] < *r.c_star) r.c_star = r.char_value[e];
    }
    r.ell_star = ls;
    return r;
}

GaussBonnetResult gauss_bonnet_check(const MetricGraph& g) {
    if (!g.is_finite()) throw Error(ErrorCode::NotFiniteTessellation, "graph has frontier vertices");
    const ValidationReport vr = validate_tessellation(g, ValidationMode::Finite);
    if (!vr.valid())
        throw Error(ErrorCode::NotFiniteTessellation,
                    "condition (" + vr.violations.front().condition + ") fails: " + vr.violations.front().message);
    GaussBonnetResult out;
    for (int e = 0; e < g.edge_count(); ++e) out.sum -= *characteristic_value(g, e) * g.length(e);
    out.holds = out.sum == 1;
    return out;
}

DegsumResult degsum_check(const MetricGraph& g, const CurvatureReport& report, const SubgraphSelection& s) {
    const Classification cls = classify_subgraph(g, s);
    if (!cls.star_like || !cls.complete) throw Error(ErrorCode::NotStarLikeComplete, "selection is not star-like and complete");
    DegsumResult out;
    for (int e : s.edges) {
        const auto& c = report.char_value[e];
        if (!c) throw Error(ErrorCode::FrontierContact, "characteristic value unknown on a selected edge");
        out.lhs += *c * g.length(e);
    }
    out.rhs = s.boundary_degree;

    std::vector<char> interior(g.edge_count(), 0);
    for (int e : s.interior_edges) interior[e] = 1;
    auto tile_inside = [&](int f) {
        const Tile& t = g.tile(f);
        if (t.status != TileStatus::Bounded) return false;
        return std::all_of(t.edge_set.begin(), t.edge_set.end(), [&](int e) { return interior[e] != 0; });
    };
    long long crossing = 0;
    for (int e : s.interior_edges) {
        const int a = g.dart_face(2 * e);
        const int b = g.dart_face(2 * e + 1);
        if (!tile_inside(a)) ++crossing;
        if (b != a && !tile_inside(b)) ++crossing;
    }
    out.tech_rhs = Rational(s.boundary_degree) * (1 - report.M.reciprocal() - 2 * report.P.reciprocal()) -
                   report.P.reciprocal() * crossing;
    out.holds = out.lhs <= out.rhs && out.lhs <= out.tech_rhs;
    return out;
}

std::vector<InequalityCheck> curvature_inequalities(const CurvatureReport& r) {
    std::vector<InequalityCheck> out;
    const ExtRational deg_star(r.deg_star);

    InequalityCheck est1{"c_star_upper", false, true, "", "", ""};
    if (r.c_star && r.deg_star > 0 && r.dT_star > ExtRational(0)) {
        const Rational rhs = (1 - deg_star.reciprocal() * 2 - r.dT_star.reciprocal() * 2) * r.ell_star.reciprocal();
        est1.applicable = true;
        est1.lhs = to_string(*r.c_star);
        est1.rhs = to_string(rhs);
        est1.holds = *r.c_star <= rhs;
    }
    out.push_back(est1);

    InequalityCheck mdeg{"M_ge_deg_ge_3", true, r.M >= deg_star && r.deg_star >= 3, to_string(r.M),
                         std::to_string(r.deg_star), ""};
    out.push_back(mdeg);
    InequalityCheck pdt{"P_ge_dT_ge_3", r.dT_star > ExtRational(0), r.P >= r.dT_star && r.dT_star >= ExtRational(3), to_string(r.P),
                        to_string(r.dT_star), ""};
    out.push_back(pdt);

    InequalityCheck kle1{"K_le_1", r.K.has_value(), true, r.K ? to_string(*r.K) : "", "1/1", ""};
    if (r.K) kle1.holds = *r.K <= 1;
    out.push_back(kle1);

    InequalityCheck kpos{"K_pos_if_c_star_pos", r.K && r.c_star && *r.c_star > 0, true, r.K ? to_string(*r.K) : "",
                         "0/1", ""};
    if (kpos.applicable) kpos.holds = *r.K > 0;
    out.push_back(kpos);

    InequalityCheck fund{"c_star_over_K_upper", false, true, "", "", ""};
    if (r.K && r.c_star && *r.c_star > 0 && *r.K > 0 && r.deg_star > 1) {
        const Rational lhs = *r.c_star / *r.K;
        const Rational rhs = Rational(r.deg_star - 2, r.deg_star - 1) * r.ell_star.reciprocal();
        fund.applicable = true;
        fund.lhs = to_string(lhs);
        fund.rhs = to_string(rhs);
        fund.holds = lhs <= rhs;
    }
    out.push_back(fund);

    if (r.observed)
        for (auto& c : out) c.note = "observed";
    return out;
}

}  // namespace tessiso
