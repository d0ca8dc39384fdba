#include "tessiso/families.hpp"

#include "tessiso/curvature.hpp"
#include "tessiso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace tessiso {

using nlohmann::json;

namespace {

void require_pq(const PQParams& params) {
    if (params.p < 3) throw Error(ErrorCode::ParamTooSmall, "p must be at least 3");
    if (params.q && *params.q < 3) throw Error(ErrorCode::ParamTooSmall, "q must be at least 3");
    if (c_pq(params) < 0)
        throw Error(ErrorCode::NegativeCurvatureParams,
                    "1 - 2/p - 2/q < 0 for p=" + std::to_string(params.p) + ", q=" + std::to_string(*params.q));
}

// Neighbour lists in clockwise order plus the creation-ordered edge list.
struct PlaneGraph {
    std::vector<std::vector<int>> nbr;
    std::vector<std::array<int, 2>> edges;
    std::map<std::pair<int, int>, int> edge_of;

    int add_vertex() {
        nbr.emplace_back();
        return static_cast<int>(nbr.size()) - 1;
    }
    int add_edge(int u, int v) {
        edges.push_back({u, v});
        const int id = static_cast<int>(edges.size()) - 1;
        edge_of[{std::min(u, v), std::max(u, v)}] = id;
        return id;
    }
    int edge(int u, int v) const { return edge_of.at({std::min(u, v), std::max(u, v)}); }
    bool adjacent(int u, int v) const { return edge_of.count({std::min(u, v), std::max(u, v)}) != 0; }

    GraphSpec to_spec() const {
        GraphSpec spec;
        for (int v = 0; v < static_cast<int>(nbr.size()); ++v) {
            VertexSpec vs{v, {}};
            for (int w : nbr[v]) vs.rotation.push_back(edge(v, w));
            spec.vertices.push_back(std::move(vs));
        }
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
            spec.edges.push_back({e, {edges[e][0], edges[e][1]}, Rational(1)});
        return spec;
    }
};

// Grows a disc of q-gons. Boundary vertices keep their neighbours as
// [succ, interior..., pred]; the outer face runs along b -> succ(b).
class BallBuilder {
public:
    BallBuilder(int p, int q) : p_(p), q_(q) {
        for (int i = 0; i < q; ++i) g_.add_vertex();
        for (int i = 0; i < q; ++i) g_.add_edge(i, (i + 1) % q);
        succ_.resize(q);
        pred_.resize(q);
        for (int i = 0; i < q; ++i) {
            succ_[i] = (i + 1) % q;
            pred_[i] = (i + q - 1) % q;
            g_.nbr[i] = {succ_[i], pred_[i]};
        }
    }

    void close(int b) {
        while (on_boundary(b)) {
            if (degree(b) == p_)
                tile_on_edge(pred_[b]);
            else
                tile_on_edge(b);
        }
    }

    std::vector<int> boundary_cycle() const {
        int start = -1;
        for (int v = 0; v < static_cast<int>(succ_.size()); ++v)
            if (on_boundary(v)) {
                start = v;
                break;
            }
        std::vector<int> out;
        int v = start;
        do {
            out.push_back(v);
            v = succ_[v];
        } while (v != start);
        return out;
    }

    bool on_boundary(int v) const { return succ_[v] >= 0; }
    int degree(int v) const { return static_cast<int>(g_.nbr[v].size()); }
    int succ(int v) const { return succ_[v]; }
    const PlaneGraph& graph() const { return g_; }

private:
    // New tile outside the boundary edge u -> succ(u), running over every
    // saturated vertex at either end.
    void tile_on_edge(int u) {
        std::vector<int> path{u, succ_[u]};
        const int limit = static_cast<int>(succ_.size());
        while (degree(path.back()) == p_ && static_cast<int>(path.size()) <= limit) path.push_back(succ_[path.back()]);
        while (degree(path.front()) == p_ && static_cast<int>(path.size()) <= limit)
            path.insert(path.begin(), pred_[path.front()]);
        add_tile(path);
    }

    void add_tile(const std::vector<int>& w) {
        const int k = static_cast<int>(w.size()) - 1;
        const int m = q_ - k - 1;
        const int w0 = w.front();
        const int wk = w.back();
        if (m < 0 || w0 == wk || (m == 0 && g_.adjacent(w0, wk)))
            throw std::logic_error("tile layer construction got stuck");
        std::vector<int> chain{w0};
        for (int j = 0; j < m; ++j) {
            chain.push_back(g_.add_vertex());
            succ_.push_back(-1);
            pred_.push_back(-1);
        }
        chain.push_back(wk);
        for (size_t j = 0; j + 1 < chain.size(); ++j) g_.add_edge(chain[j], chain[j + 1]);
        g_.nbr[w0].insert(g_.nbr[w0].begin(), chain[1]);
        g_.nbr[wk].push_back(chain[chain.size() - 2]);
        for (size_t j = 1; j + 1 < chain.size(); ++j) g_.nbr[chain[j]] = {chain[j + 1], chain[j - 1]};
        for (int i = 1; i < k; ++i) succ_[w[i]] = pred_[w[i]] = -1;
        for (size_t j = 0; j + 1 < chain.size(); ++j) {
            succ_[chain[j]] = chain[j + 1];
            pred_[chain[j + 1]] = chain[j];
        }
    }

    int p_;
    int q_;
    PlaneGraph g_;
    std::vector<int> succ_;
    std::vector<int> pred_;
};

GraphSpec tree_ball(int p, int depth, std::vector<int>* leaves_out = nullptr) {
    PlaneGraph g;
    std::vector<int> level{g.add_vertex()};
    std::vector<int> parent{-1};
    for (int d = 0; d < depth; ++d) {
        std::vector<int> next;
        for (int v : level) {
            const int children = d == 0 ? p : p - 1;
            for (int c = 0; c < children; ++c) {
                const int w = g.add_vertex();
                parent.push_back(v);
                g.add_edge(v, w);
                g.nbr[v].push_back(w);
                g.nbr[w].push_back(v);
                next.push_back(w);
            }
        }
        level = std::move(next);
    }
    GraphSpec spec = g.to_spec();
    for (int v : level) {
        spec.frontier_vertices.push_back(v);
        spec.true_degree[v] = p;
    }
    for (const auto& e : spec.edges) {
        spec.unbounded_face_reps.push_back({e.id, e.ends[0]});
        spec.unbounded_face_reps.push_back({e.id, e.ends[1]});
    }
    if (leaves_out) *leaves_out = level;
    return spec;
}

}  // namespace

Rational c_pq(const PQParams& params) {
    Rational c = 1 - Rational(2, params.p);
    if (params.q) c -= Rational(2, *params.q);
    return c;
}

GraphSpec gen_pq_ball_spec(const PQParams& params, int radius) {
    require_pq(params);
    if (radius < 1) throw Error(ErrorCode::RadiusTooSmall, "radius must be at least 1");
    json family = {{"name", "pq"}, {"p", params.p}, {"radius", radius}, {"centre", 0}};
    if (!params.q) {
        GraphSpec spec = tree_ball(params.p, radius);
        family["q"] = "inf";
        spec.family = family;
        return spec;
    }
    const int p = params.p;
    const int q = *params.q;
    BallBuilder b(p, q);
    b.close(0);
    for (int r = 2; r <= radius; ++r)
        for (int v : b.boundary_cycle())
            if (b.on_boundary(v)) b.close(v);

    GraphSpec spec = b.graph().to_spec();
    const std::vector<int> rim = b.boundary_cycle();
    for (int v : rim) {
        spec.frontier_vertices.push_back(v);
        spec.true_degree[v] = p;
    }
    std::sort(spec.frontier_vertices.begin(), spec.frontier_vertices.end());
    family["q"] = q;
    family["outer_dart"] = {b.graph().edge(rim.front(), b.succ(rim.front())), b.succ(rim.front())};
    spec.family = family;
    return spec;
}

MetricGraph gen_pq_ball(const PQParams& params, int radius) { return build_graph(gen_pq_ball_spec(params, radius)); }

GraphSpec gen_Gk_spec(const GkParams& params) {
    const int k = params.k;
    const int R = params.rows;
    const int C = params.cols;
    const int D = params.tree_depth;
    if (k < 3) throw Error(ErrorCode::ParamTooSmall, "k must be at least 3");
    if (R < 1 || C < 1 || D < 1) throw Error(ErrorCode::ParamTooSmall, "rows, cols and tree_depth must be positive");

    const int width = 2 * C + 1;
    auto site = [&](int z, int n) { return n * width + (z + C); };
    struct Half {
        int to;
        int edge;
    };
    const int lattice = width * (R + 1);
    std::vector<std::vector<Half>> rot(lattice);
    std::vector<EdgeSpec> edges;
    std::vector<DartRef> marks;
    auto add_edge = [&](int u, int v, Rational len) {
        const int id = static_cast<int>(edges.size());
        edges.push_back({id, {u, v}, len});
        return id;
    };

    // Edge ids: horizontal rows, then vertical rungs, then trees.
    std::map<std::pair<int, int>, int> eid;
    for (int n = 0; n <= R; ++n)
        for (int z = -C; z < C; ++z) {
            const int den = 2 * n + 2;
            eid[{site(z, n), site(z + 1, n)}] = add_edge(site(z, n), site(z + 1, n), Rational(1, den * den));
        }
    for (int n = 0; n < R; ++n)
        for (int z = -C; z <= C; ++z) {
            const int den = 2 * n + 3;
            eid[{site(z, n), site(z, n + 1)}] = add_edge(site(z, n), site(z, n + 1), Rational(1, den * den));
        }
    for (int z = -C; z < C; ++z) marks.push_back({eid[{site(z, 0), site(z + 1, 0)}], site(z, 0)});

    std::vector<std::vector<int>> children(lattice);
    std::vector<int> leaves;
    for (int z = -C; z <= C; ++z) {
        std::vector<int> level{site(z, 0)};
        for (int d = 0; d < D; ++d) {
            std::vector<int> next;
            for (int v : level) {
                const int count = d == 0 ? k : k - 1;
                for (int c = 0; c < count; ++c) {
                    const int w = static_cast<int>(rot.size());
                    rot.emplace_back();
                    children.emplace_back();
                    const int e = add_edge(v, w, Rational(1));
                    rot[w].push_back({v, e});
                    children[v].push_back(e);
                    marks.push_back({e, w});
                    marks.push_back({e, v});
                    next.push_back(w);
                }
            }
            level = std::move(next);
        }
        leaves.insert(leaves.end(), level.begin(), level.end());
    }
    for (int v = lattice; v < static_cast<int>(rot.size()); ++v)
        for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) rot[v].push_back({static_cast<int>(edges[*it].ends[1]), *it});

    for (int n = 0; n <= R; ++n)
        for (int z = -C; z <= C; ++z) {
            const int v = site(z, n);
            if (n < R) rot[v].push_back({site(z, n + 1), eid[{v, site(z, n + 1)}]});
            if (z < C) rot[v].push_back({site(z + 1, n), eid[{v, site(z + 1, n)}]});
            if (n == 0)
                for (auto it = children[v].rbegin(); it != children[v].rend(); ++it)
                    rot[v].push_back({static_cast<int>(edges[*it].ends[1]), *it});
            if (n > 0) rot[v].push_back({site(z, n - 1), eid[{site(z, n - 1), v}]});
            if (z > -C) rot[v].push_back({site(z - 1, n), eid[{site(z - 1, n), v}]});
        }

    GraphSpec spec;
    for (int v = 0; v < static_cast<int>(rot.size()); ++v) {
        VertexSpec vs{v, {}};
        for (const Half& h : rot[v]) vs.rotation.push_back(h.edge);
        spec.vertices.push_back(std::move(vs));
    }
    spec.edges = std::move(edges);
    for (int n = 0; n <= R; ++n)
        for (int z = -C; z <= C; ++z)
            if (n == R || z == -C || z == C) {
                spec.frontier_vertices.push_back(site(z, n));
                spec.true_degree[site(z, n)] = n == 0 ? k + 3 : 4;
            }
    for (int v : leaves) {
        spec.frontier_vertices.push_back(v);
        spec.true_degree[v] = k;
    }
    std::sort(spec.frontier_vertices.begin(), spec.frontier_vertices.end());
    spec.unbounded_face_reps = std::move(marks);
    spec.family = {{"name", "gk"},         {"k", k},
                   {"rows", R},            {"cols", C},
                   {"tree_depth", D},      {"root_vertex", site(0, 0)}};
    return spec;
}

MetricGraph gen_Gk(const GkParams& params) { return build_graph(gen_Gk_spec(params)); }

GraphSpec gen_nonequilateral_tree_spec(int p, int depth) {
    if (p < 5) throw Error(ErrorCode::ParamTooSmall, "p must be at least 5");
    if (depth < 2) throw Error(ErrorCode::ParamTooSmall, "depth must be at least 2");
    GraphSpec spec = tree_ball(p, depth);
    spec.edges[0].length = p;
    spec.family = {{"name", "netree"}, {"p", p}, {"depth", depth}, {"hat_edge", spec.edges[0].id}};
    return spec;
}

MetricGraph gen_nonequilateral_tree(int p, int depth) { return build_graph(gen_nonequilateral_tree_spec(p, depth)); }

GraphSpec gen_wheel_spec(int n) {
    if (n < 3) throw Error(ErrorCode::ParamTooSmall, "a wheel needs at least 3 rim vertices");
    GraphSpec spec;
    auto spoke = [](int i) { return i - 1; };
    auto rim = [n](int i) { return n + i - 1; };  // rim edge i -- i+1
    auto next = [n](int i) { return i % n + 1; };
    auto prev = [n](int i) { return i == 1 ? n : i - 1; };
    VertexSpec hub{0, {}};
    for (int i = 1; i <= n; ++i) hub.rotation.push_back(spoke(i));
    spec.vertices.push_back(hub);
    for (int i = 1; i <= n; ++i) spec.vertices.push_back({i, {spoke(i), rim(prev(i)), rim(i)}});
    for (int i = 1; i <= n; ++i) spec.edges.push_back({spoke(i), {0, i}, Rational(1)});
    for (int i = 1; i <= n; ++i) spec.edges.push_back({rim(i), {i, next(i)}, Rational(1)});
    spec.unbounded_face_reps.push_back({rim(1), 2});
    spec.family = {{"name", "wheel"}, {"n", n}};
    return spec;
}

GraphSpec seal_ball(const GraphSpec& ball) {
    GraphSpec spec = ball;
    if (!ball.family.is_object() || !ball.family.contains("outer_dart"))
        throw Error(ErrorCode::NotApplicable, "ball carries no outer dart");
    spec.frontier_vertices.clear();
    spec.true_degree.clear();
    const auto& od = ball.family["outer_dart"];
    spec.unbounded_face_reps = {{od[0].get<Label>(), od[1].get<Label>()}};
    spec.family["name"] = "sealed_pq";
    return spec;
}

GraphSpec randomize_lengths(const GraphSpec& spec, unsigned seed) {
    GraphSpec out = spec;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 20);
    std::uniform_int_distribution<int> den(1, 12);
    for (auto& e : out.edges) e.length = Rational(num(rng), den(rng));
    return out;
}

GraphSpec scale_lengths(const GraphSpec& spec, const Rational& t) {
    GraphSpec out = spec;
    for (auto& e : out.edges) e.length *= t;
    return out;
}

PQClosedForms closed_forms_pq(const PQParams& params) {
    require_pq(params);
    const int p = params.p;
    PQClosedForms f;
    f.c = c_pq(params);
    f.kappa = -Rational(p, 2) * f.c;
    if (!params.q) {
        f.alpha_comb_exact = Rational(p - 2, p);
        f.alpha_exact = Rational(p - 2, p - 1);
        f.alpha_comb = to_double(*f.alpha_comb_exact);
        f.alpha = to_double(*f.alpha_exact);
        f.estpq = Rational(p - 2, p - 1);
        f.kp11_bound = Rational(p - 2, p);
        return f;
    }
    const int q = *params.q;
    const long long a = static_cast<long long>(p - 2) * (q - 2);  // >= 4 here
    const long long x = static_cast<long long>(p) * q - 2LL * (p + q);  // = a - 4
    f.alpha_comb = (p - 2.0) / p * std::sqrt(1.0 - 4.0 / static_cast<double>(a));
    if (x == 0) {
        f.alpha = 0;
        f.delta = 0;
    } else {
        f.alpha = (p - 2.0) / (p - 1.0 + p / 2.0 * (std::sqrt(static_cast<double>(a) / x) - 1.0));
        f.delta = x / 2.0 * (std::sqrt(1.0 + 4.0 / x) - 1.0);
    }
    f.estpq = q * (p - 2) * f.c / (q * (p - 1) * f.c + 1);
    f.kp11_bound = Rational(p - 2, p) * (1 - Rational(2, a - 2));
    return f;
}

Rational lower_bound_pq(const PQParams& params) {
    require_pq(params);
    const ExtRational P = params.q ? ExtRational(*params.q) : ExtRational::infinity();
    const auto K = k_constant(ExtRational(params.p), P);
    return c_pq(params) / *K;
}

double equilateral_transform(double alpha_comb) {
    if (!(alpha_comb >= 0.0 && alpha_comb <= 1.0))
        throw Error(ErrorCode::OutOfRange, "combinatorial constant must lie in [0, 1]");
    return 2.0 * alpha_comb / (alpha_comb + 1.0);
}

GkWitness gk_witness_sequence(int k, int l) {
    if (k < 3 || l < 2) throw Error(ErrorCode::ParamTooSmall, "need k >= 3 and l >= 2");
    GkWitness w;
    Integer power = 1;  // (k-1)^{l-1}
    for (int i = 0; i < l - 1; ++i) power *= (k - 1);
    w.measure = k * (power * (k - 1) - 1) / (k - 2);
    w.boundary_degree = k + 3 + k * power;
    w.exact_boundary_degree = k + k * power;
    w.ratio = Rational(w.boundary_degree, w.measure);
    w.exact_ratio = Rational(w.exact_boundary_degree, w.measure);
    return w;
}

SubgraphSelection gk_witness_subgraph(const MetricGraph& gk, int l) {
    const json& fam = gk.family();
    if (!fam.is_object() || fam.value("name", "") != "gk") throw Error(ErrorCode::NotApplicable, "not a G_k truncation");
    if (fam["tree_depth"].get<int>() < l)
        throw Error(ErrorCode::TruncationTooShallow, "trees have depth " + std::to_string(fam["tree_depth"].get<int>()) +
                                                         " < " + std::to_string(l));
    const EmbeddedGraph& emb = gk.embedding();
    const int root = *emb.vertex_index(fam["root_vertex"].get<Label>());
    std::vector<int> edges;
    std::vector<int> level{root};
    std::vector<char> seen(emb.vertex_count(), 0);
    seen[root] = 1;
    for (int d = 0; d < l; ++d) {
        std::vector<int> next;
        for (int v : level)
            for (int o : emb.out_darts(v)) {
                const int e = EmbeddedGraph::dart_edge(o);
                const int w = emb.head(o);
                if (gk.length(e) != 1 || seen[w]) continue;
                seen[w] = 1;
                edges.push_back(e);
                next.push_back(w);
            }
        level = std::move(next);
    }
    return subgraph_stats(gk, edges);
}

std::optional<FamilyFacts> family_facts(const json& family) {
    if (!family.is_object() || !family.contains("name")) return std::nullopt;
    FamilyFacts f;
    f.name = family["name"].get<std::string>();
    auto tree_facts = [&](int p) {
        f.c_star = Rational(p - 2, p);
        f.M = ExtRational(p);
        f.P = ExtRational::infinity();
        f.K = Rational(p - 1, p);
        f.ell_star = Rational(1);
        f.ell_min = Rational(1);
        f.alpha_exact = Rational(p - 2, p - 1);
        f.alpha_real = to_double(*f.alpha_exact);
        f.alpha_comb_exact = Rational(p - 2, p);
        f.alpha_comb_real = to_double(*f.alpha_comb_exact);
    };
    if (f.name == "tree") {
        tree_facts(family["p"].get<int>());
        return f;
    }
    if (f.name == "pq") {
        const int p = family["p"].get<int>();
        if (family["q"].is_string()) {
            tree_facts(p);
            return f;
        }
        const PQParams params{p, family["q"].get<int>()};
        const PQClosedForms cf = closed_forms_pq(params);
        f.c_star = cf.c;
        f.M = ExtRational(p);
        f.P = ExtRational(*params.q);
        f.K = k_constant(*f.M, *f.P);
        f.ell_star = Rational(1);
        f.ell_min = Rational(1);
        f.alpha_real = cf.alpha;
        f.alpha_comb_real = cf.alpha_comb;
        if (cf.c == 0) {
            f.alpha_exact = Rational(0);
            f.alpha_comb_exact = Rational(0);
        }
        return f;
    }
    if (f.name == "netree") {
        const int p = family["p"].get<int>();
        f.ell_star = Rational(p);
        f.ell_min = Rational(1);
        // Star-like subgraphs through the long edge have measure at most 2 #E,
        // so α_S is at least half of α of the equilateral tree.
        f.alpha_S_lower = Rational(p - 2, 2 * (p - 1));
        return f;
    }
    if (f.name == "gk") {
        const int k = family["k"].get<int>();
        f.c_star = Rational(k - 2, k);
        f.M = ExtRational(Rational(18 * k + 11, 2));
        f.P = ExtRational::infinity();
        f.K = Rational(18 * k + 9, 18 * k + 11);
        f.ell_star = Rational(1);
        f.alpha_upper = Rational(k - 2, k - 1);
        f.alpha_comb_exact = Rational(0);
        f.alpha_comb_real = 0.0;
        return f;
    }
    if (f.name == "wheel" || f.name == "sealed_pq") {
        f.infinite = false;
        return f;
    }
    return std::nullopt;
}

}  // namespace tessiso
