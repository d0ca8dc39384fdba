#include "tessiso/isoperimetry.hpp"

#include "tessiso/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

namespace tessiso {

namespace {

constexpr double kTolerance = 1e-12;

__int128 to_int128(const Integer& x) {
    static const Integer limit = Integer(1) << 120;
    if (x < 0 || x >= limit) throw Error(ErrorCode::NotApplicable, "edge lengths too fine for exact enumeration");
    const Integer mask = (Integer(1) << 64) - 1;
    const auto lo = static_cast<unsigned long long>(x & mask);
    const auto hi = static_cast<unsigned long long>(x >> 64);
    return (static_cast<__int128>(hi) << 64) | lo;
}

Integer from_int128(__int128 x) {
    const auto hi = static_cast<unsigned long long>(static_cast<unsigned __int128>(x) >> 64);
    const auto lo = static_cast<unsigned long long>(x);
    return (Integer(hi) << 64) | Integer(lo);
}

// Generic ESU over an undirected adjacency. Hooks supply add/remove/visit.
// Every connected node set of size <= max_size whose nodes are all allowed is
// visited exactly once, rooted at its minimum node.
template <class Hooks>
class Esu {
public:
    Esu(const std::vector<std::vector<int>>& adj, const std::vector<char>& allowed, int max_size, Hooks& hooks)
        : adj_(adj), allowed_(allowed), max_size_(max_size), cover_(adj.size(), 0), hooks_(hooks) {}

    void run_root(int root) {
        if (!allowed_[root]) return;
        std::vector<int> ext;
        for (int u : adj_[root])
            if (u > root && allowed_[u]) ext.push_back(u);
        add(root);
        extend(ext, root);
        remove(root);
    }

private:
    void add(int w) {
        sub_.push_back(w);
        ++cover_[w];
        for (int u : adj_[w]) ++cover_[u];
        hooks_.add(w);
    }
    void remove(int w) {
        hooks_.remove(w);
        for (int u : adj_[w]) --cover_[u];
        --cover_[w];
        sub_.pop_back();
    }
    void extend(std::vector<int>& ext, int root) {
        hooks_.visit(sub_);
        if (static_cast<int>(sub_.size()) == max_size_) return;
        while (!ext.empty()) {
            const int w = ext.back();
            ext.pop_back();
            std::vector<int> next = ext;
            for (int u : adj_[w])
                if (u > root && allowed_[u] && cover_[u] == 0) next.push_back(u);
            add(w);
            extend(next, root);
            remove(w);
        }
    }

    const std::vector<std::vector<int>>& adj_;
    const std::vector<char>& allowed_;
    int max_size_;
    std::vector<int> cover_;
    std::vector<int> sub_;
    Hooks& hooks_;
};

struct YieldBudget {
    std::atomic<long long> count{0};
    std::atomic<bool> stop{false};
    long long cap;
    explicit YieldBudget(long long c) : cap(c) {}
    void tick() {
        if (stop.load(std::memory_order_relaxed)) throw std::runtime_error("stopped");
        if (count.fetch_add(1, std::memory_order_relaxed) + 1 > cap) {
            stop = true;
            throw Error(ErrorCode::BudgetExceeded, "enumeration exceeded " + std::to_string(cap) + " subsets");
        }
    }
};

// Runs one job per worker, with roots dealt round-robin. Rethrows the first
// Error (an abort from another worker's failure is not reported).
template <class Job>
void run_partitioned(int roots, int workers, YieldBudget& budget, Job job) {
    workers = std::max(1, workers);
    if (workers == 1) {
        for (int r = 0; r < roots; ++r) job(0, r);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (int r = w; r < roots; r += workers) job(w, r);
            } catch (...) {
                errors[w] = std::current_exception();
                budget.stop = true;
            }
        });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) {
            try {
                std::rethrow_exception(e);
            } catch (const Error&) {
                throw;
            } catch (...) {
            }
        }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<std::vector<int>> line_graph(const EmbeddedGraph& emb) {
    std::vector<std::vector<int>> adj(emb.edge_count());
    for (int e = 0; e < emb.edge_count(); ++e) {
        for (int x : emb.ends(e))
            for (int o : emb.out_darts(x)) {
                const int f = EmbeddedGraph::dart_edge(o);
                if (f != e) adj[e].push_back(f);
            }
        std::sort(adj[e].begin(), adj[e].end());
    }
    return adj;
}

std::vector<std::vector<int>> vertex_graph(const EmbeddedGraph& emb) {
    std::vector<std::vector<int>> adj(emb.vertex_count());
    for (int v = 0; v < emb.vertex_count(); ++v) {
        for (int o : emb.out_darts(v)) adj[v].push_back(emb.head(o));
        std::sort(adj[v].begin(), adj[v].end());
    }
    return adj;
}

std::vector<int> true_degrees(const EmbeddedGraph& emb) {
    std::vector<int> td(emb.vertex_count(), -1);
    for (int v = 0; v < emb.vertex_count(); ++v)
        if (auto t = emb.true_degree(v)) td[v] = *t;
    return td;
}

// Incremental boundary degree and measure for edge sets.
struct EdgeHooks {
    const EmbeddedGraph& emb;
    const LengthScale& scale;
    const std::vector<int>& td;
    YieldBudget& budget;
    std::function<void(const EdgeSetView&)> visit_fn;
    std::vector<int> deg;
    long long bd = 0;
    __int128 mes = 0;

    EdgeHooks(const EmbeddedGraph& e, const LengthScale& s, const std::vector<int>& t, YieldBudget& b,
              std::function<void(const EdgeSetView&)> fn)
        : emb(e), scale(s), td(t), budget(b), visit_fn(std::move(fn)), deg(e.vertex_count(), 0) {}

    long long contribution(int v, int d) const { return d > 0 && d < td[v] ? d : 0; }
    void bump(int v, int delta) {
        bd -= contribution(v, deg[v]);
        deg[v] += delta;
        bd += contribution(v, deg[v]);
    }
    void add(int e) {
        bump(emb.ends(e)[0], 1);
        bump(emb.ends(e)[1], 1);
        mes += scale.scaled(e);
    }
    void remove(int e) {
        bump(emb.ends(e)[0], -1);
        bump(emb.ends(e)[1], -1);
        mes -= scale.scaled(e);
    }
    void visit(const std::vector<int>& sub) {
        budget.tick();
        visit_fn(EdgeSetView{sub, bd, mes});
    }
};

std::vector<char> edges_with_known_degrees(const EmbeddedGraph& emb, const std::vector<int>& td) {
    std::vector<char> allowed(emb.edge_count(), 0);
    for (int e = 0; e < emb.edge_count(); ++e) allowed[e] = td[emb.ends(e)[0]] > 0 && td[emb.ends(e)[1]] > 0;
    return allowed;
}

// Minimum of num/den with ties broken by the sorted label sequence.
struct RatioBest {
    bool have = false;
    long long num = 0;
    __int128 den = 1;
    std::vector<Label> labels;

    template <class LabelsFn>
    void offer(long long n, __int128 d, LabelsFn labels_of) {
        if (!have) {
            have = true;
            num = n;
            den = d;
            labels = labels_of();
            return;
        }
        const __int128 lhs = static_cast<__int128>(n) * den;
        const __int128 rhs = static_cast<__int128>(num) * d;
        if (lhs < rhs) {
            num = n;
            den = d;
            labels = labels_of();
        } else if (lhs == rhs) {
            std::vector<Label> cand = labels_of();
            if (cand < labels) {
                num = n;
                den = d;
                labels = std::move(cand);
            }
        }
    }
    void merge(const RatioBest& o) {
        if (o.have) offer(o.num, o.den, [&] { return o.labels; });
    }
};

}  // namespace

LengthScale::LengthScale(const MetricGraph& g) : lcm_(1) {
    for (const Rational& len : g.lengths()) {
        const Integer d = boost::multiprecision::denominator(len);
        lcm_ = lcm_ / boost::multiprecision::gcd(lcm_, d) * d;
    }
    Integer total = 0;
    for (const Rational& len : g.lengths()) {
        const Integer s = boost::multiprecision::numerator(len) * (lcm_ / boost::multiprecision::denominator(len));
        total += s;
        scaled_.push_back(to_int128(s));
    }
    // Keep num * den products within range during comparisons.
    if (total >= (Integer(1) << 100)) throw Error(ErrorCode::NotApplicable, "edge lengths too fine for exact enumeration");
}

Rational LengthScale::to_measure(__int128 scaled_sum) const { return Rational(from_int128(scaled_sum), lcm_); }

void for_each_connected_subgraph(const MetricGraph& g, const Budget& budget,
                                 const std::function<void(const EdgeSetView&)>& visit) {
    if (budget.max_edges < 1) throw Error(ErrorCode::OutOfRange, "max_edges must be at least 1");
    const EmbeddedGraph& emb = g.embedding();
    const LengthScale scale(g);
    const auto td = true_degrees(emb);
    const auto adj = line_graph(emb);
    const auto allowed = edges_with_known_degrees(emb, td);
    YieldBudget yb(budget.max_yield);
    EdgeHooks hooks(emb, scale, td, yb, visit);
    Esu<EdgeHooks> esu(adj, allowed, budget.max_edges, hooks);
    for (int r = 0; r < emb.edge_count(); ++r) esu.run_root(r);
}

std::vector<std::vector<int>> enumerate_connected_subgraphs(const MetricGraph& g, const Budget& budget) {
    std::vector<std::vector<int>> out;
    for_each_connected_subgraph(g, budget, [&](const EdgeSetView& v) {
        std::vector<int> s(v.edges.begin(), v.edges.end());
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    });
    std::sort(out.begin(), out.end());
    return out;
}

BruteforceResult alpha_upper_bruteforce(const MetricGraph& g, const Budget& budget) {
    if (budget.max_edges < 1) throw Error(ErrorCode::OutOfRange, "max_edges must be at least 1");
    const EmbeddedGraph& emb = g.embedding();
    const LengthScale scale(g);
    const auto td = true_degrees(emb);
    const auto adj = line_graph(emb);
    const auto allowed = edges_with_known_degrees(emb, td);
    const int workers = std::max(1, budget.workers);
    YieldBudget yb(budget.max_yield);

    struct Worker {
        RatioBest best;
        RatioBest restricted;
        long long visited = 0;
        std::unique_ptr<EdgeHooks> hooks;
        std::unique_ptr<Esu<EdgeHooks>> esu;
    };
    std::vector<Worker> ws(workers);
    for (int w = 0; w < workers; ++w) {
        Worker& wk = ws[w];
        auto visit = [&emb, &wk](const EdgeSetView& v) {
            ++wk.visited;
            auto labels = [&] {
                std::vector<Label> l;
                l.reserve(v.edges.size());
                for (int e : v.edges) l.push_back(emb.edge_label(e));
                std::sort(l.begin(), l.end());
                return l;
            };
            wk.best.offer(v.boundary_degree, v.scaled_measure, labels);
            if (v.boundary_degree > 0) wk.restricted.offer(v.boundary_degree, v.scaled_measure, labels);
        };
        wk.hooks = std::make_unique<EdgeHooks>(emb, scale, td, yb, visit);
        wk.esu = std::make_unique<Esu<EdgeHooks>>(adj, allowed, budget.max_edges, *wk.hooks);
    }
    run_partitioned(emb.edge_count(), workers, yb, [&](int w, int r) { ws[w].esu->run_root(r); });

    RatioBest best, restricted;
    BruteforceResult out;
    for (const Worker& wk : ws) {
        best.merge(wk.best);
        restricted.merge(wk.restricted);
        out.visited += wk.visited;
    }
    auto finish = [&](const RatioBest& b) -> std::optional<RatioWitness> {
        if (!b.have) return std::nullopt;
        RatioWitness w;
        w.boundary_degree = b.num;
        w.measure = scale.to_measure(b.den);
        w.ratio = Rational(b.num) / w.measure;
        w.edges = b.labels;
        return w;
    };
    out.best = finish(best);
    out.restricted = finish(restricted);
    return out;
}

namespace {

struct VertexHooks {
    YieldBudget& budget;
    std::function<void(const std::vector<int>&)> visit_fn;
    void add(int) {}
    void remove(int) {}
    void visit(const std::vector<int>& sub) {
        budget.tick();
        visit_fn(sub);
    }
};

struct CombHooks {
    const std::vector<std::vector<int>>& adj;
    const std::vector<int>& td;
    YieldBudget& budget;
    std::function<void(long long, long long, const std::vector<int>&)> visit_fn;
    std::vector<char> in;
    long long degsum = 0;
    long long internal = 0;

    void add(int v) {
        degsum += td[v];
        for (int u : adj[v]) internal += in[u];
        in[v] = 1;
    }
    void remove(int v) {
        in[v] = 0;
        for (int u : adj[v]) internal -= in[u];
        degsum -= td[v];
    }
    void visit(const std::vector<int>& sub) {
        budget.tick();
        visit_fn(degsum - 2 * internal, degsum, sub);
    }
};

}  // namespace

StarlikeEnumeration enumerate_starlike_complete(const MetricGraph& g, const Budget& budget) {
    if (budget.max_generators < 1) throw Error(ErrorCode::OutOfRange, "max_generators must be at least 1");
    const EmbeddedGraph& emb = g.embedding();
    const auto adj = vertex_graph(emb);
    std::vector<char> allowed(emb.vertex_count(), 0);
    for (int v = 0; v < emb.vertex_count(); ++v) allowed[v] = !emb.is_frontier(v) && emb.degree(v) > 0;

    StarlikeEnumeration out;
    std::set<std::vector<int>> seen;
    YieldBudget yb(budget.max_yield);
    VertexHooks hooks{yb, [&](const std::vector<int>& U) {
                          ++out.generator_sets;
                          try {
                              const SubgraphSelection s = complete_closure(g, star_union(g, U));
                              if (seen.insert(s.edges).second) out.subgraphs.push_back(s);
                          } catch (const Error& e) {
                              if (e.code() == ErrorCode::FrontierContact)
                                  ++out.skipped_frontier;
                              else if (e.code() == ErrorCode::IndeterminateFaces)
                                  ++out.skipped_indeterminate;
                              else
                                  throw;
                          }
                      }};
    Esu<VertexHooks> esu(adj, allowed, budget.max_generators, hooks);
    for (int r = 0; r < emb.vertex_count(); ++r) esu.run_root(r);
    std::sort(out.subgraphs.begin(), out.subgraphs.end(),
              [](const SubgraphSelection& a, const SubgraphSelection& b) { return a.edges < b.edges; });
    return out;
}

CombBruteforceResult alpha_comb_upper_bruteforce(const MetricGraph& g, const Budget& budget) {
    if (budget.max_generators < 1) throw Error(ErrorCode::OutOfRange, "max_generators must be at least 1");
    const EmbeddedGraph& emb = g.embedding();
    const auto adj = vertex_graph(emb);
    const auto td = true_degrees(emb);
    std::vector<char> allowed(emb.vertex_count(), 0);
    for (int v = 0; v < emb.vertex_count(); ++v) allowed[v] = td[v] > 0;
    const int workers = std::max(1, budget.workers);
    YieldBudget yb(budget.max_yield);

    struct Worker {
        RatioBest best;
        RatioBest restricted;
        long long visited = 0;
        std::unique_ptr<CombHooks> hooks;
        std::unique_ptr<Esu<CombHooks>> esu;
    };
    std::vector<Worker> ws(workers);
    for (int w = 0; w < workers; ++w) {
        Worker& wk = ws[w];
        auto visit = [&emb, &wk](long long boundary, long long degsum, const std::vector<int>& U) {
            ++wk.visited;
            auto labels = [&] {
                std::vector<Label> l;
                for (int v : U) l.push_back(emb.vertex_label(v));
                std::sort(l.begin(), l.end());
                return l;
            };
            wk.best.offer(boundary, degsum, labels);
            if (boundary > 0) wk.restricted.offer(boundary, degsum, labels);
        };
        wk.hooks = std::make_unique<CombHooks>(
            CombHooks{adj, td, yb, visit, std::vector<char>(emb.vertex_count(), 0), 0, 0});
        wk.esu = std::make_unique<Esu<CombHooks>>(adj, allowed, budget.max_generators, *wk.hooks);
    }
    run_partitioned(emb.vertex_count(), workers, yb, [&](int w, int r) { ws[w].esu->run_root(r); });

    RatioBest best, restricted;
    CombBruteforceResult out;
    for (const Worker& wk : ws) {
        best.merge(wk.best);
        restricted.merge(wk.restricted);
        out.visited += wk.visited;
    }
    auto finish = [](const RatioBest& b) -> std::optional<CombWitness> {
        if (!b.have) return std::nullopt;
        const auto degsum = static_cast<long long>(b.den);
        return CombWitness{Rational(b.num, degsum), b.num, degsum, b.labels};
    };
    out.best = finish(best);
    out.restricted = finish(restricted);
    return out;
}

BoundValue BoundValue::of(const Rational& r) { return BoundValue{r, to_double(r)}; }
BoundValue BoundValue::real(double x) { return BoundValue{std::nullopt, x}; }

int compare_values(const BoundValue& a, const BoundValue& b) {
    if (a.exact && b.exact) return *a.exact < *b.exact ? -1 : (*a.exact == *b.exact ? 0 : 1);
    if (std::abs(a.approx - b.approx) <= kTolerance) return 0;
    return a.approx < b.approx ? -1 : 1;
}

CheegerInterval cheeger_interval(double alpha, const Rational& ell_min) {
    return cheeger_interval(BoundValue::real(alpha), BoundValue::real(alpha), ell_min);
}

CheegerInterval cheeger_interval(const BoundValue& lower, const BoundValue& upper, const Rational& ell_min) {
    if (ell_min <= 0) throw Error(ErrorCode::NonPositiveEllMin, "ell_min must be positive");
    if (lower.approx < 0 || upper.approx < 0) throw Error(ErrorCode::OutOfRange, "alpha must be non-negative");
    CheegerInterval c;
    if (lower.exact) c.lower_exact = *lower.exact * *lower.exact / 4;
    c.lower = lower.approx * lower.approx / 4.0;
    c.upper = std::numbers::pi * std::numbers::pi * upper.approx / (2.0 * to_double(ell_min));
    return c;
}

std::vector<Bound> lower_bounds(const MetricGraph& g, const CurvatureReport& report,
                                const std::optional<FamilyFacts>& facts, const StarlikeEnumeration* sample) {
    std::vector<Bound> out;
    const bool certified_constants = facts && facts->c_star && facts->K;
    const std::optional<Rational> c_star = certified_constants ? facts->c_star : report.c_star;
    const std::optional<Rational> K = certified_constants ? facts->K : report.K;
    const std::string source = certified_constants ? "family constants" : (report.observed ? "observed" : "");

    Bound ck{BoundValue::of(0), "cK_lower", certified_constants || !report.observed, false, source, {}};
    if (c_star && K && *c_star >= 0 && *K > 0) {
        ck.applicable = true;
        ck.value = BoundValue::of(*c_star / *K);
    } else {
        ck.note = "needs c* >= 0 and K > 0";
    }
    out.push_back(ck);

    Bound cs{BoundValue::of(0), "cstar_lower", certified_constants || !report.observed, false, source, {}};
    if (c_star) {
        cs.applicable = true;
        cs.value = BoundValue::of(*c_star);
    } else {
        cs.note = "no characteristic value is known";
    }
    out.push_back(cs);

    Bound est{BoundValue::of(0), "est01_empirical", false, false, "", {}};
    const Rational two_over_ell =
        2 / ((facts && facts->ell_star) ? *facts->ell_star : report.ell_star.value());
    if (sample) {
        std::optional<Rational> inf;
        std::vector<Label> witness;
        long long used = 0;
        for (const SubgraphSelection& s : sample->subgraphs) {
            Rational sum = 0;
            bool known = true;
            for (int e : s.edges) {
                if (!report.char_value[e]) {
                    known = false;
                    break;
                }
                sum += *report.char_value[e] * g.length(e);
            }
            if (!known) continue;
            ++used;
            const Rational avg = sum / s.measure;
            if (!inf || avg < *inf) {
                inf = avg;
                witness = s.edge_labels(g);
            }
        }
        if (inf) {
            est.applicable = true;
            est.value = BoundValue::of(std::min(two_over_ell, *inf));
            if (*inf < two_over_ell) est.witness = witness;
            est.note = "over " + std::to_string(used) + " enumerated star-like complete subgraphs";
        } else {
            est.note = "no enumerated star-like complete subgraph with known characteristic values";
        }
    } else {
        est.note = "no enumeration supplied";
    }
    out.push_back(est);

    Bound vol{BoundValue::of(0), "estvol_lower", true, false, "", {}};
    vol.note = g.is_finite() || (facts && !facts->infinite) ? "graph is finite"
                                                           : "total measure of the infinite graph is not finite";
    out.push_back(vol);
    return out;
}

AlphaBracket assemble_bracket(const MetricGraph& g, const CurvatureReport& report, const BruteforceResult& brute,
                              const StarlikeEnumeration& sample) {
    AlphaBracket b;
    const std::optional<FamilyFacts> facts = family_facts(g.family());
    b.finite = g.is_finite();
    b.lower_bounds = lower_bounds(g, report, facts, &sample);

    const bool ell_certified = (facts && facts->ell_star) || b.finite;
    const Rational ell_star = (facts && facts->ell_star) ? *facts->ell_star : report.ell_star.value();
    Bound ell{BoundValue::of(2 / ell_star), "ellstar_upper", true, true, ell_certified ? "" : "observed", {}};
    b.upper_bounds.push_back(ell);

    if (b.finite) {
        Bound whole{BoundValue::of(0), "bruteforce_upper", true, true, "whole graph has empty boundary", {}};
        for (int e = 0; e < g.edge_count(); ++e) whole.witness.push_back(g.embedding().edge_label(e));
        b.upper_bounds.push_back(whole);
        b.exact = BoundValue::of(0);
        b.restricted = brute.restricted;
    }
    if (brute.best) {
        Bound bf{BoundValue::of(brute.best->ratio), "bruteforce_upper", true, true,
                 "minimum over " + std::to_string(brute.visited) + " connected subgraphs", brute.best->edges};
        b.upper_bounds.push_back(bf);
    }

    if (facts) {
        if (facts->alpha_exact) {
            b.lower_bounds.push_back({BoundValue::of(*facts->alpha_exact), "closed_form", true, true, "", {}});
            b.upper_bounds.push_back({BoundValue::of(*facts->alpha_exact), "closed_form", true, true, "", {}});
            b.exact = BoundValue::of(*facts->alpha_exact);
        } else if (facts->alpha_real) {
            b.lower_bounds.push_back({BoundValue::real(*facts->alpha_real), "closed_form", true, true, "tolerance 1e-12", {}});
            b.upper_bounds.push_back({BoundValue::real(*facts->alpha_real), "closed_form", true, true, "tolerance 1e-12", {}});
            b.exact = BoundValue::real(*facts->alpha_real);
        }
        if (facts->alpha_upper)
            b.upper_bounds.push_back(
                {BoundValue::of(*facts->alpha_upper), "closed_form", true, true, "limit of the tree witness ratios", {}});
    }

    // Reduction rule: a certified lower bound on the star-like complete
    // infimum that reaches 2/ℓ* pins α to 2/ℓ*.
    if (ell_certified && !b.finite) {
        std::optional<BoundValue> s_lower;
        std::string from;
        auto consider = [&](const BoundValue& v, const std::string& why) {
            if (!s_lower || compare_values(v, *s_lower) > 0) {
                s_lower = v;
                from = why;
            }
        };
        if (facts && facts->alpha_S_lower) consider(BoundValue::of(*facts->alpha_S_lower), "family star-like bound");
        for (const Bound& lb : b.lower_bounds)
            if (lb.certified && lb.applicable) consider(lb.value, lb.provenance);
        const BoundValue target = BoundValue::of(2 / ell_star);
        if (s_lower && compare_values(*s_lower, target) >= 0) {
            const std::string note = "star-like lower bound " +
                                     (s_lower->exact ? to_string(*s_lower->exact) : std::to_string(s_lower->approx)) +
                                     " from " + from + " is at least 2/ell*";
            b.lower_bounds.push_back({target, "reduction_exact", true, true, note, {}});
            b.upper_bounds.push_back({target, "reduction_exact", true, true, note, {}});
            b.exact = target;
        }
    }

    for (const Bound& lb : b.lower_bounds)
        if (lb.certified && lb.applicable && (!b.best_lower || compare_values(lb.value, *b.best_lower) > 0))
            b.best_lower = lb.value;
    for (const Bound& ub : b.upper_bounds)
        if (ub.certified && ub.applicable && (!b.best_upper || compare_values(ub.value, *b.best_upper) < 0))
            b.best_upper = ub.value;

    const std::optional<Rational> ell_min =
        (facts && !b.finite) ? facts->ell_min : std::optional<Rational>(report.ell_min);
    if (ell_min && *ell_min > 0) {
        if (b.exact)
            b.cheeger = cheeger_interval(*b.exact, *b.exact, *ell_min);
        else if (b.best_lower && b.best_upper)
            b.cheeger = cheeger_interval(*b.best_lower, *b.best_upper, *ell_min);
    }
    return b;
}

AlphaBracket alpha_bracket(const MetricGraph& g, const Budget& budget) {
    const CurvatureReport report = global_constants(g);
    const BruteforceResult brute = alpha_upper_bruteforce(g, budget);
    const StarlikeEnumeration sample = enumerate_starlike_complete(g, budget);
    return assemble_bracket(g, report, brute, sample);
}

}  // namespace tessiso
