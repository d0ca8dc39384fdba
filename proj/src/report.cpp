#include "tessiso/report.hpp"

#include "tessiso/subgraph.hpp"

#include <cmath>

namespace tessiso {

using nlohmann::json;

namespace {

json rat(const Rational& r) { return to_string(r); }
json ext(const ExtRational& r) { return to_string(r); }
template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(to_string(*v)) : json(nullptr);
}

json labels(const std::vector<Label>& ls) { return json(ls); }

json edge_labels(const MetricGraph& g, const std::vector<int>& es) {
    json out = json::array();
    for (int e : es) out.push_back(g.embedding().edge_label(e));
    return out;
}

json budget_json(const Budget& b) {
    // workers is deliberately left out: it must not change the report.
    return {{"max_edges", b.max_edges}, {"max_generators", b.max_generators}, {"max_yield", b.max_yield}};
}

json ratio_witness(const std::optional<RatioWitness>& w) {
    if (!w) return nullptr;
    return {{"ratio", rat(w->ratio)},
            {"boundary_degree", w->boundary_degree},
            {"measure", rat(w->measure)},
            {"edges", labels(w->edges)}};
}

json comb_witness(const std::optional<CombWitness>& w) {
    if (!w) return nullptr;
    return {{"ratio", rat(w->ratio)},
            {"boundary_edges", w->boundary_edges},
            {"degree_sum", w->degree_sum},
            {"vertices", labels(w->vertices)}};
}

json constants_json(const CurvatureReport& r) {
    return {{"ell_star", ext(r.ell_star)},
            {"ell_min", rat(r.ell_min)},
            {"c_star", opt(r.c_star)},
            {"M", ext(r.M)},
            {"P", ext(r.P)},
            {"K", opt(r.K)},
            {"deg_star", r.deg_star},
            {"dT_star", ext(r.dT_star)},
            {"observed", r.observed},
            {"known_edges", r.known_edges},
            {"known_vertices", r.known_vertices},
            {"known_tiles", r.known_tiles},
            {"kappa_uses_unbounded", r.kappa_uses_unbounded}};
}

bool equilateral(const MetricGraph& g) {
    for (const Rational& l : g.lengths())
        if (l != 1) return false;
    return true;
}

json cmd_validate(const MetricGraph& g, int& status) {
    const ValidationMode mode = g.is_finite() ? ValidationMode::Finite : ValidationMode::Truncation;
    const ValidationReport rep = validate_tessellation(g, mode);
    json vs = json::array();
    for (const Violation& v : rep.violations)
        vs.push_back({{"condition", v.condition},
                      {"message", v.message},
                      {"vertices", v.vertices},
                      {"edges", v.edges},
                      {"face", v.face}});
    if (!rep.valid()) status = kExitViolations;
    return {{"mode", mode == ValidationMode::Finite ? "finite" : "truncation"}, {"valid", rep.valid()}, {"violations", vs}};
}

json cmd_faces(const MetricGraph& g) {
    json tiles = json::array();
    for (size_t f = 0; f < g.tiles().size(); ++f) {
        const Tile& t = g.tile(static_cast<int>(f));
        tiles.push_back({{"index", f},
                         {"degree", t.degree},
                         {"status", std::string(to_string(t.status))},
                         {"perimeter", opt(t.perimeter)},
                         {"edges", edge_labels(g, t.edge_set)}});
    }
    json out = {{"tile_count", g.tiles().size()}, {"tiles", tiles}};
    if (g.is_finite()) out["euler"] = g.vertex_count() - g.edge_count() + static_cast<int>(g.tiles().size());
    return out;
}

json cmd_curvature(const MetricGraph& g) {
    const CurvatureReport r = global_constants(g);
    const EmbeddedGraph& emb = g.embedding();
    json edges = json::array();
    for (int e = 0; e < g.edge_count(); ++e)
        edges.push_back({{"id", emb.edge_label(e)}, {"length", rat(g.length(e))}, {"c", opt(r.char_value[e])}});
    json vertices = json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        vertices.push_back({{"id", emb.vertex_label(v)},
                            {"weight", opt(r.vertex_weight[v])},
                            {"kappa", opt(r.vertex_curvature[v])}});
    return {{"constants", constants_json(r)}, {"edges", edges}, {"vertices", vertices}};
}

json cmd_gauss_bonnet(const MetricGraph& g, int& status) {
    const GaussBonnetResult r = gauss_bonnet_check(g);
    if (!r.holds) status = kExitViolations;
    return {{"sum", rat(r.sum)}, {"holds", r.holds}};
}

json bounds_list(const std::vector<Bound>& bs) {
    json out = json::array();
    for (const Bound& b : bs) {
        json j = {{"provenance", b.provenance},
                  {"value", to_json(b.value)},
                  {"certified", b.certified},
                  {"applicable", b.applicable},
                  {"note", b.note}};
        if (!b.witness.empty()) j["witness"] = b.witness;
        out.push_back(j);
    }
    return out;
}

json cmd_bounds(const MetricGraph& g, const AnalysisOptions& opts, int& status) {
    const CurvatureReport r = global_constants(g);
    json ineq = json::array();
    for (const InequalityCheck& c : curvature_inequalities(r)) {
        ineq.push_back({{"name", c.name},
                        {"applicable", c.applicable},
                        {"holds", c.holds},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"note", c.note}});
        if (c.applicable && !c.holds) status = kExitViolations;
    }
    const StarlikeEnumeration sample = enumerate_starlike_complete(g, opts.budget);
    long long checked = 0, iso = 0, tech = 0, unknown = 0;
    for (const SubgraphSelection& s : sample.subgraphs) {
        try {
            const DegsumResult d = degsum_check(g, r, s);
            ++checked;
            iso += d.lhs > d.rhs;
            tech += d.lhs > d.tech_rhs;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FrontierContact) throw;
            ++unknown;
        }
    }
    if (iso || tech) status = kExitViolations;
    return {{"constants", constants_json(r)},
            {"inequalities", ineq},
            {"lower_bounds", bounds_list(lower_bounds(g, r, family_facts(g.family()), &sample))},
            {"starlike",
             {{"generator_sets", sample.generator_sets},
              {"subgraphs", sample.subgraphs.size()},
              {"skipped_frontier", sample.skipped_frontier},
              {"skipped_indeterminate", sample.skipped_indeterminate},
              {"checked", checked},
              {"unknown_c", unknown},
              {"isostar_violations", iso},
              {"tech_violations", tech}}},
            {"budget", budget_json(opts.budget)}};
}

json cmd_alpha(const MetricGraph& g, const AnalysisOptions& opts) {
    const CurvatureReport r = global_constants(g);
    const BruteforceResult brute = alpha_upper_bruteforce(g, opts.budget);
    const StarlikeEnumeration sample = enumerate_starlike_complete(g, opts.budget);
    json out = to_json(assemble_bracket(g, r, brute, sample));
    out["bruteforce"] = {{"visited", brute.visited}, {"best", ratio_witness(brute.best)}};
    out["budget"] = budget_json(opts.budget);
    return out;
}

struct CombSummary {
    json record;
    std::optional<BoundValue> upper;
    std::optional<BoundValue> known;  ///< closed form, when the family has one
};

CombSummary comb_summary(const MetricGraph& g, const AnalysisOptions& opts) {
    const CombBruteforceResult r = alpha_comb_upper_bruteforce(g, opts.budget);
    const auto facts = family_facts(g.family());
    CombSummary s;
    s.record = {{"bruteforce", {{"visited", r.visited}, {"best", comb_witness(r.best)}}},
                {"budget", budget_json(opts.budget)}};
    if (g.is_finite()) s.record["restricted"] = comb_witness(r.restricted);
    if (r.best) s.upper = BoundValue::of(r.best->ratio);
    if (facts && facts->alpha_comb_exact)
        s.known = BoundValue::of(*facts->alpha_comb_exact);
    else if (facts && facts->alpha_comb_real)
        s.known = BoundValue::real(*facts->alpha_comb_real);
    if (g.is_finite()) s.known = BoundValue::of(0);
    s.record["closed_form"] = s.known ? to_json(*s.known) : json(nullptr);
    if (s.upper) s.record["best_upper"] = to_json(*s.upper);
    if (s.known && (!s.upper || compare_values(*s.known, *s.upper) < 0)) s.record["best_upper"] = to_json(*s.known);
    if (equilateral(g) && r.best)
        s.record["metric_transform_of_upper"] = equilateral_transform(to_double(r.best->ratio));
    return s;
}

json cmd_compare(const MetricGraph& g, const AnalysisOptions& opts) {
    const CurvatureReport rep = global_constants(g);
    const AlphaBracket a = assemble_bracket(g, rep, alpha_upper_bruteforce(g, opts.budget),
                                            enumerate_starlike_complete(g, opts.budget));
    const CombSummary c = comb_summary(g, opts);
    if (!a.best_upper && !a.exact) throw Error(ErrorCode::MissingAnalysis, "no metric bracket");
    if (!c.upper && !c.known) throw Error(ErrorCode::MissingAnalysis, "no combinatorial bound");

    const BoundValue zero = BoundValue::of(0);
    const bool alpha_positive = a.best_lower && compare_values(*a.best_lower, zero) > 0;
    const bool alpha_zero = a.exact && compare_values(*a.exact, zero) == 0;
    const bool comb_positive = c.known && compare_values(*c.known, zero) > 0;
    const bool comb_zero = c.known && compare_values(*c.known, zero) == 0;
    json out = {{"alpha", to_json(a)},
                {"alpha_comb", c.record},
                {"alpha_certified_positive", alpha_positive},
                {"alpha_comb_zero", comb_zero},
                {"divergence", (alpha_positive && comb_zero) || (comb_positive && alpha_zero)}};
    if (equilateral(g) && c.known && a.exact) {
        const double lhs = a.exact->approx;
        const double rhs = equilateral_transform(c.known->approx);
        out["metric_comb_relation"] = {{"alpha", lhs},
                                       {"transform_of_alpha_comb", rhs},
                                       {"holds", std::abs(lhs - rhs) <= opts.tolerance}};
    }
    out["tolerance"] = opts.tolerance;
    return out;
}

json cmd_witness(const MetricGraph& g, const AnalysisOptions& opts) {
    const json& fam = g.family();
    if (!fam.is_object() || fam.value("name", "") != "gk")
        throw Error(ErrorCode::NotApplicable, "witness sequences are defined for G_k truncations");
    const int k = fam["k"].get<int>();
    const int depth = fam["tree_depth"].get<int>();
    const int top = opts.witness_depth > 0 ? opts.witness_depth : depth;
    json rows = json::array();
    for (int l = 2; l <= top; ++l) {
        const GkWitness w = gk_witness_sequence(k, l);
        json row = {{"l", l},
                    {"measure", w.measure.str()},
                    {"boundary_degree", w.boundary_degree.str()},
                    {"ratio", rat(w.ratio)},
                    {"exact_boundary_degree", w.exact_boundary_degree.str()},
                    {"exact_ratio", rat(w.exact_ratio)}};
        if (l <= depth) {
            const SubgraphSelection s = gk_witness_subgraph(g, l);
            row["subgraph_ratio"] = rat(s.ratio());
            row["subgraph_matches_exact"] = s.ratio() == w.exact_ratio;
        }
        rows.push_back(row);
    }
    return {{"k", k}, {"limit", rat(Rational(k - 2, k - 1))}, {"sequence", rows}};
}

}  // namespace

const std::vector<std::string>& analysis_commands() {
    static const std::vector<std::string> cmds{"validate", "faces",      "curvature", "gauss-bonnet", "bounds",
                                               "alpha",    "comb-alpha", "compare",   "witness"};
    return cmds;
}

int exit_status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::BudgetExceeded:
            return kExitBudget;
        case ErrorCode::ParseError:
        case ErrorCode::MalformedRotation:
        case ErrorCode::NonSimple:
        case ErrorCode::Disconnected:
        case ErrorCode::NonPositiveLength:
        case ErrorCode::InconsistentFrontier:
        case ErrorCode::OutOfRange:
        case ErrorCode::NegativeCurvatureParams:
        case ErrorCode::RadiusTooSmall:
        case ErrorCode::ParamTooSmall:
            return kExitMalformed;
        default:
            return kExitViolations;
    }
}

json error_record(const std::string& command, const Error& e) {
    return {{"command", command}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

CommandResult run_analysis(const std::string& command, const MetricGraph& g, const AnalysisOptions& opts) {
    CommandResult res;
    try {
        json body;
        if (command == "validate")
            body = cmd_validate(g, res.status);
        else if (command == "faces")
            body = cmd_faces(g);
        else if (command == "curvature")
            body = cmd_curvature(g);
        else if (command == "gauss-bonnet")
            body = cmd_gauss_bonnet(g, res.status);
        else if (command == "bounds")
            body = cmd_bounds(g, opts, res.status);
        else if (command == "alpha")
            body = cmd_alpha(g, opts);
        else if (command == "comb-alpha")
            body = comb_summary(g, opts).record;
        else if (command == "compare")
            body = cmd_compare(g, opts);
        else if (command == "witness")
            body = cmd_witness(g, opts);
        else
            throw Error(ErrorCode::OutOfRange, "unknown command " + command);
        body["command"] = command;
        res.record = std::move(body);
    } catch (const Error& e) {
        res.record = error_record(command, e);
        res.status = exit_status_for(e.code());
    }
    return res;
}

json make_report(const std::vector<json>& records) {
    return {{"schema_version", kReportSchema}, {"records", records}};
}

std::string report_to_string(const json& report) { return report.dump(2) + "\n"; }

json to_json(const BoundValue& v) {
    if (v.exact) return {{"exact", to_string(*v.exact)}, {"approx", v.approx}};
    return {{"real", v.approx}, {"tolerance", 1e-12}};
}

json to_json(const AlphaBracket& b) {
    json out = {{"lower_bounds", bounds_list(b.lower_bounds)},
                {"upper_bounds", bounds_list(b.upper_bounds)},
                {"best_lower", b.best_lower ? to_json(*b.best_lower) : json(nullptr)},
                {"best_upper", b.best_upper ? to_json(*b.best_upper) : json(nullptr)},
                {"exact", b.exact ? to_json(*b.exact) : json(nullptr)},
                {"finite", b.finite}};
    if (b.cheeger) {
        json c = {{"lower", b.cheeger->lower}, {"upper", b.cheeger->upper}};
        if (b.cheeger->lower_exact) c["lower_exact"] = to_string(*b.cheeger->lower_exact);
        out["cheeger_interval"] = c;
    } else {
        out["cheeger_interval"] = nullptr;
    }
    if (b.finite) out["restricted"] = ratio_witness(b.restricted);
    return out;
}

}  // namespace tessiso
