// tessiso: analyses of tessellating metric graphs and generators for the
// standard families. Reports are JSON on stdout or --output.

#include "tessiso/families.hpp"
#include "tessiso/graph_io.hpp"
#include "tessiso/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace tessiso;

namespace {

struct Globals {
    int budget_edges = 6;
    int budget_generators = 4;
    long long max_yield = 20'000'000;
    double tolerance = 1e-12;
    int workers = 1;
    std::string output;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
    if (g.output.empty() || g.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw IoError("cannot write " + g.output);
    out << text;
}

std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "family parameter '" + item + "' lacks '='");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

int get_int(const std::map<std::string, std::string>& kv, const std::string& key, int fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "family parameter " + key + " is not an integer");
    }
}

std::optional<int> get_q(const std::string& text) {
    if (text == "inf") return std::nullopt;
    try {
        return std::stoi(text);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "q must be an integer or 'inf'");
    }
}

// "pq:p=7,q=3,radius=3", "gk:k=3,rows=2,cols=2,depth=3", "tree:p=3,depth=4",
// "netree:p=6,depth=2", "wheel:n=5". A trailing ",sealed=1" seals a pq ball.
GraphSpec family_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const auto kv = colon == std::string::npos ? std::map<std::string, std::string>{} : parse_kv(text.substr(colon + 1));
    if (name == "pq") {
        auto it = kv.find("q");
        if (it == kv.end()) throw Error(ErrorCode::ParseError, "pq family needs q");
        GraphSpec s = gen_pq_ball_spec({get_int(kv, "p", 0), get_q(it->second)}, get_int(kv, "radius", 1));
        return get_int(kv, "sealed", 0) ? seal_ball(s) : s;
    }
    if (name == "tree") return gen_pq_ball_spec({get_int(kv, "p", 3), std::nullopt}, get_int(kv, "depth", 1));
    if (name == "gk")
        return gen_Gk_spec({get_int(kv, "k", 3), get_int(kv, "rows", 2), get_int(kv, "cols", 2), get_int(kv, "depth", 2)});
    if (name == "netree") return gen_nonequilateral_tree_spec(get_int(kv, "p", 6), get_int(kv, "depth", 2));
    if (name == "wheel") return gen_wheel_spec(get_int(kv, "n", 4));
    throw Error(ErrorCode::ParseError, "unknown family '" + name + "'");
}

GraphSpec load_input(const std::string& input, const std::string& family) {
    if (!family.empty()) return family_spec(family);
    if (input.empty()) throw Error(ErrorCode::ParseError, "no input graph or --family given");
    std::ifstream probe(input);
    if (!probe) throw IoError("cannot open " + input);
    return read_graph_file(input);
}

int run_commands(const Globals& g, const std::vector<std::string>& commands, const std::string& input,
                 const std::string& family, int witness_depth) {
    std::vector<nlohmann::json> records;
    int status = kExitOk;
    try {
        const MetricGraph graph = build_graph(load_input(input, family));
        AnalysisOptions opts;
        opts.budget = {g.budget_edges, g.budget_generators, g.max_yield, g.workers};
        opts.tolerance = g.tolerance;
        opts.witness_depth = witness_depth;
        for (const std::string& cmd : commands) {
            CommandResult r = run_analysis(cmd, graph, opts);
            records.push_back(std::move(r.record));
            status = std::max(status, r.status);
        }
    } catch (const Error& e) {
        records.push_back(error_record(commands.size() == 1 ? commands[0] : "run", e));
        status = exit_status_for(e.code());
    }
    emit(g, report_to_string(make_report(records)));
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature and isoperimetric constants of tessellating metric graphs"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--budget-edges", g.budget_edges, "Largest edge subset enumerated")->check(CLI::PositiveNumber);
    app.add_option("--budget-generators", g.budget_generators, "Largest generator vertex set")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-yield", g.max_yield, "Hard cap on enumerated subsets")->check(CLI::PositiveNumber);
    app.add_option("--tolerance", g.tolerance, "Tolerance for real comparisons")->check(CLI::PositiveNumber);
    app.add_option("--workers", g.workers, "Enumeration threads")->check(CLI::PositiveNumber);
    app.add_option("--output", g.output, "Report or graph file (default stdout)");

    std::string input, family;
    int witness_depth = 0;
    std::string selected;
    for (const std::string& cmd : analysis_commands()) {
        CLI::App* sub = app.add_subcommand(cmd, "Run the " + cmd + " analysis");
        sub->fallthrough();
        sub->add_option("input", input, "Graph interchange file");
        sub->add_option("--family", family, "Generate the input, e.g. pq:p=7,q=3,radius=3");
        if (cmd == "witness") sub->add_option("--depth", witness_depth, "Largest witness depth l");
        sub->callback([&, cmd] { selected = cmd; });
    }

    std::string commands;
    CLI::App* run = app.add_subcommand("run", "Run several analyses into one report");
    run->fallthrough();
    run->add_option("input", input, "Graph interchange file");
    run->add_option("--family", family, "Generate the input");
    run->add_option("--commands", commands, "Comma-separated analyses")->required();
    run->callback([&] { selected = "run"; });

    CLI::App* gen = app.add_subcommand("gen", "Write a generated graph file");
    gen->fallthrough();
    gen->require_subcommand(1);
    GraphSpec generated;
    int p = 3, radius = 1, depth = 2, k = 3, rows = 2, cols = 2, n = 4;
    std::string q = "inf";
    bool sealed = false;
    std::optional<unsigned> seed;
    auto add_common = [&](CLI::App* s) {
        s->fallthrough();
        s->add_option("--random-lengths", seed, "Replace lengths by random rationals from this seed");
    };
    CLI::App* gpq = gen->add_subcommand("pq", "Ball of the (p,q) tessellation");
    gpq->add_option("--p", p)->required();
    gpq->add_option("--q", q, "Integer or inf")->required();
    gpq->add_option("--radius", radius)->required();
    gpq->add_flag("--sealed", sealed, "Drop the frontier to get a finite graph");
    add_common(gpq);
    CLI::App* ggk = gen->add_subcommand("gk", "Truncation of G_k");
    ggk->add_option("--k", k)->required();
    ggk->add_option("--rows", rows);
    ggk->add_option("--cols", cols);
    ggk->add_option("--depth", depth);
    add_common(ggk);
    CLI::App* gtree = gen->add_subcommand("tree", "Regular tree ball");
    gtree->add_option("--p", p)->required();
    gtree->add_option("--depth", depth)->required();
    add_common(gtree);
    CLI::App* gne = gen->add_subcommand("netree", "Regular tree ball with one long edge");
    gne->add_option("--p", p)->required();
    gne->add_option("--depth", depth)->required();
    add_common(gne);
    CLI::App* gwheel = gen->add_subcommand("wheel", "Wheel graph");
    gwheel->add_option("--n", n)->required();
    add_common(gwheel);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            try {
                if (gpq->parsed()) {
                    generated = gen_pq_ball_spec({p, get_q(q)}, radius);
                    if (sealed) generated = seal_ball(generated);
                } else if (ggk->parsed()) {
                    generated = gen_Gk_spec({k, rows, cols, depth});
                } else if (gtree->parsed()) {
                    generated = gen_pq_ball_spec({p, std::nullopt}, depth);
                } else if (gne->parsed()) {
                    generated = gen_nonequilateral_tree_spec(p, depth);
                } else {
                    generated = gen_wheel_spec(n);
                }
                if (seed) generated = randomize_lengths(generated, *seed);
            } catch (const Error& e) {
                std::cerr << e.what() << "\n";
                emit(g, report_to_string(make_report({error_record("gen", e)})));
                return exit_status_for(e.code());
            }
            emit(g, graph_spec_to_text(generated));
            return kExitOk;
        }
        if (selected == "run") {
            std::vector<std::string> list;
            std::stringstream ss(commands);
            std::string c;
            while (std::getline(ss, c, ','))
                if (!c.empty()) list.push_back(c);
            return run_commands(g, list, input, family, witness_depth);
        }
        return run_commands(g, {selected}, input, family, witness_depth);
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
}
