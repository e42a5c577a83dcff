// pebble: command line front end for the pebbling bounds workbench.
//
// Exit codes follow the solver verdicts: 0 solvable (or plain success),
// 1 unsolvable, 2 unknown (budget exhausted), 3 usage or input errors.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pebbling/bounds.hpp"
#include "pebbling/configuration.hpp"
#include "pebbling/corpus.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/graph_io.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/solver.hpp"
#include "pebbling/strategy.hpp"

namespace {

using namespace pebbling;
using nlohmann::ordered_json;

constexpr int kExitSolvable = 0;
constexpr int kExitUnsolvable = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

// A graph argument is either a builder id ("flower:5", "cycle:9") or a path to
// a graph file.
Graph resolve_graph(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(arg))
        return load_graph_file(arg, detail::graph_id_from_stem(fs::path(arg).stem().string()));
    return graph_by_id(arg);
}

SolveBudget seconds_budget(double s) {
    SolveBudget b;
    b.max_seconds = s;
    return b;
}

std::string name_list(const Graph& g, const std::vector<Vertex>& vs) {
    std::string out;
    for (Vertex v : vs) {
        if (!out.empty()) out += " ";
        out += g.vertex_name(v);
    }
    return out;
}

std::string indent_block(const std::string& body, const std::string& pad) {
    std::istringstream in(body);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) out << pad << line << "\n";
    return out.str();
}

int cmd_info(const std::string& graph_arg) {
    Graph g = resolve_graph(graph_arg);
    std::cout << "graph: " << g.id() << "\n";
    std::cout << "n: " << g.n() << "\n";
    std::cout << "e: " << g.m() << "\n";
    std::cout << "diameter: " << diameter(g) << "\n";
    std::cout << "girth: " << girth(g) << "\n";
    std::cout << "cubic: " << (g.cubic() ? "yes" : "no") << "\n";
    std::cout << "orbit hints: " << name_list(g, orbit_hints(g)) << "\n";
    return kExitSolvable;
}

// The config argument is a file path or the name of a bundled configuration.
// Bundled names pin the graph, so --graph must agree when both are given.
int cmd_solve(const std::string& graph_arg, const std::string& config_arg,
              const std::string& target_arg, double budget_s, bool witness) {
    namespace fs = std::filesystem;
    std::unique_ptr<Corpus> corpus;
    Graph local;
    const Graph* g = nullptr;
    std::optional<Configuration> cfg;
    std::string cfg_name;

    if (fs::is_regular_file(config_arg)) {
        if (graph_arg.empty())
            throw std::runtime_error("--graph is required with a configuration file");
        local = resolve_graph(graph_arg);
        g = &local;
        cfg = load_config_file(config_arg, *g);
        cfg_name = fs::path(config_arg).stem().string();
    } else {
        corpus = load_corpus();
        const LoadedConfig* lc = corpus->config(config_arg);
        if (!lc)
            throw std::runtime_error("unknown configuration " + config_arg +
                                     " (not a file, not a bundled name)");
        if (!graph_arg.empty() && graph_arg != lc->graph_id)
            throw std::runtime_error("configuration " + config_arg + " belongs to " +
                                     lc->graph_id + ", not " + graph_arg);
        g = &corpus->graph(lc->graph_id);
        cfg = lc->config;
        cfg_name = lc->name;
    }

    Vertex target = g->vertex(target_arg);
    SolveResult sr = is_solvable(*g, *cfg, target, seconds_budget(budget_s));

    std::cout << "graph: " << g->id() << "\n";
    std::cout << "config: " << cfg_name << " (size " << cfg->size() << ")\n";
    std::cout << "target: " << g->vertex_name(target) << "\n";
    std::cout << "verdict: " << sr.verdict() << "\n";
    std::cout << "nodes explored: " << sr.nodes_explored << "\n";
    if (sr.budget_exhausted)
        std::cout << "note: budget exhausted before a verdict\n";
    if (witness && sr.solvable && !sr.budget_exhausted) {
        std::cout << "witness (" << sr.witness.size() << " moves):\n";
        for (auto [from, to] : sr.witness)
            std::cout << "  " << g->vertex_name(from) << " -> " << g->vertex_name(to) << "\n";
        std::cout << "witness replay: "
                  << (replay_witness(*cfg, target, sr.witness) ? "ok" : "FAILED") << "\n";
    }
    if (sr.budget_exhausted) return kExitUnknown;
    return sr.solvable ? kExitSolvable : kExitUnsolvable;
}

int cmd_pi(const std::string& graph_arg, const std::string& target_arg, double budget_s) {
    Graph g = resolve_graph(graph_arg);
    SolveBudget budget = seconds_budget(budget_s);
    PiResult pr;
    std::string scope;
    if (!target_arg.empty()) {
        Vertex r = g.vertex(target_arg);
        pr = pi_target(g, r, budget);
        scope = "pi(G, " + g.vertex_name(r) + ")";
    } else {
        pr = pi(g, budget, orbit_hints(g));
        scope = "pi(G)";
    }
    std::cout << "graph: " << g.id() << "\n";
    if (pr.exhaustive) {
        std::cout << scope << " = " << pr.value << "\n";
        std::cout << "status: exhaustive\n";
    } else {
        std::cout << scope << " >= " << pr.value << "\n";
        std::cout << "status: unknown (budget exhausted; the value is a lower bound)\n";
    }
    std::cout << "nodes explored: " << pr.nodes_explored << "\n";
    std::cout << "extremal unsolvable configuration (size " << pr.extremal.size()
              << ", target " << g.vertex_name(pr.root) << "):\n";
    std::cout << indent_block(serialize_config(pr.extremal), "  ");
    return pr.exhaustive ? kExitSolvable : kExitUnknown;
}

int cmd_snl(const std::string& graph_arg, const std::string& from_arg) {
    Graph g = resolve_graph(graph_arg);
    std::optional<Vertex> from;
    if (!from_arg.empty()) from = g.vertex(from_arg);
    SnlBest s = snl_best(g, from);
    std::cout << "graph: " << g.id() << "\n";
    std::cout << "snl bound: pi(G) >= " << s.bound << "\n";
    std::cout << "witness: C*(u=" << g.vertex_name(s.u) << ", v=" << g.vertex_name(s.v)
              << ", a=" << s.a << ", b=" << s.b << "), size " << s.config.size() << "\n";
    std::cout << "configuration:\n";
    std::cout << indent_block(serialize_config(s.config), "  ");
    return kExitSolvable;
}

int cmd_wfl(const std::string& graph_arg, const std::string& strat_arg, bool lp) {
    Graph g = resolve_graph(graph_arg);
    StrategySet ss = load_strategy_file(strat_arg, g);
    std::cout << "graph: " << g.id() << "\n";
    std::cout << "set: " << ss.name << " (root " << g.vertex_name(ss.root) << ", "
              << ss.strategies.size() << " strategies)\n";
    for (const auto& note : ss.notes) std::cout << "note: " << note << "\n";
    bool all_valid = true;
    for (const auto& s : ss.strategies) {
        auto violations = validate_strategy(s);
        if (violations.empty()) {
            std::cout << "strategy " << s.name << ": valid, t(T) = " << rational_str(tvalue(s))
                      << "\n";
        } else {
            all_valid = false;
            std::cout << "strategy " << s.name << ": INVALID\n";
            for (const auto& v : violations)
                std::cout << "  " << g.vertex_name(v.vertex) << ": " << v.what << "\n";
        }
    }
    if (!all_valid) {
        std::cout << "aggregate bound: not computed (invalid strategies present)\n";
        return kExitSolvable;
    }
    try {
        AggregateBound ab = aggregate_bound(ss);
        std::cout << "aggregate: total " << rational_str(ab.total) << ", q = "
                  << rational_str(ab.q) << " (at " << g.vertex_name(ab.q_vertex)
                  << "), pre-floor " << rational_str(ab.pre_floor) << "\n";
        std::cout << "aggregate bound: pi(G, " << g.vertex_name(ss.root) << ") <= " << ab.bound
                  << "\n";
    } catch (const std::exception& ex) {
        std::cout << "aggregate bound: unavailable (" << ex.what() << ")\n";
    }
    if (lp) {
        try {
            LpBound lb = lp_bound(ss);
            std::cout << "lp optimum: " << rational_str(lb.optimum) << "\n";
            std::cout << "lp bound: pi(G, " << g.vertex_name(ss.root) << ") <= "
                      << lb.implied_bound << "\n";
        } catch (const std::exception& ex) {
            std::cout << "lp bound: unavailable (" << ex.what() << ")\n";
        }
    }
    return kExitSolvable;
}

void print_entry(const BoundEntry& e) {
    std::cout << "  " << e.scope << (e.kind == "lower" ? " >= " : " <= ") << e.value << "  ["
              << e.provenance << ", " << (e.certified ? "certified" : "uncertified") << "]\n";
    if (!e.certificate.empty()) std::cout << "    certificate: " << e.certificate << "\n";
    for (const auto& f : e.flags) std::cout << "    flag: " << f << "\n";
}

ordered_json entry_json(const BoundEntry& e) {
    ordered_json j;
    j["scope"] = e.scope;
    j["kind"] = e.kind;
    j["value"] = e.value.str();
    j["provenance"] = e.provenance;
    j["certified"] = e.certified;
    if (!e.certificate.empty()) j["certificate"] = e.certificate;
    if (!e.flags.empty()) j["flags"] = e.flags;
    return j;
}

int cmd_bounds(const std::string& graph_arg, bool json, double budget_s, bool with_fig4) {
    auto corpus = load_corpus();
    Graph local = resolve_graph(graph_arg);
    // bundled graphs must be used through the corpus copy so that the loaded
    // strategy sets (whose hosts live there) participate in the report
    const Graph& g = corpus->graphs.count(local.id()) ? corpus->graph(local.id()) : local;
    ReportInputs in = wire_report_inputs(*corpus, g, seconds_budget(budget_s), with_fig4);
    BoundReport rep = report(g, in);

    if (json) {
        ordered_json j;
        j["graph"] = rep.graph_id;
        j["lower"] = rep.lower.str();
        j["upper"] = rep.upper.str();
        j["lower_provenance"] = rep.lower_provenance;
        j["upper_provenance"] = rep.upper_provenance;
        j["entries"] = ordered_json::array();
        for (const auto& e : rep.entries) j["entries"].push_back(entry_json(e));
        j["flags"] = rep.flags;
        std::cout << j.dump(2) << "\n";
        return kExitSolvable;
    }
    std::cout << "graph: " << rep.graph_id << "\n";
    std::cout << "pi(G) in [" << rep.lower << ", " << rep.upper << "]\n";
    std::cout << "lower: " << rep.lower << " (" << rep.lower_provenance << ")\n";
    std::cout << "upper: " << rep.upper << " (" << rep.upper_provenance << ")\n";
    std::cout << "entries:\n";
    for (const auto& e : rep.entries) print_entry(e);
    if (!rep.flags.empty()) {
        std::cout << "flags:\n";
        for (const auto& f : rep.flags) std::cout << "  - " << f << "\n";
    }
    return kExitSolvable;
}

int cmd_reproduce(const std::string& what, double budget_s, bool json) {
    if (what != "table1")
        throw std::runtime_error("unknown reproduce target " + what + " (expected: table1)");
    auto corpus = load_corpus();
    bool with_fig4 = budget_s > 60;
    ReproduceResult rr = reproduce_table1(*corpus, seconds_budget(budget_s), with_fig4);
    int pass = 0, flag = 0;
    for (const auto& r : rr.rows) (r.status == "PASS" ? pass : flag)++;

    if (json) {
        ordered_json j;
        j["rows"] = ordered_json::array();
        for (const auto& r : rr.rows) {
            ordered_json row;
            row["id"] = r.row.id;
            row["status"] = r.status;
            row["printed"] = {{"lower", r.row.lower}, {"upper", r.row.upper}};
            row["computed"] = {{"lower", r.computed_lower}, {"upper", r.computed_upper}};
            row["notes"] = r.notes;
            j["rows"].push_back(std::move(row));
        }
        j["pass"] = pass;
        j["flag"] = flag;
        std::cout << j.dump(2) << "\n";
        return kExitSolvable;
    }
    for (const auto& r : rr.rows) {
        std::cout << r.row.id << ": " << r.status << "  printed (" << r.row.lower << ", "
                  << r.row.upper << ")  computed (" << r.computed_lower << ", "
                  << r.computed_upper << ")\n";
        for (const auto& note : r.notes) std::cout << "    - " << note << "\n";
    }
    std::cout << "summary: " << rr.rows.size() << " rows, " << pass << " PASS, " << flag
              << " FLAG\n";
    return kExitSolvable;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pebble: graph pebbling bounds workbench"};
    app.require_subcommand(1);

    std::string graph_arg, config_arg, target_arg, from_arg, strat_arg, what_arg;
    double budget_s = 0;
    bool witness = false, lp = false, json = false, with_fig4 = false;

    auto* info = app.add_subcommand("info", "structural summary of a graph");
    info->add_option("graph", graph_arg, "graph id or file")->required();

    auto* solve = app.add_subcommand("solve", "decide r-solvability of a configuration");
    solve->add_option("--graph", graph_arg, "graph id or file");
    solve->add_option("--config", config_arg, "configuration file or bundled name")->required();
    solve->add_option("--target", target_arg, "target vertex")->required();
    solve->add_option("--budget", budget_s, "solver budget in seconds (0 = unlimited)");
    solve->add_flag("--witness", witness, "print the move sequence when solvable");

    auto* picmd = app.add_subcommand("pi", "pebbling number by exhaustive search");
    picmd->add_option("--graph", graph_arg, "graph id or file")->required();
    picmd->add_option("--target", target_arg, "restrict to one target vertex");
    picmd->add_option("--budget", budget_s, "solver budget in seconds (0 = unlimited)");

    auto* snl = app.add_subcommand("snl", "best small-neighborhood-light lower bound");
    snl->add_option("--graph", graph_arg, "graph id or file")->required();
    snl->add_option("--from", from_arg, "fix the light-ball center u");

    auto* wfl = app.add_subcommand("wfl", "validate a strategy set and compute its bounds");
    wfl->add_option("--graph", graph_arg, "graph id or file")->required();
    wfl->add_option("--strategies", strat_arg, "strategy set file")->required();
    wfl->add_flag("--lp", lp, "also solve the weight-coefficient LP");

    auto* bounds = app.add_subcommand("bounds", "full bound report for a graph");
    bounds->add_option("--graph", graph_arg, "graph id or file")->required();
    bounds->add_option("--budget", budget_s, "seconds per solver invocation")
        ->default_val(60.0);
    bounds->add_flag("--json", json, "machine-readable output");
    bounds->add_flag("--with-watkins-fig4", with_fig4,
                     "attempt the watkins-fig4 unsolvability check");

    auto* repro = app.add_subcommand("reproduce", "recompute a bundled results table");
    repro->add_option("what", what_arg, "table to reproduce (table1)")->required();
    repro->add_option("--budget", budget_s, "seconds per solver invocation")->default_val(60.0);
    repro->add_flag("--json", json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (info->parsed()) return cmd_info(graph_arg);
        if (solve->parsed()) return cmd_solve(graph_arg, config_arg, target_arg, budget_s, witness);
        if (picmd->parsed()) return cmd_pi(graph_arg, target_arg, budget_s);
        if (snl->parsed()) return cmd_snl(graph_arg, from_arg);
        if (wfl->parsed()) return cmd_wfl(graph_arg, strat_arg, lp);
        if (bounds->parsed()) return cmd_bounds(graph_arg, json, budget_s, with_fig4);
        if (repro->parsed()) return cmd_reproduce(what_arg, budget_s, json);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
