#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/bounds.hpp"
#include "pebbling/configuration.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/graph_io.hpp"
#include "pebbling/solver.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

// ---------------------------------------------------------------- builders

inline Graph petersen_graph() {
    std::vector<std::string> labels;
    for (int i = 0; i < 5; ++i) labels.push_back("u" + std::to_string(i));
    for (int i = 0; i < 5; ++i) labels.push_back("w" + std::to_string(i));
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);          // outer cycle
        e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        e.emplace_back(i, 5 + i);                // spokes
    }
    return Graph::build(10, e, labels, "petersen");
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::runtime_error("cycle: need n >= 3");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::build(n, e, {}, "cycle:" + std::to_string(n));
}

inline Graph path_graph(int n) {
    if (n < 1) throw std::runtime_error("path: need n >= 1");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::build(n, e, {}, "path:" + std::to_string(n));
}

// J_m for odd m = 2k+1: an m-cycle of spokes z_j joined to a v-cycle and to a
// single x/y Moebius cycle of length 2m (indices signed, -k..k, seam between
// positions k and -k crossing x to y).
inline Graph flower_graph(int m) {
    if (m < 3 || m % 2 == 0) throw std::runtime_error("flower: need odd m >= 3");
    int k = (m - 1) / 2;
    auto signed_of = [&](int t) { return t <= k ? t : t - m; };
    std::map<std::string, Vertex> ix;
    std::vector<std::string> labels;
    for (char c : {'v', 'x', 'y', 'z'})
        for (int t = 0; t < m; ++t) {
            std::string l = std::string(1, c) + std::to_string(signed_of(t));
            ix[l] = static_cast<Vertex>(labels.size());
            labels.push_back(l);
        }
    auto at = [&](char c, int j) { return ix.at(std::string(1, c) + std::to_string(j)); };
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int t = 0; t < m; ++t) {
        int a = signed_of(t), b = signed_of((t + 1) % m);
        e.emplace_back(at('v', a), at('v', b));
        if (!(a == k && b == -k)) {
            e.emplace_back(at('x', a), at('x', b));
            e.emplace_back(at('y', a), at('y', b));
        }
    }
    e.emplace_back(at('x', k), at('y', -k));
    e.emplace_back(at('y', k), at('x', -k));
    for (int t = 0; t < m; ++t) {
        int a = signed_of(t);
        for (char c : {'v', 'x', 'y'}) e.emplace_back(at('z', a), at(c, a));
    }
    return Graph::build(4 * m, e, labels, "flower:" + std::to_string(m));
}

// Second Blanusa snark, labeled per its two-pentagram drawing: unprimed and
// primed stars x1..x5 with hub vertices z, the hubs z3/z4 shared.
inline Graph blanusa2_graph() {
    std::vector<std::string> labels = {"x1",  "x2",  "x3",  "x4",  "x5",  "z1",
                                       "z2",  "z3",  "z4",  "z5",  "x1'", "x2'",
                                       "x3'", "x4'", "x5'", "z1'", "z2'", "z5'"};
    std::map<std::string, Vertex> ix;
    for (size_t i = 0; i < labels.size(); ++i) ix[labels[i]] = static_cast<Vertex>(i);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (std::string p : {"", "'"}) {
        auto x = [&](int i) { return ix.at("x" + std::to_string(i) + p); };
        auto z = [&](int i) { return ix.at("z" + std::to_string(i) + p); };
        e.emplace_back(x(1), x(3));
        e.emplace_back(x(3), x(5));
        e.emplace_back(x(5), x(2));
        e.emplace_back(x(2), x(4));
        e.emplace_back(x(4), x(1));
        e.emplace_back(x(1), z(1));
        e.emplace_back(x(2), z(2));
        e.emplace_back(x(5), z(5));
        e.emplace_back(z(1), z(2));
        e.emplace_back(z(1), z(5));
        e.emplace_back(x(3), ix.at("z3"));
        e.emplace_back(x(4), ix.at("z4"));
    }
    e.emplace_back(ix.at("z2"), ix.at("z2'"));
    e.emplace_back(ix.at("z5"), ix.at("z5'"));
    e.emplace_back(ix.at("z3"), ix.at("z4"));
    return Graph::build(18, e, labels, "blanusa:2");
}

// First Blanusa snark as a fixed edge list (a dot product of two Petersen
// graphs; cubic, girth 5, diameter 4, not isomorphic to blanusa:2).
inline Graph blanusa1_graph() {
    std::vector<std::pair<Vertex, Vertex>> e = {
        {0, 4},   {0, 5},   {0, 13},  {1, 2},   {1, 6},   {1, 12},  {2, 3},
        {2, 7},   {3, 4},   {3, 8},   {4, 9},   {5, 7},   {5, 8},   {6, 8},
        {6, 9},   {7, 10},  {9, 14},  {10, 11}, {10, 15}, {11, 12}, {11, 16},
        {12, 17}, {13, 15}, {13, 16}, {14, 16}, {14, 17}, {15, 17}};
    return Graph::build(18, e, {}, "blanusa:1");
}

// Watkins snark: 25-cycle a1..a25, spokes ai-bi, and five 5-cycles over the b's.
inline Graph watkins_graph() {
    std::vector<std::string> labels;
    for (int i = 1; i <= 25; ++i) labels.push_back("a" + std::to_string(i));
    for (int i = 1; i <= 25; ++i) labels.push_back("b" + std::to_string(i));
    auto a = [](int i) { return i - 1; };
    auto b = [](int i) { return 24 + i; };
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 1; i <= 25; ++i) {
        e.emplace_back(a(i), a(i % 25 + 1));
        e.emplace_back(a(i), b(i));
    }
    const int cyc[5][5] = {{1, 3, 20, 2, 19},
                           {25, 7, 24, 6, 8},
                           {4, 11, 13, 5, 12},
                           {23, 21, 14, 22, 15},
                           {18, 10, 17, 9, 16}};
    for (const auto& c : cyc)
        for (int j = 0; j < 5; ++j) e.emplace_back(b(c[j]), b(c[(j + 1) % 5]));
    return Graph::build(50, e, labels, "watkins");
}

inline Graph graph_by_id(const std::string& id) {
    auto colon = id.find(':');
    std::string base = colon == std::string::npos ? id : id.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
    auto num = [&]() {
        if (arg.empty()) throw std::runtime_error("graph id " + id + ": missing parameter");
        return std::stoi(arg);
    };
    if (base == "petersen") return petersen_graph();
    if (base == "watkins") return watkins_graph();
    if (base == "flower") return flower_graph(num());
    if (base == "cycle") return cycle_graph(num());
    if (base == "path") return path_graph(num());
    if (base == "blanusa") {
        int w = num();
        if (w == 1) return blanusa1_graph();
        if (w == 2) return blanusa2_graph();
        throw std::runtime_error("graph id " + id + ": blanusa parameter must be 1 or 2");
    }
    throw std::runtime_error("unknown graph id: " + id);
}

// Representatives of the vertex orbits (superset is fine; pi() maximizes).
inline std::vector<Vertex> orbit_hints(const Graph& g) {
    const std::string& id = g.id();
    auto by_labels = [&](std::initializer_list<const char*> ls) {
        std::vector<Vertex> out;
        for (const char* l : ls) out.push_back(g.vertex(l));
        return out;
    };
    if (id == "petersen") return by_labels({"u0"});
    if (id.rfind("flower:", 0) == 0) return by_labels({"v0", "z0", "x0"});
    if (id == "blanusa:2") return by_labels({"x1", "x2", "x3", "z1", "z2", "z3"});
    if (id.rfind("cycle:", 0) == 0) return {0};
    if (id.rfind("path:", 0) == 0) {
        std::vector<Vertex> out;
        for (Vertex v = 0; v <= (g.n() - 1) / 2; ++v) out.push_back(v);
        return out;
    }
    std::vector<Vertex> all;
    for (Vertex v = 0; v < g.n(); ++v) all.push_back(v);
    return all;
}

// ---------------------------------------------------------- named configs

struct NamedConfigSpec {
    std::string name, graph_id, root_label, provenance;
    Int size;
    std::string note;
};

inline std::vector<NamedConfigSpec> named_config_specs() {
    return {
        {"j5-fig1", "flower:5", "v0", "snl-augmented-config", 22,
         "C*(v0, x2, a=2, b=1) of size 21 plus one pebble on z-1"},
        {"blanusa2-size22", "blanusa:2", "x3", "retract", 22,
         "pullback of the cycle:9 extremal through the b2-c9 section (z2' 10, x2' 10) "
         "plus singles on z5' and x1'"},
        {"watkins-fig4", "watkins", "a1", "retract", 182,
         "the two 85-piles of watkins-fig4-bg plus twelve singles"},
        {"watkins-fig4-bg", "watkins", "a1", "retract", 170,
         "pullback of the cycle:15 extremal through the wbg-c15 section: 85 on a13, "
         "85 on a14"},
    };
}

inline Configuration build_named_config(const std::string& name, const Graph& g) {
    auto expect = [&](const char* id) {
        if (g.id() != id)
            throw std::runtime_error("config " + name + " belongs to " + std::string(id));
    };
    if (name == "j5-fig1") {
        expect("flower:5");
        Configuration c = snl_config(g, g.vertex("v0"), g.vertex("x2"), 2, 1);
        c.add(g.vertex("z-1"), 1);
        return c;
    }
    if (name == "blanusa2-size22") {
        expect("blanusa:2");
        Configuration c(g);
        c.set(g.vertex("z2'"), 10);
        c.set(g.vertex("x2'"), 10);
        c.set(g.vertex("z5'"), 1);
        c.set(g.vertex("x1'"), 1);
        return c;
    }
    if (name == "watkins-fig4" || name == "watkins-fig4-bg") {
        expect("watkins");
        Configuration c(g);
        c.set(g.vertex("a13"), 85);
        c.set(g.vertex("a14"), 85);
        if (name == "watkins-fig4")
            for (const char* l : {"a7", "b6", "a20", "a6", "a21", "a11", "a10", "b10",
                                  "b17", "b9", "b16", "a16"})
                c.set(g.vertex(l), 1);
        return c;
    }
    throw std::runtime_error("unknown named configuration: " + name);
}

// ------------------------------------------------------------- generators

namespace detail {

using WeightMap = std::map<std::string, Int>;

inline WeightMap z0_T0(int k) {
    WeightMap t;
    t["v0"] = pow2(k + 2);
    for (int j = 1; j <= k; ++j)
        t["v" + std::to_string(j)] = t["v" + std::to_string(-j)] = pow2(k + 2 - j);
    for (int j = 1; j <= k - 2; ++j) t["z" + std::to_string(j)] = t["z" + std::to_string(-j)] = 5;
    t["z" + std::to_string(k - 1)] = t["z" + std::to_string(1 - k)] = 4;
    t["z" + std::to_string(k)] = t["z" + std::to_string(-k)] = 2;
    t["x" + std::to_string(k)] = t["y" + std::to_string(k)] = 1;
    t["x" + std::to_string(-k)] = t["y" + std::to_string(-k)] = 1;
    return t;
}

inline WeightMap z0_T1(int k, char cyc, int sign) {
    // the x-cycle strategy (sign +1) and its y-side mirror (sign -1)
    WeightMap t;
    t[std::string(1, cyc) + "0"] = pow2(k + 2);
    for (int j = 1; j <= k; ++j)
        t[cyc + std::to_string(j)] = t[cyc + std::to_string(-j)] = pow2(k + 2 - j);
    t["z" + std::to_string(sign * k)] = 2;
    t["v" + std::to_string(sign * k)] = 1;
    t["z" + std::to_string(-sign * k)] = 1;
    t["z" + std::to_string(sign * (k - 1))] = 1;
    return t;
}

inline WeightMap mirror(const WeightMap& t) {
    WeightMap out;
    for (const auto& [l, w] : t) out[l.substr(0, 1) + std::to_string(-std::stoi(l.substr(1)))] = w;
    return out;
}

inline WeightMap v0_T0(int k) {
    WeightMap t;
    t["z0"] = pow2(k + 2);
    t["x0"] = t["y0"] = pow2(k + 1);
    for (int j = 1; j <= k; ++j)
        for (char c : {'x', 'y'})
            t[c + std::to_string(j)] = t[c + std::to_string(-j)] = pow2(k + 1 - j);
    t["z1"] = t["z-1"] = 4;
    t["z" + std::to_string(k)] = t["z" + std::to_string(-k)] = 1;
    return t;
}

inline WeightMap v0_T1(int k) {
    WeightMap t;
    for (int j = 1; j <= k; ++j) t["v" + std::to_string(j)] = pow2(k + 3 - j);
    t["z1"] = 1;
    for (int j = 2; j <= k - 1; ++j) t["z" + std::to_string(j)] = 5;
    t["z" + std::to_string(k)] = 4;
    t["x" + std::to_string(k - 1)] = t["y" + std::to_string(k - 1)] = 1;
    t["x" + std::to_string(k)] = t["y" + std::to_string(k)] = 2;
    t["x" + std::to_string(-k)] = t["y" + std::to_string(-k)] = 1;
    return t;
}

inline WeightMap x0_T0(int k) {
    WeightMap t;
    t["z0"] = pow2(k + 2);
    t["v0"] = t["y0"] = pow2(k + 1);
    for (int j = 1; j <= k - 1; ++j)
        for (char c : {'v', 'y'})
            t[c + std::to_string(j)] = t[c + std::to_string(-j)] = pow2(k + 1 - j);
    for (char c : {'v', 'y'}) t[c + std::to_string(k)] = t[c + std::to_string(-k)] = 2;
    return t;
}

inline WeightMap x0_T1(int k) {
    WeightMap t;
    for (int j = 1; j <= k; ++j) t["x" + std::to_string(j)] = pow2(k + 3 - j);
    t["z1"] = 5;
    t["z2"] = pow2(k);
    for (int j = 3; j <= k - 1; ++j) t["z" + std::to_string(j)] = 5;
    t["z" + std::to_string(k)] = 4;
    t["v" + std::to_string(k - 1)] = 1;
    t["y" + std::to_string(k - 1)] = 1;
    t["v" + std::to_string(k)] = 2;
    t["y" + std::to_string(k)] = 1;
    t["y" + std::to_string(-k)] = 2;
    t["z" + std::to_string(-k)] = 1;
    t["v" + std::to_string(-k)] = 1;
    return t;
}

inline Strategy strategy_from_map(const Graph& g, Vertex root, const WeightMap& m,
                                  std::string name) {
    std::vector<Rational> w(g.n(), Rational(0));
    for (const auto& [l, wt] : m) w[g.vertex(l)] = Rational(wt);
    return infer_strategy_tree(g, root, w, std::move(name));
}

}  // namespace detail

// The general-m strategy family. pre: g is flower:m with m = 2k+1, and
// k >= 2 for z0, k >= 3 for v0, k >= 4 for x0 (below that the printed sets
// are bespoke and ship as data files).
inline StrategySet generate_jm_strategies(const Graph& g, const std::string& root) {
    if (g.id().rfind("flower:", 0) != 0)
        throw std::runtime_error("generate_jm_strategies: not a flower graph");
    int m = std::stoi(g.id().substr(7));
    int k = (m - 1) / 2;
    int min_k = root == "z0" ? 2 : root == "v0" ? 3 : root == "x0" ? 4 : -1;
    if (min_k < 0) throw std::runtime_error("generate_jm_strategies: root must be z0/v0/x0");
    if (k < min_k)
        throw std::runtime_error("generate_jm_strategies: m out of range for root " + root);
    StrategySet ss;
    ss.host = &g;
    ss.root = g.vertex(root);
    ss.name = "j" + std::to_string(m) + "-" + root + "-generated";
    using detail::strategy_from_map;
    if (root == "z0") {
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::z0_T0(k), "T0"));
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::z0_T1(k, 'x', 1), "T1"));
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::z0_T1(k, 'y', -1), "T-1"));
    } else if (root == "v0") {
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::v0_T0(k), "T0"));
        auto t1 = detail::v0_T1(k);
        ss.strategies.push_back(strategy_from_map(g, ss.root, t1, "T1"));
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::mirror(t1), "T-1"));
    } else {
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::x0_T0(k), "T0"));
        auto t1 = detail::x0_T1(k);
        ss.strategies.push_back(strategy_from_map(g, ss.root, t1, "T1"));
        ss.strategies.push_back(strategy_from_map(g, ss.root, detail::mirror(t1), "T-1"));
    }
    return ss;
}

// ------------------------------------------------------------------ table

struct TableRow {
    std::string id;
    std::string n, diam, lower, upper;  // printed values; the flower:m row is symbolic
    bool construction_available = true;
    std::string note;
};

inline std::vector<TableRow> table1_expectations() {
    return {
        {"petersen", "10", "2", "10", "10", true, ""},
        {"flower:3", "12", "3", "12", "13", true, ""},
        {"flower:5", "20", "4", "23", "30", true, ""},
        {"flower:7", "28", "5", "41", "61", true,
         "lower cites the C* size 2^{k+2}+8; the scan maximum is 2^{k+2}+7"},
        {"flower:m", "4m", "k+2", "2^{k+2}+9", "floor(9*2^{k+2}/5+2k-18/5)+1", true,
         "m = 2k+1 >= 7; lower carries the same C* size discrepancy"},
        {"blanusa:1", "18", "4", "23", "34", true,
         "bounds carried over from blanusa:2 artifacts; no blanusa:1-specific data"},
        {"blanusa:2", "18", "4", "23", "34", true,
         "upper relies on six per-root strategy sets of which two do not validate"},
        {"loupekine:1", "22", "4", "24", "271", false,
         "construction-unavailable; printed lower exceeds the basic bound 22"},
        {"loupekine:2", "22", "4", "24", "271", false,
         "construction-unavailable; printed lower exceeds the basic bound 22"},
        {"double-star", "30", "4", "32", "391", false,
         "construction-unavailable; printed lower exceeds the basic bound 30"},
        {"szekeres", "50", "7", "128", "5462", false, "construction-unavailable"},
        {"watkins", "50", "7", "183", "5462", true,
         "lower is proof-backed; the artifact certifies 171 plus component checks"},
    };
}

// ---------------------------------------------- bundled set expectations

struct SetExpectation {
    std::string name, graph_id, root_label;
    std::optional<Int> reference_bound;  // concluded integer bound, when stated
    std::optional<Int> computed_bound;   // what validation + aggregation yields
    bool valid = true;                   // whether every strategy validates
    std::string note;
};

inline std::vector<SetExpectation> strategy_expectations() {
    return {
        {"j3-z0", "flower:3", "z0", Int(13), Int(13), true, ""},
        {"j3-v0", "flower:3", "v0", Int(13), Int(13), true, ""},
        {"j3-x0", "flower:3", "x0", Int(13), Int(13), true, ""},
        {"j5-z0", "flower:5", "z0", Int(30), Int(30), true,
         "T-1 ships as the mirror of T1; the printed T-1 list is not a tree"},
        {"j5-v0", "flower:5", "v0", Int(30), Int(30), true,
         "T0 ships x-2,y-2 at weight 2; the printed 1 strands z-2"},
        {"j5-x0", "flower:5", "x0", Int(30), Int(30), true,
         "printed running total says 146; the list sums to 147, same bound"},
        {"j7-v0", "flower:7", "v0", Int(56), Int(56), true, ""},
        {"j7-x0", "flower:7", "x0", Int(57), Int(57), true,
         "ships without the stray y3 weight in T0; with it the sum is 285 giving 58"},
        {"j9-x0", "flower:9", "x0", std::nullopt, Int(191), true,
         "no concluded bound accompanies this set; the bound here is recomputed"},
        {"b2-x3", "blanusa:2", "x3", Int(34), Int(34), true,
         "T3 ships with the z2' unit weight that the stated total 236 requires"},
        {"b2-x1", "blanusa:2", "x1", Int(31), std::nullopt, false,
         "printed as-is: T1 and T3 are not trees (the x3' branch and x1' cannot attach)"},
        {"b2-x2", "blanusa:2", "x2", Int(32), Int(59), true,
         "T3 completed with the one missing weight (x5' 1); aggregation then gives 59"},
        {"b2-z1", "blanusa:2", "z1", Int(27), std::nullopt, false,
         "printed as-is: T2 is not a tree and x2' is uncovered"},
        {"b2-z2", "blanusa:2", "z2", Int(31), Int(31), true, ""},
        {"b2-z3", "blanusa:2", "z3", Int(33), Int(33), true,
         "the accompanying prose fraction 133/5 does not describe this set"},
    };
}

// ------------------------------------------------------------ watkins ops

// No-argument surface over weight_case_checks with the frozen expected values
// and the prose-comparison notes.
inline WeightCheckReport watkins_weight_checks() {
    Graph w = watkins_graph();
    Configuration cbg = build_named_config("watkins-fig4-bg", w);
    WeightCheckReport rep = weight_case_checks(w, cbg, w.vertex("a1"));
    std::map<std::string, Rational> expected = {{"a2a1", Rational(255, 256)},
                                                {"b1a1", Rational(85, 128)},
                                                {"a25a1", Rational(255, 256)}};
    for (const auto& c : rep.cases) {
        auto it = expected.find(c.entry_edge);
        if (it == expected.end() || it->second != c.a1_weight)
            rep.flags.push_back("case " + c.entry_edge + " drifted from the frozen value");
    }
    for (const auto& c : rep.cases) {
        if (c.entry_edge == "b1a1" && c.a1_weight != Rational(255, 256))
            rep.flags.push_back(
                "b1a1: described as the same calculation, computes " +
                rational_str(c.a1_weight) + " instead of 255/256");
        if (c.entry_edge == "a25a1" && c.a1_weight >= Rational(255, 256))
            rep.flags.push_back(
                "a25a1: described as a smaller calculation, computes " +
                rational_str(c.a1_weight) + " which is not smaller");
    }
    return rep;
}

// ------------------------------------------------------------ corpus load

struct LoadedConfig {
    std::string name, graph_id, root_label, provenance;
    Vertex root = -1;
    Configuration config;
};

struct LoadedSet {
    std::string name, graph_id;
    StrategySet set;
    bool valid = false;
    std::optional<Int> computed_bound;
};

struct LoadedRetract {
    std::string name, source_id, target_id;
    std::vector<std::string> portion;  // source labels; empty = whole graph
    RetractMap map;
};

struct Corpus {
    std::string dir;
    std::map<std::string, Graph> graphs;  // node-stable; hosts point in here
    std::vector<LoadedConfig> configs;
    std::vector<LoadedSet> sets;
    std::vector<LoadedRetract> retracts;
    std::vector<TableRow> table;

    Corpus() = default;
    Corpus(const Corpus&) = delete;
    Corpus& operator=(const Corpus&) = delete;

    const Graph& graph(const std::string& id) const {
        auto it = graphs.find(id);
        if (it == graphs.end()) throw std::runtime_error("corpus: no graph " + id);
        return it->second;
    }
    const LoadedConfig* config(const std::string& name) const {
        for (const auto& c : configs)
            if (c.name == name) return &c;
        return nullptr;
    }
};

inline std::string default_corpus_dir() {
#ifdef PEBBLING_DATA_DIR
    return PEBBLING_DATA_DIR;
#else
    return "data";
#endif
}

namespace detail {

inline std::string file_stem(const std::filesystem::path& p) { return p.stem().string(); }

inline std::string graph_id_from_stem(const std::string& stem) {
    auto dash = stem.find_last_of('-');
    if (dash == std::string::npos) return stem;
    std::string base = stem.substr(0, dash), arg = stem.substr(dash + 1);
    if (base == "flower" || base == "blanusa" || base == "cycle" || base == "path")
        return base + ":" + arg;
    return stem;
}

inline std::map<std::string, std::string> sniff_headers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string hash, key, value;
        if (!(ls >> hash)) continue;
        if (hash == "graph") {  // strategy files carry a bare graph line
            if (ls >> value) out["graph"] = value;
            continue;
        }
        if (hash != "#") continue;
        if (ls >> key >> value) out[key] = value;
    }
    return out;
}

inline void check(bool cond, const std::string& entry, const std::string& what) {
    if (!cond) throw std::runtime_error("corpus revalidation failed: " + entry + ": " + what);
}

}  // namespace detail

// Loads the corpus directory and revalidates every entry: file graphs must
// match the in-code builders, configurations their documented size and
// contents, strategy sets their expected validity and recomputed bound, and
// retract maps must verify. Any failure names the entry and the check.
inline std::unique_ptr<Corpus> load_corpus(const std::string& dir = default_corpus_dir()) {
    namespace fs = std::filesystem;
    auto corpus = std::make_unique<Corpus>();
    corpus->dir = dir;
    using detail::check;

    std::vector<fs::path> files;
    check(fs::is_directory(dir), dir, "not a directory");
    for (const char* sub : {"graphs", "configs", "strategies", "retracts"})
        check(fs::is_directory(fs::path(dir) / sub), sub, "missing corpus subdirectory");

    files.clear();
    for (const auto& e : fs::directory_iterator(fs::path(dir) / "graphs"))
        if (e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::string id = detail::graph_id_from_stem(detail::file_stem(p));
        Graph from_file = load_graph_file(p.string(), id);
        Graph built = graph_by_id(id);
        check(from_file.n() == built.n() && from_file.m() == built.m(), id,
              "vertex/edge count differs from the builder");
        check(from_file.edges() == built.edges(), id, "edge list differs from the builder");
        check(from_file.labels() == built.labels(), id, "labels differ from the builder");
        if (id == "petersen" || id == "watkins" || id.rfind("flower:", 0) == 0 ||
            id.rfind("blanusa:", 0) == 0)
            check(built.cubic(), id, "claimed cubic but is not");
        corpus->graphs.emplace(id, std::move(built));
    }

    files.clear();
    for (const auto& e : fs::directory_iterator(fs::path(dir) / "configs"))
        if (e.path().extension() == ".cfg") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    auto specs = named_config_specs();
    for (const auto& p : files) {
        std::string name = detail::file_stem(p);
        auto headers = detail::sniff_headers(p.string());
        check(headers.count("graph"), name, "missing '# graph <id>' header");
        check(headers.count("target"), name, "missing '# target <vertex>' header");
        const Graph& g = corpus->graph(headers["graph"]);
        LoadedConfig lc{name,
                        headers["graph"],
                        headers["target"],
                        headers.count("provenance") ? headers["provenance"] : "",
                        g.vertex(headers["target"]),
                        load_config_file(p.string(), g)};
        const NamedConfigSpec* spec = nullptr;
        for (const auto& s : specs)
            if (s.name == name) spec = &s;
        check(spec != nullptr, name, "no bundled expectation for this configuration");
        check(spec->graph_id == lc.graph_id, name, "graph id differs from the expectation");
        check(spec->root_label == lc.root_label, name, "target differs from the expectation");
        check(lc.config.size() == spec->size, name, "size differs from the documented value");
        Configuration rebuilt = build_named_config(name, g);
        check(rebuilt.counts() == lc.config.counts(), name,
              "contents differ from the in-code construction");
        corpus->configs.push_back(std::move(lc));
    }

    files.clear();
    for (const auto& e : fs::directory_iterator(fs::path(dir) / "strategies"))
        if (e.path().extension() == ".strat") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    auto set_exps = strategy_expectations();
    for (const auto& p : files) {
        std::string name = detail::file_stem(p);
        auto headers = detail::sniff_headers(p.string());
        check(headers.count("graph"), name, "missing graph line");
        const Graph& g = corpus->graph(headers["graph"]);
        LoadedSet ls;
        ls.name = name;
        ls.graph_id = headers["graph"];
        ls.set = load_strategy_file(p.string(), g);
        const SetExpectation* exp = nullptr;
        for (const auto& s : set_exps)
            if (s.name == name) exp = &s;
        check(exp != nullptr, name, "no bundled expectation for this strategy set");
        check(exp->root_label == g.vertex_name(ls.set.root), name,
              "root differs from the expectation");
        ls.valid = true;
        for (const auto& st : ls.set.strategies)
            if (!validate_strategy(st).empty()) ls.valid = false;
        check(ls.valid == exp->valid, name,
              ls.valid ? "expected validation failures are absent"
                       : "strategy validation failed unexpectedly");
        if (ls.valid) {
            try {
                ls.computed_bound = aggregate_bound(ls.set).bound;
            } catch (const std::exception&) {
                ls.computed_bound = std::nullopt;  // uncovered vertex
            }
        }
        check(ls.computed_bound == exp->computed_bound, name,
              "recomputed bound differs from the bundled expectation");
        corpus->sets.push_back(std::move(ls));
    }

    files.clear();
    for (const auto& e : fs::directory_iterator(fs::path(dir) / "retracts"))
        if (e.path().extension() == ".map") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::string name = detail::file_stem(p);
        std::ifstream in(p.string());
        check(bool(in), name, "cannot open");
        LoadedRetract lr;
        lr.name = name;
        std::vector<std::pair<std::string, std::string>> map_lines;
        std::vector<std::pair<std::string, std::string>> section_lines;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string tok;
            if (!(ls >> tok) || tok == "#") continue;
            if (tok == "source") {
                ls >> lr.source_id;
            } else if (tok == "target") {
                ls >> lr.target_id;
            } else if (tok == "portion") {
                std::string l;
                while (ls >> l) lr.portion.push_back(l);
            } else if (tok == "map") {
                std::string a, b;
                check(bool(ls >> a >> b), name, "malformed map line");
                map_lines.emplace_back(a, b);
            } else if (tok == "section") {
                std::string a, b;
                check(bool(ls >> a >> b), name, "malformed section line");
                section_lines.emplace_back(a, b);
            } else {
                check(false, name, "unknown directive " + tok);
            }
        }
        check(!lr.source_id.empty() && !lr.target_id.empty(), name, "missing source/target");
        const Graph& parent = corpus->graph(lr.source_id);
        const Graph& target = corpus->graph(lr.target_id);
        Graph source = parent;
        if (!lr.portion.empty()) {
            std::vector<Vertex> verts;
            for (const auto& l : lr.portion) verts.push_back(parent.vertex(l));
            source = induced_subgraph(parent, verts, lr.source_id + "-portion").graph;
        }
        lr.map.name = name;
        lr.map.source = std::move(source);
        lr.map.target = target;
        lr.map.map.assign(lr.map.source.n(), -1);
        for (const auto& [a, b] : map_lines)
            lr.map.map.at(lr.map.source.vertex(a)) = target.vertex(b);
        for (Vertex v = 0; v < lr.map.source.n(); ++v)
            check(lr.map.map[v] >= 0, name,
                  "map not total: " + lr.map.source.vertex_name(v) + " unmapped");
        if (!section_lines.empty()) {
            lr.map.section.assign(target.n(), -1);
            for (const auto& [a, b] : section_lines)
                lr.map.section.at(target.vertex(a)) = lr.map.source.vertex(b);
            for (Vertex v = 0; v < target.n(); ++v)
                check(lr.map.section[v] >= 0, name, "section not total");
        }
        check(verify_retract(lr.map), name, "retract verification failed");
        corpus->retracts.push_back(std::move(lr));
    }

    {
        fs::path tsv = fs::path(dir) / "table1.tsv";
        check(fs::exists(tsv), "table1.tsv", "missing");
        std::ifstream in(tsv.string());
        std::string line;
        std::vector<TableRow> rows;
        bool header = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (header) {
                header = false;
                continue;
            }
            std::vector<std::string> cols;
            std::istringstream ls(line);
            std::string col;
            while (std::getline(ls, col, '\t')) cols.push_back(col);
            if (cols.size() == 6) cols.push_back("");  // empty trailing note
            check(cols.size() == 7, "table1.tsv", "row with wrong column count");
            rows.push_back({cols[0], cols[1], cols[2], cols[3], cols[4],
                            cols[5] == "available", cols[6]});
        }
        auto expect = table1_expectations();
        check(rows.size() == expect.size(), "table1.tsv", "row count differs");
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& a = rows[i];
            const auto& b = expect[i];
            check(a.id == b.id && a.n == b.n && a.diam == b.diam && a.lower == b.lower &&
                      a.upper == b.upper &&
                      a.construction_available == b.construction_available &&
                      a.note == b.note,
                  "table1.tsv row " + a.id, "differs from the bundled expectation");
        }
        corpus->table = std::move(rows);
    }
    return corpus;
}

// -------------------------------------------------------------- wiring

// Component checks backing the watkins reference lower bound: the weight case
// analysis, the verified cycle:15 retract on the W_BG portion, and the
// pullback identity between the cycle extremal and watkins-fig4-bg.
inline std::pair<bool, std::string> watkins_component_checks(const Corpus& c) {
    std::ostringstream os;
    bool ok = true;
    WeightCheckReport wr = watkins_weight_checks();
    bool weights_ok = wr.all_below_one() && wr.split_identity_ok && wr.loss_identity_ok;
    ok = ok && weights_ok;
    os << "entry-edge weights " << (weights_ok ? "all below 1" : "NOT all below 1");

    const LoadedRetract* retract = nullptr;
    for (const auto& r : c.retracts)
        if (r.name == "wbg-c15") retract = &r;
    if (!retract) {
        ok = false;
        os << "; wbg-c15 retract missing";
    } else {
        bool v = verify_retract(retract->map);
        ok = ok && v;
        os << "; wbg-c15 retract " << (v ? "verified" : "FAILED") << " (portion of "
           << retract->map.source.n() << " vertices)";
        const LoadedConfig* cbg = c.config("watkins-fig4-bg");
        if (cbg && v && !retract->map.section.empty()) {
            const Graph& target = retract->map.target;
            Configuration extremal(target);
            extremal.set(7, 85);
            extremal.set(8, 85);
            Solver solver(target, 0);
            // corroboration only: the search space beyond C11 is out of desk
            // reach, so a budgeted attempt that returns unknown is expected;
            // the closed form pi(C15) = 171 is what the retract entry uses
            SolveResult sr = solver.solve(extremal, SolveBudget{1 << 22, 5});
            ok = ok && !sr.solvable;
            os << "; cycle:15 extremal (85, 85) "
               << (sr.solvable ? "REFUTED"
                   : sr.budget_exhausted
                       ? "solver corroboration budget-exhausted (the closed form stands)"
                       : "confirmed unsolvable");
            bool match = true;
            const Graph& w = c.graph("watkins");
            Configuration pulled(w);
            for (Vertex t = 0; t < target.n(); ++t) {
                if (extremal.count(t) == 0) continue;
                Vertex s = retract->map.section[t];
                pulled.set(w.vertex(retract->map.source.vertex_name(s)), extremal.count(t));
            }
            match = pulled.counts() == cbg->config.counts();
            ok = ok && match;
            os << "; section pullback " << (match ? "equals" : "DIFFERS from")
               << " watkins-fig4-bg";
        }
    }
    const LoadedConfig* fig4 = c.config("watkins-fig4");
    if (fig4) {
        bool sz = fig4->config.size() == 182;
        ok = ok && sz;
        os << "; watkins-fig4 size " << fig4->config.size();
    }
    return {ok, os.str()};
}

// Assembles everything the corpus knows about one graph for report().
inline ReportInputs wire_report_inputs(const Corpus& c, const Graph& g, SolveBudget budget,
                                       bool include_watkins_fig4 = false) {
    ReportInputs in;
    in.budget = budget;
    in.roots = orbit_hints(g);
    for (const auto& ls : c.sets)
        if (ls.graph_id == g.id()) in.sets.push_back(&ls.set);
    if (g.id().rfind("flower:", 0) == 0) {
        int m = std::stoi(g.id().substr(7));
        int k = (m - 1) / 2;
        if (k >= 2) in.owned_sets.push_back(generate_jm_strategies(g, "z0"));
        if (k >= 3) in.owned_sets.push_back(generate_jm_strategies(g, "v0"));
        if (k >= 4) in.owned_sets.push_back(generate_jm_strategies(g, "x0"));
    }
    for (const auto& lc : c.configs) {
        if (lc.graph_id != g.id()) continue;
        if (lc.name == "watkins-fig4" && !include_watkins_fig4) continue;
        in.configs.push_back({lc.name, lc.config, lc.root, lc.provenance});
    }
    for (const auto& lr : c.retracts) {
        if (lr.source_id != g.id()) continue;
        if (lr.target_id.rfind("cycle:", 0) == 0) {
            int n = std::stoi(lr.target_id.substr(6));
            in.retracts.push_back(
                {&lr.map, cycle_pebbling_number(n), lr.target_id + " closed form"});
        }
    }
    for (const auto& row : table1_expectations()) {
        if (row.id != g.id() || !row.construction_available) continue;
        if (row.id == "flower:m") continue;
        in.formula_lower = Int(row.lower);
        in.formula_upper = Int(row.upper);
        in.formula_lower_note = "annotated reference value";
        in.formula_upper_note = "annotated reference value";
        if (!row.note.empty()) {
            in.formula_lower_note += " (" + row.note + ")";
            in.formula_upper_note += " (" + row.note + ")";
        }
    }
    if (g.id() == "watkins") {
        auto [ok, summary] = watkins_component_checks(c);
        in.formula_lower_provenance = "paper-formula + component checks";
        in.formula_lower_note = "annotated reference value; component checks " +
                                std::string(ok ? "pass" : "FAIL") + ": " + summary;
    }
    if (g.id() == "petersen" || g.id().rfind("cycle:", 0) == 0 ||
        g.id().rfind("path:", 0) == 0)
        in.attempt_exhaustive = true;
    return in;
}

// ------------------------------------------------------------- reproduce

struct RowResult {
    TableRow row;
    std::string status;  // PASS | FLAG
    std::string computed_lower, computed_upper;
    std::vector<std::string> notes;
};

struct ReproduceResult {
    std::vector<RowResult> rows;
    bool any_flag = false;
};

// Per-row comparison of recomputed certified bounds against the printed table.
// FLAG marks rows whose certified value differs from the printed one for a
// reason the erratum notes explain; it is not a failure of the tooling.
inline ReproduceResult reproduce_table1(const Corpus& c, SolveBudget budget = {0, 60},
                                        bool include_watkins_fig4 = false) {
    ReproduceResult out;
    for (const auto& row : c.table) {
        RowResult rr;
        rr.row = row;
        bool lower_ok = false, upper_ok = false;
        if (row.id == "flower:m") {
            // symbolic row: check the formulas at sampled k
            bool size_claim_ok = true, upper_formula_ok = true;
            for (int k = 3; k <= 6; ++k) {
                Graph g = flower_graph(2 * k + 1);
                SnlBest s = snl_best(g);
                Int printed_size = pow2(k + 2) + 8;
                if (s.bound - 1 != printed_size) size_claim_ok = false;
                StrategySet z0 = generate_jm_strategies(g, "z0");
                AggregateBound ab = aggregate_bound(z0);
                Int printed_upper = floor_rat(Rational(9 * pow2(k + 2) + 10 * k - 18, 5)) + 1;
                if (ab.bound != printed_upper) upper_formula_ok = false;
            }
            lower_ok = size_claim_ok;
            upper_ok = upper_formula_ok;
            if (!size_claim_ok)
                rr.notes.push_back("scan maximum |C*| is 2^{k+2}+7 at k = 3..6, one below "
                                   "the printed 2^{k+2}+8");
            if (upper_formula_ok)
                rr.notes.push_back("generated z0 aggregation reproduces the upper formula "
                                   "at k = 3..6");
            rr.computed_lower = size_claim_ok ? row.lower : "2^{k+2}+8";
            rr.computed_upper = row.upper;
        } else if (!row.construction_available) {
            int n = std::stoi(row.n), d = std::stoi(row.diam);
            Int lo = std::max(Int(n), pow2(d));
            Int up = (Int(n) - d) * (pow2(d) - 1) + 1;
            rr.computed_lower = lo.str();
            rr.computed_upper = up.str();
            lower_ok = lo.str() == row.lower;
            upper_ok = up.str() == row.upper;
            rr.notes.push_back("construction-unavailable: basic bounds from (n, D) only");
            if (!lower_ok)
                rr.notes.push_back("printed lower " + row.lower +
                                   " is not certifiable from (n, D) alone");
        } else {
            const Graph& g = c.graph(row.id);
            ReportInputs in = wire_report_inputs(c, g, budget, include_watkins_fig4);
            BoundReport rep = report(g, in);
            Int lo = 0, up = 0;
            bool have_up = false;
            for (const auto& e : rep.entries) {
                if (e.scope != "pi(G)" || !e.certified) continue;
                if (e.kind == "lower") lo = std::max(lo, e.value);
                if (e.kind == "upper") up = have_up ? std::min(up, e.value) : e.value;
                if (e.kind == "upper") have_up = true;
            }
            rr.computed_lower = lo.str();
            rr.computed_upper = up.str();
            lower_ok = lo.str() == row.lower;
            upper_ok = up.str() == row.upper;
            for (const auto& f : rep.flags) rr.notes.push_back(f);
            if (!lower_ok)
                rr.notes.push_back("certified lower bound " + lo.str() +
                                   " differs from the printed " + row.lower);
            if (!upper_ok)
                rr.notes.push_back("certified upper bound " + up.str() +
                                   " differs from the printed " + row.upper);
            if (g.id() == "watkins" && !include_watkins_fig4)
                rr.notes.push_back("watkins-fig4 unsolvability check skipped under the "
                                   "default budget; raise --budget to attempt it");
        }
        rr.status = lower_ok && upper_ok ? "PASS" : "FLAG";
        if (rr.status == "FLAG") out.any_flag = true;
        out.rows.push_back(std::move(rr));
    }
    return out;
}

}  // namespace pebbling
