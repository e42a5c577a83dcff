#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/configuration.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/rational.hpp"

namespace pebbling {

// Rooted weighted subtree on the host graph. Tree membership: v is in the tree
// iff v == root or parent[v] >= 0. Weight rules: w(root) = 0, weights are zero
// outside the tree, and every tree vertex that is neither the root nor one of
// its host-graph neighbors satisfies w(parent) >= 2 w(v).
struct Strategy {
    const Graph* host = nullptr;
    Vertex root = -1;
    std::string name;
    std::vector<Vertex> parent;    // -1 = not in tree (root also -1)
    std::vector<Rational> weight;  // indexed by vertex

    bool in_tree(Vertex v) const { return v == root || parent.at(v) >= 0; }
};

struct StrategyViolation {
    Vertex vertex;
    std::string what;
};

inline std::vector<StrategyViolation> validate_strategy(const Strategy& s) {
    std::vector<StrategyViolation> out;
    const Graph& g = *s.host;
    auto name = [&](Vertex v) { return g.vertex_name(v); };
    if (s.root < 0 || s.root >= g.n()) return {{-1, "invalid root"}};
    if (s.weight[s.root] != 0) out.push_back({s.root, "root weight must be 0"});
    // reach the root through parent pointers to rule out cycles / detached parts
    for (Vertex v = 0; v < g.n(); ++v) {
        if (s.weight[v] < 0) out.push_back({v, "negative weight"});
        if (!s.in_tree(v)) {
            if (v != s.root && s.weight[v] != 0)
                out.push_back({v, "nonzero weight outside the tree"});
            continue;
        }
        if (v == s.root) continue;
        Vertex p = s.parent[v];
        if (p < 0 || p >= g.n() || !g.adjacent(v, p)) {
            out.push_back({v, "parent " + (p >= 0 ? name(p) : "?") + " is not a neighbor"});
            continue;
        }
        if (!s.in_tree(p)) {
            out.push_back({v, "parent " + name(p) + " is outside the tree"});
            continue;
        }
        Vertex walk = v;
        int steps = 0;
        while (walk != s.root && steps++ <= g.n()) walk = s.parent[walk];
        if (walk != s.root) {
            out.push_back({v, "parent chain does not reach the root"});
            continue;
        }
        if (!g.adjacent(v, s.root) && s.weight[p] < 2 * s.weight[v])
            out.push_back({v, "weight condition fails: w(" + name(p) + ") = " +
                                  rational_str(s.weight[p]) + " < 2*" +
                                  rational_str(s.weight[v])});
    }
    return out;
}

inline Rational strategy_weight(const Strategy& s, const Configuration& c) {
    if (&c.host() != s.host) throw std::runtime_error("strategy_weight: host mismatch");
    Rational w = 0;
    for (Vertex v = 0; v < s.host->n(); ++v)
        if (c.count(v) > 0 && s.weight[v] != 0) w += s.weight[v] * Int(c.count(v));
    return w;
}

// w_T(T): total weight of the strategy's own one-pebble-per-vertex configuration.
inline Rational tvalue(const Strategy& s) {
    Rational w = 0;
    for (Vertex v = 0; v < s.host->n(); ++v)
        if (v != s.root) w += s.weight[v];
    return w;
}

enum class WflVerdict { Consistent, CertifiesSolvable };

// Contrapositive of the weight-function lemma: every root-unsolvable
// configuration satisfies w_T(C) <= w_T(T), so exceeding it certifies
// solvability. "Consistent" carries no information.
inline WflVerdict wfl_check(const Strategy& s, const Configuration& c) {
    return strategy_weight(s, c) > tvalue(s) ? WflVerdict::CertifiesSolvable
                                             : WflVerdict::Consistent;
}

struct StrategySet {
    const Graph* host = nullptr;
    Vertex root = -1;
    std::string name;
    std::vector<Strategy> strategies;
    std::vector<std::string> notes;  // provenance/erratum remarks from the file
};

struct AggregateBound {
    Rational total;      // sum of tvalues
    Rational q;          // min positive per-vertex coefficient sum
    Vertex q_vertex;     // a vertex attaining q
    Rational pre_floor;  // total / q
    Int bound;           // floor(pre_floor) + 1
};

// Uniform coefficient aggregation: summing the per-strategy inequalities gives
// sum_i w_i(C) <= total; every non-root vertex must carry a positive coefficient
// c_v so that |C| <= total / min c_v for unsolvable C.
inline AggregateBound aggregate_bound(const StrategySet& ss) {
    if (ss.strategies.empty()) throw std::runtime_error("aggregate_bound: empty strategy set");
    const Graph& g = *ss.host;
    Rational total = 0;
    for (const auto& s : ss.strategies) total += tvalue(s);
    std::optional<Rational> q;
    Vertex qv = -1;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (v == ss.root) continue;
        Rational cv = 0;
        for (const auto& s : ss.strategies) cv += s.weight[v];
        if (cv == 0)
            throw std::runtime_error("aggregation unbounded: vertex " + g.vertex_name(v) +
                                     " has zero total coefficient");
        if (!q || cv < *q) {
            q = cv;
            qv = v;
        }
    }
    AggregateBound out;
    out.total = total;
    out.q = *q;
    out.q_vertex = qv;
    out.pre_floor = total / *q;
    out.bound = floor_rat(out.pre_floor) + 1;
    return out;
}

// Reconstruct parent edges for a bare weight list: grow the tree from the root,
// always attaching the heaviest attachable vertex, preferring the heaviest
// valid parent. A vertex v can attach under p when vp is a host edge and either
// v neighbors the root (exempt from doubling) or w(p) >= 2 w(v) with p != root.
// The attachable set is monotone, so greedy closure finds a tree iff one exists.
inline Strategy infer_strategy_tree(const Graph& g, Vertex r,
                                    const std::vector<Rational>& weights,
                                    std::string name = {}) {
    if (static_cast<int>(weights.size()) != g.n())
        throw std::runtime_error("infer_strategy_tree: weight vector size mismatch");
    if (weights[r] != 0) throw std::runtime_error("infer_strategy_tree: nonzero root weight");
    Strategy s;
    s.host = &g;
    s.root = r;
    s.name = std::move(name);
    s.parent.assign(g.n(), -1);
    s.weight = weights;
    std::vector<char> placed(g.n(), 0);
    placed[r] = 1;
    std::vector<Vertex> todo;
    for (Vertex v = 0; v < g.n(); ++v)
        if (v != r && weights[v] != 0) todo.push_back(v);
    std::sort(todo.begin(), todo.end(),
              [&](Vertex a, Vertex b) { return weights[a] > weights[b]; });
    auto valid_parent = [&](Vertex v, Vertex p) {
        if (!placed[p] || !g.adjacent(v, p)) return false;
        if (g.adjacent(v, r)) return true;
        return p != r && weights[p] >= 2 * weights[v];
    };
    bool progress = true;
    size_t remaining = todo.size();
    while (progress && remaining > 0) {
        progress = false;
        for (Vertex v : todo) {
            if (placed[v]) continue;
            Vertex best = -1;
            for (Vertex p : g.neighbors(v))
                if (valid_parent(v, p) && (best < 0 || weights[p] > weights[best])) best = p;
            if (best >= 0) {
                s.parent[v] = best;
                placed[v] = 1;
                --remaining;
                progress = true;
            }
        }
    }
    if (remaining > 0) {
        std::string stuck;
        for (Vertex v : todo)
            if (!placed[v]) stuck += (stuck.empty() ? "" : ", ") + g.vertex_name(v);
        throw std::runtime_error("no valid tree: cannot place " + stuck);
    }
    return s;
}

// Strategy file format:
//   graph <id> root <vertex>
//   strategy <name>
//   <vertex> <parent> <weight>[/<den>]
//   ...
// "#" starts a comment; "# note:" lines are collected as set notes.
inline StrategySet parse_strategy_set(std::istream& in, const Graph& g,
                                      std::string name = {}) {
    StrategySet ss;
    ss.host = &g;
    ss.name = std::move(name);
    std::string line;
    Strategy* cur = nullptr;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "#") {
            std::string rest;
            std::getline(ls, rest);
            auto pos = rest.find("note:");
            if (pos != std::string::npos) ss.notes.push_back(rest.substr(pos + 5));
            continue;
        }
        if (tok == "graph") {
            std::string gid, kw, rootTok;
            if (!(ls >> gid >> kw >> rootTok) || kw != "root")
                throw std::runtime_error("strategy parse: malformed graph line");
            if (!g.id().empty() && gid != g.id())
                throw std::runtime_error("strategy parse: file is for graph " + gid +
                                         ", not " + g.id());
            ss.root = g.vertex(rootTok);
            continue;
        }
        if (tok == "strategy") {
            std::string sname;
            ls >> sname;
            if (ss.root < 0) throw std::runtime_error("strategy parse: missing graph line");
            Strategy s;
            s.host = &g;
            s.root = ss.root;
            s.name = sname;
            s.parent.assign(g.n(), -1);
            s.weight.assign(g.n(), Rational(0));
            ss.strategies.push_back(std::move(s));
            cur = &ss.strategies.back();
            continue;
        }
        if (!cur) throw std::runtime_error("strategy parse: vertex line before any strategy");
        std::string ptok, wtok;
        if (!(ls >> ptok >> wtok))
            throw std::runtime_error("strategy parse: malformed vertex line: " + line);
        Vertex v = g.vertex(tok), p = g.vertex(ptok);
        if (cur->parent[v] >= 0 || v == cur->root)
            throw std::runtime_error("strategy parse: duplicate vertex " + tok);
        cur->parent[v] = p;
        cur->weight[v] = parse_rational(wtok);
    }
    if (ss.root < 0) throw std::runtime_error("strategy parse: missing graph line");
    return ss;
}

inline StrategySet parse_strategy_set(const std::string& text, const Graph& g,
                                      std::string name = {}) {
    std::istringstream in(text);
    return parse_strategy_set(in, g, std::move(name));
}

inline std::string serialize_strategy_set(const StrategySet& ss) {
    std::ostringstream out;
    const Graph& g = *ss.host;
    out << "graph " << g.id() << " root " << g.vertex_name(ss.root) << "\n";
    for (const auto& note : ss.notes) out << "# note:" << note << "\n";
    for (const auto& s : ss.strategies) {
        out << "strategy " << s.name << "\n";
        for (Vertex v = 0; v < g.n(); ++v)
            if (v != s.root && s.parent[v] >= 0)
                out << g.vertex_name(v) << " " << g.vertex_name(s.parent[v]) << " "
                    << rational_str(s.weight[v]) << "\n";
    }
    return out.str();
}

inline StrategySet load_strategy_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open strategy file " + path);
    auto base = path.find_last_of('/');
    std::string name = base == std::string::npos ? path : path.substr(base + 1);
    if (name.size() > 6 && name.substr(name.size() - 6) == ".strat")
        name = name.substr(0, name.size() - 6);
    return parse_strategy_set(in, g, name);
}

}  // namespace pebbling
