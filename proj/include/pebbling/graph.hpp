#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pebbling {

using Vertex = int;

// Simple connected undirected graph, immutable after build().
// Vertices are 0..n-1; each may carry a human-readable label ("v0", "x-2", "z2'", "a13").
class Graph {
public:
    Graph() = default;

    static Graph build(int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                       std::vector<std::string> labels = {}, std::string id = {}) {
        if (n <= 0) throw std::runtime_error("graph: vertex count must be positive");
        Graph g;
        g.adj_.assign(n, {});
        g.id_ = std::move(id);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::runtime_error("graph: vertex id out of range");
            if (u == v) throw std::runtime_error("graph: loop edge");
            if (g.adjacent(u, v)) throw std::runtime_error("graph: duplicate edge");
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
            g.edges_.emplace_back(std::min(u, v), std::max(u, v));
        }
        for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
        std::sort(g.edges_.begin(), g.edges_.end());
        if (!labels.empty()) {
            if (static_cast<int>(labels.size()) != n)
                throw std::runtime_error("graph: label count mismatch");
            g.labels_ = std::move(labels);
            for (int v = 0; v < n; ++v)
                if (!g.labels_[v].empty()) {
                    if (!g.by_label_.emplace(g.labels_[v], v).second)
                        throw std::runtime_error("graph: duplicate label " + g.labels_[v]);
                }
        }
        if (!g.connected()) throw std::runtime_error("graph: not connected");
        return g;
    }

    int n() const { return static_cast<int>(adj_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::string& id() const { return id_; }
    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& nb = adj_.at(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    bool cubic() const {
        for (Vertex v = 0; v < n(); ++v)
            if (degree(v) != 3) return false;
        return true;
    }

    std::string vertex_name(Vertex v) const {
        if (v >= 0 && v < n() && !labels_.empty() && !labels_[v].empty()) return labels_[v];
        return std::to_string(v);
    }

    std::optional<Vertex> by_label(const std::string& s) const {
        auto it = by_label_.find(s);
        if (it == by_label_.end()) return std::nullopt;
        return it->second;
    }

    // Resolves a label or a decimal vertex id; throws on anything else.
    Vertex vertex(const std::string& token) const {
        if (auto v = by_label(token)) return *v;
        try {
            size_t pos = 0;
            int v = std::stoi(token, &pos);
            if (pos == token.size() && v >= 0 && v < n()) return v;
        } catch (const std::exception&) {
        }
        throw std::runtime_error("unknown vertex '" + token + "' in graph " +
                                 (id_.empty() ? "<anonymous>" : id_));
    }

    const std::vector<std::string>& labels() const { return labels_; }

private:
    bool connected() const {
        std::vector<char> seen(n(), 0);
        std::queue<Vertex> q;
        q.push(0);
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : adj_[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    q.push(w);
                }
        }
        return cnt == n();
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> by_label_;
    std::string id_;
};

inline std::vector<int> bfs_distances(const Graph& g, Vertex src) {
    std::vector<int> d(g.n(), -1);
    std::queue<Vertex> q;
    d.at(src) = 0;
    q.push(src);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.neighbors(u))
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                q.push(w);
            }
    }
    return d;
}

inline int distance(const Graph& g, Vertex u, Vertex v) {
    if (v < 0 || v >= g.n()) throw std::runtime_error("distance: invalid vertex id");
    return bfs_distances(g, u).at(v);
}

inline int diameter(const Graph& g) {
    int best = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        auto d = bfs_distances(g, v);
        best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
}

// Length of a shortest cycle; throws on forests.
inline int girth(const Graph& g) {
    int best = std::numeric_limits<int>::max();
    for (Vertex root = 0; root < g.n(); ++root) {
        std::vector<int> d(g.n(), -1), par(g.n(), -1);
        std::queue<Vertex> q;
        d[root] = 0;
        q.push(root);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : g.neighbors(u)) {
                if (d[w] < 0) {
                    d[w] = d[u] + 1;
                    par[w] = u;
                    q.push(w);
                } else if (w != par[u]) {
                    best = std::min(best, d[u] + d[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) throw std::runtime_error("girth: no cycle");
    return best;
}

// N_k[w] = closed ball, sorted by vertex id.
inline std::vector<Vertex> ball(const Graph& g, Vertex w, int k) {
    auto d = bfs_distances(g, w);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.n(); ++v)
        if (d[v] <= k) out.push_back(v);
    return out;
}

// All vertices on at least one shortest u-v path: d(u,x) + d(x,v) = d(u,v).
inline std::vector<Vertex> geodesic_union(const Graph& g, Vertex u, Vertex v) {
    auto du = bfs_distances(g, u), dv = bfs_distances(g, v);
    std::vector<Vertex> out;
    for (Vertex x = 0; x < g.n(); ++x)
        if (du[x] + dv[x] == du[v]) out.push_back(x);
    return out;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // subgraph vertex -> original vertex
};

// Induced subgraph on `verts` (labels preserved). Must come out connected.
inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<Vertex> verts,
                                        std::string id = {}) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> index(g.n(), -1);
    for (size_t i = 0; i < verts.size(); ++i) index.at(verts[i]) = static_cast<int>(i);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [a, b] : g.edges())
        if (index[a] >= 0 && index[b] >= 0) edges.emplace_back(index[a], index[b]);
    std::vector<std::string> labels;
    if (!g.labels().empty()) {
        labels.reserve(verts.size());
        for (Vertex v : verts) labels.push_back(g.labels()[v]);
    }
    InducedSubgraph out;
    out.graph = Graph::build(static_cast<int>(verts.size()), edges, std::move(labels),
                             std::move(id));
    out.to_parent = std::move(verts);
    return out;
}

// A vertex map source -> target certifying the pebbling inequality
// pi(target) <= pi(source). Verification accepts the classical notion: every
// source edge either maps to a target edge or collapses to a single vertex.
// Collapsing must be allowed: a pebbling solution pushed through the map turns
// collapsed moves into pebble discards, which solvability tolerates, while the
// section lifts target configurations back into the source. Insisting on strict
// edge preservation would reject every bundled map (the 5-cycle map out of the
// Petersen graph, for one, cannot exist strictly since Petersen has no
// triangle-free proper quotient onto C5).
struct RetractMap {
    std::string name;
    Graph source;  // already restricted to the relevant portion
    Graph target;
    std::vector<Vertex> map;      // indexed by source vertex
    std::vector<Vertex> section;  // indexed by target vertex; may be empty
};

inline bool verify_retract(const RetractMap& m) {
    if (static_cast<int>(m.map.size()) != m.source.n())
        throw std::runtime_error("verify_retract: map not total on source");
    for (Vertex v : m.map)
        if (v < 0 || v >= m.target.n())
            throw std::runtime_error("verify_retract: map image out of range");
    for (auto [u, v] : m.source.edges()) {
        Vertex a = m.map[u], b = m.map[v];
        if (a != b && !m.target.adjacent(a, b)) return false;
    }
    if (!m.section.empty()) {
        if (static_cast<int>(m.section.size()) != m.target.n()) return false;
        for (Vertex x = 0; x < m.target.n(); ++x) {
            Vertex s = m.section[x];
            if (s < 0 || s >= m.source.n()) return false;
            if (m.map[s] != x) return false;  // phi(s(x)) = x
        }
        for (auto [x, y] : m.target.edges())
            if (!m.source.adjacent(m.section[x], m.section[y])) return false;
    }
    return true;
}

}  // namespace pebbling
