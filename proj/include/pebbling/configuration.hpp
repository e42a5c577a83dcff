#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"
#include "pebbling/rational.hpp"

namespace pebbling {

// Pebble configuration on a host graph. Value semantics: apply_move returns a
// fresh configuration, so solver states can be shared and memoized safely.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(const Graph& g) : host_(&g), counts_(g.n(), 0) {}

    const Graph& host() const {
        if (!host_) throw std::runtime_error("configuration has no host graph");
        return *host_;
    }

    std::int64_t count(Vertex v) const { return counts_.at(v); }
    void set(Vertex v, std::int64_t c) {
        if (c < 0) throw std::runtime_error("configuration: negative count");
        counts_.at(v) = c;
    }
    void add(Vertex v, std::int64_t c) { set(v, count(v) + c); }

    std::int64_t size() const {
        std::int64_t s = 0;
        for (auto c : counts_) s += c;
        return s;
    }

    const std::vector<std::int64_t>& counts() const { return counts_; }

    bool is_empty(Vertex v) const { return count(v) == 0; }
    bool is_singleton(Vertex v) const { return count(v) == 1; }
    bool is_small(Vertex v) const { return count(v) <= 1; }
    bool is_big(Vertex v) const { return count(v) >= 2; }

private:
    const Graph* host_ = nullptr;
    std::vector<std::int64_t> counts_;
};

// Remove two pebbles at `from`, add one at adjacent `to`.
inline Configuration apply_move(const Configuration& c, Vertex from, Vertex to) {
    const Graph& g = c.host();
    if (!g.adjacent(from, to))
        throw std::runtime_error("apply_move: " + g.vertex_name(from) + " and " +
                                 g.vertex_name(to) + " are not adjacent");
    if (c.count(from) < 2)
        throw std::runtime_error("apply_move: fewer than 2 pebbles at " + g.vertex_name(from));
    Configuration out = c;
    out.set(from, c.count(from) - 2);
    out.add(to, 1);
    return out;
}

// sum_v C(v) * 2^{-d(v,r)}, exact.
inline Rational r_weight(const Configuration& c, Vertex r) {
    auto d = bfs_distances(c.host(), r);
    Rational w = 0;
    for (Vertex v = 0; v < c.host().n(); ++v)
        if (c.count(v) > 0) w += Rational(Int(c.count(v)), pow2(d[v]));
    return w;
}

// The small-neighborhood configuration C*_{u,v}: 2^{a+b+1}-1 pebbles on v,
// nothing else inside N_a[u] u N_b[v], one pebble everywhere outside. Requires
// the two balls disjoint; the result is then u-unsolvable.
inline Configuration snl_config(const Graph& g, Vertex u, Vertex v, int a, int b) {
    auto du = bfs_distances(g, u), dv = bfs_distances(g, v);
    for (Vertex x = 0; x < g.n(); ++x)
        if (du[x] <= a && dv[x] <= b) throw std::runtime_error("SNL hypothesis violated");
    Configuration c(g);
    Int pile = pow2(a + b + 1) - 1;
    for (Vertex x = 0; x < g.n(); ++x) {
        if (x == v)
            c.set(x, static_cast<std::int64_t>(pile));
        else if (du[x] <= a || dv[x] <= b)
            c.set(x, 0);
        else
            c.set(x, 1);
    }
    return c;
}

// Sparse text format: "vertex count" lines (label or id), "#" comments.
inline Configuration parse_config(std::istream& in, const Graph& g) {
    Configuration c(g);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        std::int64_t cnt;
        if (!(ls >> cnt)) throw std::runtime_error("config parse: malformed line: " + line);
        c.set(g.vertex(tok), cnt);
    }
    return c;
}

inline Configuration parse_config(const std::string& text, const Graph& g) {
    std::istringstream in(text);
    return parse_config(in, g);
}

inline std::string serialize_config(const Configuration& c) {
    std::ostringstream out;
    const Graph& g = c.host();
    for (Vertex v = 0; v < g.n(); ++v)
        if (c.count(v) > 0) out << g.vertex_name(v) << " " << c.count(v) << "\n";
    return out.str();
}

inline Configuration load_config_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse_config(in, g);
}

}  // namespace pebbling
