#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

// Text format:
//   line 1: "n m"
//   m lines: "u v" (0-based endpoints)
//   optional label lines: "# <id> <name>"
// Any other "#" line is a comment.
inline Graph parse_graph(std::istream& in, std::string id = {}) {
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::string> labels;
    bool have_labels = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "#") {
            int v;
            std::string name;
            if (ls >> v >> name) {
                if (n < 0 || v < 0 || v >= n)
                    throw std::runtime_error("graph parse: label for bad vertex id");
                labels.resize(n);
                labels[v] = name;
                have_labels = true;
            }
            continue;
        }
        std::istringstream fs(line);
        if (n < 0) {
            if (!(fs >> n >> m) || n <= 0 || m < 0)
                throw std::runtime_error("graph parse: malformed header");
            continue;
        }
        Vertex u, v;
        if (!(fs >> u >> v)) throw std::runtime_error("graph parse: malformed edge line");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw std::runtime_error("graph parse: empty input");
    if (static_cast<int>(edges.size()) != m)
        throw std::runtime_error("graph parse: edge count mismatch");
    if (!have_labels) labels.clear();
    return Graph::build(n, edges, std::move(labels), std::move(id));
}

inline Graph parse_graph(const std::string& text, std::string id = {}) {
    std::istringstream in(text);
    return parse_graph(in, std::move(id));
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.n() << " " << g.m() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    for (Vertex v = 0; v < g.n(); ++v)
        if (!g.labels().empty() && !g.labels()[v].empty())
            out << "# " << v << " " << g.labels()[v] << "\n";
    return out.str();
}

inline Graph load_graph_file(const std::string& path, std::string id = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path);
    return parse_graph(in, id.empty() ? path : std::move(id));
}

}  // namespace pebbling
