#pragma once

// Helpers shared by the unit and acceptance suites: seeded random instances
// and an independent exact LP oracle used to cross-check the simplex code.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pebbling/configuration.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/rational.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/strategy.hpp"

namespace testsupport {

using namespace pebbling;

inline Graph random_connected_graph(std::mt19937& rng, int n, double p = 0.4) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (;;) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng) < p) edges.emplace_back(u, v);
        if (edges.size() + 1 < static_cast<std::size_t>(n)) continue;
        try {
            return Graph::build(n, edges, {}, "random");
        } catch (const std::exception&) {
            // disconnected; redraw
        }
    }
}

inline Configuration random_config(std::mt19937& rng, const Graph& g, int max_total) {
    std::uniform_int_distribution<int> total_d(0, max_total);
    std::uniform_int_distribution<int> vert(0, g.n() - 1);
    Configuration c(g);
    int total = total_d(rng);
    for (int i = 0; i < total; ++i) c.add(vert(rng), 1);
    return c;
}

// Solves M x = rhs exactly; nullopt when M is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M,
                                                         std::vector<Rational> rhs) {
    std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (std::size_t k = col; k < n; ++k) M[r][k] -= f * M[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
    return x;
}

// Exact LP optimum of max sum(x) over {x >= 0, Ax <= b} by enumerating
// candidate vertices. A vertex has at most rank(A) <= m positive coordinates,
// so it suffices to try every support of size <= m against every same-size
// subset of tight strategy rows. Mirrors the variable set of lp_bound.
inline Rational brute_force_lp_optimum(const StrategySet& ss) {
    const Graph& g = *ss.host;
    std::vector<Vertex> vars;
    for (Vertex v = 0; v < g.n(); ++v)
        if (v != ss.root) vars.push_back(v);
    std::size_t m = ss.strategies.size(), nv = vars.size();
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(nv));
    std::vector<Rational> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < nv; ++j) A[i][j] = ss.strategies[i].weight[vars[j]];
        b[i] = tvalue(ss.strategies[i]);
    }

    Rational best = 0;  // x = 0 is always feasible
    std::vector<std::size_t> support;
    auto try_support = [&]() {
        std::size_t k = support.size();
        // choose k tight rows out of m
        std::vector<std::size_t> rows(k);
        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t start,
                                                                 std::size_t depth) {
            if (depth == k) {
                std::vector<std::vector<Rational>> M(k, std::vector<Rational>(k));
                std::vector<Rational> rhs(k);
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) M[i][j] = A[rows[i]][support[j]];
                    rhs[i] = b[rows[i]];
                }
                auto sol = solve_square(M, rhs);
                if (!sol) return;
                for (const Rational& x : *sol)
                    if (x < 0) return;
                // full feasibility over every strategy row
                for (std::size_t i = 0; i < m; ++i) {
                    Rational lhs = 0;
                    for (std::size_t j = 0; j < k; ++j) lhs += A[i][support[j]] * (*sol)[j];
                    if (lhs > b[i]) return;
                }
                Rational obj = 0;
                for (const Rational& x : *sol) obj += x;
                if (obj > best) best = obj;
            } else {
                for (std::size_t r = start; r < m; ++r) {
                    rows[depth] = r;
                    pick(r + 1, depth + 1);
                }
            }
        };
        pick(0, 0);
    };
    std::function<void(std::size_t)> enumerate_supports = [&](std::size_t start) {
        if (!support.empty()) try_support();
        if (support.size() == m) return;
        for (std::size_t j = start; j < nv; ++j) {
            support.push_back(j);
            enumerate_supports(j + 1);
            support.pop_back();
        }
    };
    enumerate_supports(0);
    return best;
}

}  // namespace testsupport
