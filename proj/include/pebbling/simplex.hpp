#pragma once

#include <string>
#include <vector>

#include "pebbling/rational.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

struct LpResult {
    Rational value;
    std::vector<Rational> solution;  // one entry per variable
};

// Primal simplex, maximize c.x subject to Ax <= b, x >= 0, with b >= 0 so the
// slack basis starts feasible. Bland's rule on exact rationals: guaranteed to
// terminate, and these LPs never exceed a few dozen variables.
class Simplex {
public:
    Simplex(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
            std::vector<Rational> c)
        : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {
        for (const auto& bi : b_)
            if (bi < 0) throw std::runtime_error("simplex: negative right-hand side");
    }

    LpResult solve() {
        const size_t m = A_.size(), n = c_.size();
        // tableau rows: [A | I | b]; cost row holds reduced costs for maximize
        std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + m + 1, Rational(0)));
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < n; ++j) t[i][j] = A_[i][j];
            t[i][n + i] = 1;
            t[i][n + m] = b_[i];
        }
        std::vector<Rational> cost(n + m + 1, Rational(0));
        for (size_t j = 0; j < n; ++j) cost[j] = c_[j];
        std::vector<size_t> basis(m);
        for (size_t i = 0; i < m; ++i) basis[i] = n + i;

        for (;;) {
            size_t enter = n + m;
            for (size_t j = 0; j < n + m; ++j)
                if (cost[j] > 0) {
                    enter = j;
                    break;  // Bland: smallest improving index
                }
            if (enter == n + m) break;  // optimal
            size_t leave = m;
            Rational best_ratio = 0;
            for (size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][n + m] / t[i][enter];
                if (leave == m || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m) throw std::runtime_error("simplex: unbounded");
            pivot(t, cost, basis, leave, enter, n + m);
        }

        LpResult out;
        out.solution.assign(n, Rational(0));
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.solution[basis[i]] = t[i][n + m];
        out.value = 0;
        for (size_t j = 0; j < n; ++j) out.value += c_[j] * out.solution[j];
        return out;
    }

private:
    static void pivot(std::vector<std::vector<Rational>>& t, std::vector<Rational>& cost,
                      std::vector<size_t>& basis, size_t row, size_t col, size_t width) {
        Rational inv = t[row][col];
        for (size_t j = 0; j <= width; ++j) t[row][j] /= inv;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rational f = t[i][col];
            for (size_t j = 0; j <= width; ++j) t[i][j] -= f * t[row][j];
        }
        if (cost[col] != 0) {
            Rational f = cost[col];
            for (size_t j = 0; j <= width; ++j) cost[j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    std::vector<std::vector<Rational>> A_;
    std::vector<Rational> b_;
    std::vector<Rational> c_;
};

struct LpBound {
    Rational optimum;
    Int implied_bound;  // floor(optimum) + 1 bounds pi(G, root)
    std::vector<Rational> solution;  // per non-root vertex, in vertex order
    std::vector<Vertex> variables;   // vertex per LP variable
};

// Exact LP relaxation over the strategy constraints: maximize |C| subject to
// w_i(C) <= tvalue_i, C >= 0, C(root) = 0. Tighter than (or equal to) the
// uniform aggregation whenever both exist.
inline LpBound lp_bound(const StrategySet& ss) {
    if (ss.strategies.empty()) throw std::runtime_error("lp_bound: empty strategy set");
    const Graph& g = *ss.host;
    std::vector<Vertex> vars;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (v == ss.root) continue;
        Rational cv = 0;
        for (const auto& s : ss.strategies) cv += s.weight[v];
        if (cv == 0)
            throw std::runtime_error("lp unbounded: vertex " + g.vertex_name(v) +
                                     " is uncovered");
        vars.push_back(v);
    }
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& s : ss.strategies) {
        std::vector<Rational> row;
        row.reserve(vars.size());
        for (Vertex v : vars) row.push_back(s.weight[v]);
        A.push_back(std::move(row));
        b.push_back(tvalue(s));
    }
    std::vector<Rational> c(vars.size(), Rational(1));
    LpResult res = Simplex(std::move(A), std::move(b), std::move(c)).solve();
    LpBound out;
    out.optimum = res.value;
    out.implied_bound = floor_rat(res.value) + 1;
    out.solution = std::move(res.solution);
    out.variables = std::move(vars);
    return out;
}

}  // namespace pebbling
