#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pebbling/configuration.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

struct SolveBudget {
    std::uint64_t max_nodes = 0;  // 0 = unlimited
    double max_seconds = 0;       // 0 = unlimited
    bool limited() const { return max_nodes > 0 || max_seconds > 0; }
};

struct SolveResult {
    bool solvable = false;
    bool budget_exhausted = false;  // true => the answer is "unknown"
    std::vector<std::pair<Vertex, Vertex>> witness;
    std::uint64_t nodes_explored = 0;
    std::string verdict() const {
        return budget_exhausted ? "unknown" : (solvable ? "solvable" : "unsolvable");
    }
};

// Replays a move list; true iff every move is legal and a pebble ends on r.
inline bool replay_witness(const Configuration& start, Vertex r,
                           const std::vector<std::pair<Vertex, Vertex>>& witness) {
    Configuration c = start;
    try {
        for (auto [from, to] : witness) c = apply_move(c, from, to);
    } catch (const std::exception&) {
        return false;
    }
    return c.count(r) >= 1;
}

// Decides r-solvability by DFS over the move DAG (each move removes one
// pebble, so depth is bounded by |C| and no cycle detection is needed).
// Prunes: target weight below 1 (unsolvable by the weight argument), a pile of
// 2^d pebbles at distance d (solvable by halving along a geodesic). Failed
// states are memoized in a bounded direct-mapped table; evictions only cost
// re-search, never correctness. One Solver instance per (graph, target) pair;
// the memo stays valid across calls since unsolvability depends only on those.
struct SolverOptions {
    std::size_t memo_capacity = std::size_t(1) << 24;  // slots
    bool weight_prune = true;
};

class Solver {
public:
    using Options = SolverOptions;

    Solver(const Graph& g, Vertex r, Options opt = {})
        : g_(g), r_(r), opt_(opt), dist_(bfs_distances(g, r)) {
        if (r < 0 || r >= g.n()) throw std::runtime_error("solver: invalid target");
        // normalize capacity to a power of two >= the initial table size
        std::size_t cap = std::size_t(1) << 16;
        while (cap < opt_.memo_capacity && cap < (std::size_t(1) << 40)) cap <<= 1;
        opt_.memo_capacity = cap;
        maxd_ = 0;
        for (int d : dist_) maxd_ = std::max(maxd_, d);
        wt_.resize(g.n());
        for (Vertex v = 0; v < g.n(); ++v) wt_[v] = std::uint64_t(1) << (maxd_ - dist_[v]);
        one_ = std::uint64_t(1) << maxd_;
        // step parent: a fixed neighbor one step closer to r, for witness fast paths
        step_.assign(g.n(), -1);
        for (Vertex v = 0; v < g.n(); ++v)
            for (Vertex w : g.neighbors(v))
                if (dist_[w] == dist_[v] - 1) {
                    step_[v] = w;
                    break;
                }
    }

    SolveResult solve(const Configuration& c, SolveBudget budget = {}) {
        if (&c.host() != &g_) throw std::runtime_error("solver: configuration host mismatch");
        budget_ = budget;
        start_ = std::chrono::steady_clock::now();
        nodes_ = 0;
        out_of_budget_ = false;
        counts_ = c.counts();
        weight_ = 0;
        for (Vertex v = 0; v < g_.n(); ++v) weight_ += std::uint64_t(counts_[v]) * wt_[v];
        path_.clear();

        SolveResult res;
        Status st = dfs();
        res.nodes_explored = nodes_;
        total_nodes_ += nodes_;
        if (st == Status::Solvable) {
            res.solvable = true;
            res.witness = path_;
        } else if (st == Status::Unknown) {
            res.budget_exhausted = true;
        }
        return res;
    }

    std::uint64_t nodes_explored() const { return nodes_; }
    std::uint64_t total_nodes() const { return total_nodes_; }

private:
    enum class Status { Solvable, Unsolvable, Unknown };

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::array<std::uint64_t, 2> fingerprint() const {
        std::uint64_t h1 = 0x2545f4914f6cdd1dULL, h2 = 0x9e6c63d0876a9a47ULL;
        for (Vertex v = 0; v < g_.n(); ++v) {
            std::uint64_t cv = static_cast<std::uint64_t>(counts_[v]);
            h1 = mix(h1 ^ (cv + 0x100000001b3ULL * static_cast<std::uint64_t>(v)));
            h2 = mix(h2 + cv + (static_cast<std::uint64_t>(v) << 32));
        }
        if (h1 == 0 && h2 == 0) h1 = 1;  // {0,0} marks an empty slot
        return {h1, h2};
    }

    bool memo_contains(const std::array<std::uint64_t, 2>& fp) const {
        if (slots_.empty()) return false;
        const auto& s = slots_[fp[0] & mask_];
        return s[0] == fp[0] && s[1] == fp[1];
    }

    void memo_insert(const std::array<std::uint64_t, 2>& fp) {
        if (slots_.empty()) {
            slots_.assign(std::size_t(1) << 16, {0, 0});
            mask_ = slots_.size() - 1;
        } else if (used_ * 2 > slots_.size() && slots_.size() < opt_.memo_capacity) {
            std::vector<std::array<std::uint64_t, 2>> old;
            old.swap(slots_);
            slots_.assign(old.size() * 4, {0, 0});
            mask_ = slots_.size() - 1;
            used_ = 0;
            for (const auto& e : old)
                if (e[0] || e[1]) {
                    auto& s = slots_[e[0] & mask_];
                    if (!s[0] && !s[1]) ++used_;
                    s = e;
                }
        }
        auto& s = slots_[fp[0] & mask_];
        if (!s[0] && !s[1]) ++used_;
        s = fp;
    }

    bool over_budget() {
        if (out_of_budget_) return true;
        if (budget_.max_nodes && nodes_ > budget_.max_nodes) return out_of_budget_ = true;
        if (budget_.max_seconds > 0 && (nodes_ & 0xfff) == 0) {
            auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
            if (dt.count() > budget_.max_seconds) return out_of_budget_ = true;
        }
        return false;
    }

    // appends the halving witness moving 2^{dist} pebbles from v to r
    void append_halving(Vertex v) {
        while (v != r_) {
            Vertex w = step_[v];
            for (int i = 0; i < (1 << (dist_[v] - 1)); ++i) path_.emplace_back(v, w);
            v = w;
        }
    }

    Status dfs() {
        if (counts_[r_] > 0) return Status::Solvable;
        if (opt_.weight_prune && weight_ < one_) return Status::Unsolvable;
        ++nodes_;
        if (over_budget()) return Status::Unknown;
        for (Vertex v = 0; v < g_.n(); ++v)
            if (dist_[v] <= 62 && counts_[v] >= (std::int64_t(1) << dist_[v])) {
                append_halving(v);
                return Status::Solvable;
            }
        auto fp = fingerprint();
        if (memo_contains(fp)) return Status::Unsolvable;

        bool any_unknown = false;
        // weight-preserving moves (toward r) first
        for (int pass = 0; pass < 2; ++pass) {
            for (Vertex v = 0; v < g_.n(); ++v) {
                if (counts_[v] < 2) continue;
                for (Vertex w : g_.neighbors(v)) {
                    bool closer = dist_[w] < dist_[v];
                    if ((pass == 0) != closer) continue;
                    counts_[v] -= 2;
                    counts_[w] += 1;
                    std::uint64_t dw = 2 * wt_[v] - wt_[w];
                    weight_ -= dw;
                    path_.emplace_back(v, w);
                    Status st = dfs();
                    if (st == Status::Solvable) return st;
                    path_.pop_back();
                    weight_ += dw;
                    counts_[v] += 2;
                    counts_[w] -= 1;
                    if (st == Status::Unknown) any_unknown = true;
                }
            }
        }
        if (any_unknown) return Status::Unknown;
        memo_insert(fp);
        return Status::Unsolvable;
    }

    const Graph& g_;
    Vertex r_;
    Options opt_;
    std::vector<int> dist_;
    std::vector<Vertex> step_;
    std::vector<std::uint64_t> wt_;
    std::uint64_t one_ = 1;
    int maxd_ = 0;

    std::vector<std::array<std::uint64_t, 2>> slots_;
    std::size_t mask_ = 0, used_ = 0;

    std::vector<std::int64_t> counts_;
    std::uint64_t weight_ = 0;
    std::vector<std::pair<Vertex, Vertex>> path_;
    SolveBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    std::uint64_t total_nodes_ = 0;
    bool out_of_budget_ = false;
};

inline SolveResult is_solvable(const Graph& g, const Configuration& c, Vertex r,
                               SolveBudget budget = {}, Solver::Options opt = {}) {
    return Solver(g, r, opt).solve(c, budget);
}

struct PiResult {
    Int value;                 // pi(G,r) / pi(G); a lower bound when !exhaustive
    Configuration extremal;    // maximum-size unsolvable certificate found
    bool exhaustive = false;
    Vertex root = -1;
    std::uint64_t nodes_explored = 0;
    bool budget_exhausted = false;
};

namespace detail {

// BFS-tree strategy: dyadic weights 2^{maxd - d(v)}, full vertex support.
inline Strategy bfs_tree_strategy(const Graph& g, Vertex r) {
    auto dist = bfs_distances(g, r);
    int maxd = *std::max_element(dist.begin(), dist.end());
    Strategy s;
    s.host = &g;
    s.root = r;
    s.name = "bfs-tree";
    s.parent.assign(g.n(), -1);
    s.weight.assign(g.n(), Rational(0));
    for (Vertex v = 0; v < g.n(); ++v) {
        if (v == r) continue;
        for (Vertex w : g.neighbors(v))
            if (dist[w] == dist[v] - 1) {
                s.parent[v] = w;
                break;
            }
        s.weight[v] = Rational(pow2(maxd - dist[v]));
    }
    return s;
}

// One geodesic arm per root neighbor, weights halving outward. Arms give much
// tighter per-branch constraints than the single BFS tree (exact on cycles).
inline std::vector<Strategy> arm_strategies(const Graph& g, Vertex r) {
    auto dist = bfs_distances(g, r);
    std::vector<Strategy> out;
    for (Vertex x : g.neighbors(r)) {
        std::vector<Vertex> arm{x};
        Vertex cur = x;
        for (;;) {
            Vertex next = -1;
            for (Vertex w : g.neighbors(cur))
                if (dist[w] == dist[cur] + 1) {
                    next = w;
                    break;
                }
            if (next < 0) break;
            arm.push_back(next);
            cur = next;
        }
        Strategy s;
        s.host = &g;
        s.root = r;
        s.name = "arm-" + g.vertex_name(x);
        s.parent.assign(g.n(), -1);
        s.weight.assign(g.n(), Rational(0));
        int len = static_cast<int>(arm.size());
        for (int i = 0; i < len; ++i) {
            s.parent[arm[i]] = i == 0 ? r : arm[i - 1];
            s.weight[arm[i]] = Rational(pow2(len - 1 - i));
        }
        out.push_back(std::move(s));
    }
    return out;
}

// integer-scaled strategy constraint (lcm of denominators cleared)
struct ScaledConstraint {
    std::vector<std::int64_t> w;  // per vertex
    std::int64_t limit = 0;
};

inline ScaledConstraint scale_strategy(const Strategy& s) {
    Int l = 1;
    for (Vertex v = 0; v < s.host->n(); ++v)
        l = boost::multiprecision::lcm(l, denominator(s.weight[v]));
    ScaledConstraint out;
    out.w.resize(s.host->n());
    Rational lim = tvalue(s) * l;
    out.limit = static_cast<std::int64_t>(numerator(lim) / denominator(lim));
    for (Vertex v = 0; v < s.host->n(); ++v) {
        Rational wv = s.weight[v] * l;
        out.w[v] = static_cast<std::int64_t>(numerator(wv));
    }
    return out;
}

}  // namespace detail

// Exact pi(G, r): hunts for a maximum-size r-unsolvable configuration by
// descending candidate size from the LP cap; per-vertex caps and per-strategy
// weight inequalities are necessary conditions for unsolvability, so the
// enumeration is complete. Extra strategy sets (corpus data) sharpen the cap.
inline PiResult pi_target(const Graph& g, Vertex r, SolveBudget budget = {},
                          const std::vector<const StrategySet*>& extra = {}) {
    auto dist = bfs_distances(g, r);
    std::vector<Strategy> strats{detail::bfs_tree_strategy(g, r)};
    for (auto& s : detail::arm_strategies(g, r)) strats.push_back(std::move(s));
    for (const StrategySet* ss : extra) {
        if (!ss || ss->host != &g || ss->root != r) continue;
        for (const auto& s : ss->strategies)
            if (validate_strategy(s).empty()) strats.push_back(s);
    }

    StrategySet lp_set{&g, r, "pi-internal", strats, {}};
    Int s_max = lp_bound(lp_set).implied_bound - 1;

    std::vector<detail::ScaledConstraint> cons;
    cons.reserve(strats.size());
    for (const auto& s : strats) cons.push_back(detail::scale_strategy(s));

    // vertex order: far vertices first (extremal configurations live far out)
    std::vector<Vertex> order;
    for (Vertex v = 0; v < g.n(); ++v)
        if (v != r) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return dist[a] != dist[b] ? dist[a] > dist[b] : a < b;
    });

    std::vector<std::int64_t> cap(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        std::int64_t c = dist[v] <= 62 ? (std::int64_t(1) << dist[v]) - 1
                                       : std::numeric_limits<std::int64_t>::max();
        for (const auto& k : cons)
            if (k.w[v] > 0) c = std::min(c, k.limit / k.w[v]);
        cap[i] = c;
    }
    std::vector<std::int64_t> suffix(order.size() + 1, 0);
    for (size_t i = order.size(); i-- > 0;) suffix[i] = suffix[i + 1] + cap[i];

    Solver solver(g, r);
    PiResult res;
    res.root = r;
    // fallback certificate: all-ones-off-target is unsolvable in any graph
    Configuration ones(g);
    for (Vertex v = 0; v < g.n(); ++v) ones.set(v, v == r ? 0 : 1);
    res.extremal = ones;
    res.value = g.n();

    std::int64_t start = static_cast<std::int64_t>(s_max);
    std::vector<std::int64_t> counts(order.size(), 0), partial(cons.size(), 0);
    std::uint64_t nodes_local_ = 0;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(
                            budget.max_seconds > 0 ? budget.max_seconds : 1e18));

    std::function<bool(size_t, std::int64_t)> enumerate =
        [&](size_t i, std::int64_t remaining) -> bool {
        // returns true when finished normally, false on budget exhaustion
        if (res.exhaustive) return true;
        if (budget.max_nodes && solver.total_nodes() + nodes_local_ > budget.max_nodes)
            return false;
        if ((++nodes_local_ & 0x3ff) == 0 && budget.max_seconds > 0 &&
            std::chrono::steady_clock::now() > deadline)
            return false;
        if (remaining == 0) {
            Configuration c(g);
            for (size_t j = 0; j < order.size(); ++j)
                if (counts[j] > 0) c.set(order[j], counts[j]);
            SolveBudget leaf;
            if (budget.max_nodes) {
                std::uint64_t used = solver.total_nodes() + nodes_local_;
                leaf.max_nodes = budget.max_nodes > used ? budget.max_nodes - used : 1;
            }
            if (budget.max_seconds > 0) {
                auto left = std::chrono::duration<double>(
                    deadline - std::chrono::steady_clock::now());
                leaf.max_seconds = std::max(left.count(), 1e-9);
            }
            SolveResult sr = solver.solve(c, leaf);
            if (sr.budget_exhausted) return false;
            if (!sr.solvable) {
                res.extremal = c;
                res.value = c.size() + 1;
                res.exhaustive = true;
            }
            return true;
        }
        if (i == order.size() || suffix[i] < remaining) return true;
        Vertex v = order[i];
        std::int64_t hi = std::min(cap[i], remaining);
        for (std::int64_t cnt = hi; cnt >= 0; --cnt) {
            bool ok = true;
            for (size_t k = 0; k < cons.size(); ++k) {
                if (cons[k].w[v] == 0) continue;
                if (partial[k] + cons[k].w[v] * cnt > cons[k].limit) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            counts[i] = cnt;
            for (size_t k = 0; k < cons.size(); ++k) partial[k] += cons[k].w[v] * cnt;
            bool fin = enumerate(i + 1, remaining - cnt);
            for (size_t k = 0; k < cons.size(); ++k) partial[k] -= cons[k].w[v] * cnt;
            counts[i] = 0;
            if (!fin) return false;
            if (res.exhaustive) return true;
        }
        return true;
    };

    for (std::int64_t s = start; s >= 1; --s) {
        bool fin = enumerate(0, s);
        res.nodes_explored = solver.total_nodes() + nodes_local_;
        if (!fin) {
            res.budget_exhausted = true;
            return res;  // value/extremal hold the best-known lower bound
        }
        if (res.exhaustive) {
            return res;
        }
    }
    // only reachable on graphs with a solvable empty... never: size n-1 always hits
    res.exhaustive = true;
    return res;
}

// max over roots; orbit representatives may be supplied to skip symmetric work
inline PiResult pi(const Graph& g, SolveBudget budget = {}, std::vector<Vertex> roots = {},
                   const std::vector<const StrategySet*>& extra = {}) {
    if (roots.empty())
        for (Vertex v = 0; v < g.n(); ++v) roots.push_back(v);
    PiResult best;
    bool first = true;
    for (Vertex r : roots) {
        PiResult pr = pi_target(g, r, budget, extra);
        if (first || pr.value > best.value) {
            std::uint64_t acc = (first ? 0 : best.nodes_explored) + pr.nodes_explored;
            bool exh = (first || best.exhaustive) && pr.exhaustive;
            bool bud = (!first && best.budget_exhausted) || pr.budget_exhausted;
            best = std::move(pr);
            best.nodes_explored = acc;
            best.exhaustive = exh;
            best.budget_exhausted = bud;
        } else {
            best.nodes_explored += pr.nodes_explored;
            best.exhaustive = best.exhaustive && pr.exhaustive;
            best.budget_exhausted = best.budget_exhausted || pr.budget_exhausted;
        }
        first = false;
    }
    return best;
}

}  // namespace pebbling
