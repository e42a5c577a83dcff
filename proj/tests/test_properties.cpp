#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pebbling/corpus.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/solver.hpp"

#include "support.hpp"

using namespace pebbling;
using namespace testsupport;

// Unit-sized samples of the randomized suites; the acceptance binary runs the
// full instance counts.

TEST_CASE("solvability is monotone under added pebbles") {
    std::mt19937 rng(20260815);
    std::uniform_int_distribution<int> nd(3, 12);
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = random_connected_graph(rng, nd(rng));
        Configuration small = random_config(rng, g, 2 * g.n());
        Configuration big(small);
        Configuration extra = random_config(rng, g, g.n());
        for (Vertex v = 0; v < g.n(); ++v) big.add(v, extra.count(v));
        Vertex r = std::uniform_int_distribution<int>(0, g.n() - 1)(rng);
        SolveResult s_small = is_solvable(g, small, r);
        SolveResult s_big = is_solvable(g, big, r);
        INFO("trial " << trial);
        if (s_small.solvable) {
            CHECK(s_big.solvable);
            CHECK(replay_witness(small, r, s_small.witness));
        }
        if (s_big.solvable) CHECK(replay_witness(big, r, s_big.witness));
    }
}

TEST_CASE("weight pruning never changes the verdict") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> nd(3, 8);
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = random_connected_graph(rng, nd(rng));
        Configuration c = random_config(rng, g, 2 * g.n());
        Vertex r = std::uniform_int_distribution<int>(0, g.n() - 1)(rng);
        Solver::Options pruned, plain;
        plain.weight_prune = false;
        SolveResult a = is_solvable(g, c, r, {}, pruned);
        SolveResult b = is_solvable(g, c, r, {}, plain);
        INFO("trial " << trial);
        CHECK(a.solvable == b.solvable);
    }
}

TEST_CASE("certified unsolvable configurations satisfy every strategy inequality") {
    auto corpus = load_corpus();
    const Graph& g = corpus->graph("flower:3");
    std::mt19937 rng(711);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Configuration c = random_config(rng, g, 14);
        for (const auto& ls : corpus->sets) {
            if (ls.graph_id != "flower:3" || !ls.valid) continue;
            Vertex r = ls.set.root;
            if (is_solvable(g, c, r).solvable) continue;
            ++checked;
            for (const auto& s : ls.set.strategies) {
                INFO(ls.name << " / " << s.name);
                CHECK(wfl_check(s, c) == WflVerdict::Consistent);
            }
        }
    }
    CHECK(checked > 100);  // the sample actually exercised the property
}

TEST_CASE("simplex agrees with brute-force vertex enumeration on the bundled sets") {
    auto corpus = load_corpus();
    int compared = 0;
    for (const auto& ls : corpus->sets) {
        if (ls.set.strategies.size() > 4) continue;
        if (ls.set.host->n() > 22) continue;  // the larger hosts run in acceptance
        bool covered = true;
        for (Vertex v = 0; v < ls.set.host->n() && covered; ++v) {
            if (v == ls.set.root) continue;
            Rational cv = 0;
            for (const auto& s : ls.set.strategies) cv += s.weight[v];
            if (cv == 0) covered = false;
        }
        if (!covered) continue;
        INFO(ls.name);
        CHECK(lp_bound(ls.set).optimum == brute_force_lp_optimum(ls.set));
        ++compared;
    }
    CHECK(compared >= 8);
}
