#include <catch2/catch_amalgamated.hpp>

#include "pebbling/bounds.hpp"
#include "pebbling/corpus.hpp"
#include "pebbling/solver.hpp"

using namespace pebbling;

TEST_CASE("base cases") {
    Graph g = path_graph(2);
    Configuration c(g);
    c.set(0, 1);
    CHECK(is_solvable(g, c, 0).solvable);
    CHECK_FALSE(is_solvable(g, c, 1).solvable);
    c.set(0, 2);
    SolveResult sr = is_solvable(g, c, 1);
    CHECK(sr.solvable);
    CHECK(replay_witness(c, 1, sr.witness));
}

TEST_CASE("piles along a path") {
    Graph g = path_graph(5);
    Configuration c(g);
    c.set(0, 16);
    CHECK(is_solvable(g, c, 4).solvable);
    c.set(0, 15);
    CHECK_FALSE(is_solvable(g, c, 4).solvable);
}

TEST_CASE("all ones off target is unsolvable") {
    for (const std::string id : {"cycle:5", "cycle:9", "petersen", "flower:3"}) {
        Graph g = graph_by_id(id);
        Configuration c(g);
        for (Vertex v = 1; v < g.n(); ++v) c.set(v, 1);
        INFO(id);
        CHECK_FALSE(is_solvable(g, c, 0).solvable);
    }
}

TEST_CASE("witnesses replay") {
    Graph g = graph_by_id("petersen");
    Configuration c(g);
    c.set(g.vertex("u2"), 4);
    SolveResult sr = is_solvable(g, c, g.vertex("u0"));
    REQUIRE(sr.solvable);
    CHECK(replay_witness(c, g.vertex("u0"), sr.witness));
    CHECK_FALSE(replay_witness(c, g.vertex("u3"), sr.witness));
}

TEST_CASE("node budget produces unknown") {
    Graph g = graph_by_id("flower:5");
    Configuration c = build_named_config("j5-fig1", g);
    SolveBudget tiny;
    tiny.max_nodes = 10;
    SolveResult sr = is_solvable(g, c, g.vertex("v0"), tiny);
    CHECK(sr.budget_exhausted);
    CHECK(sr.verdict() == "unknown");
}

TEST_CASE("host mismatch is rejected") {
    Graph g = cycle_graph(5), h = cycle_graph(5);
    Configuration c(g);
    c.set(1, 2);
    CHECK_THROWS(is_solvable(h, c, 0));
}

TEST_CASE("the j5 augmented configuration is v0-unsolvable") {
    Graph g = graph_by_id("flower:5");
    Configuration c = build_named_config("j5-fig1", g);
    SolveResult sr = is_solvable(g, c, g.vertex("v0"));
    CHECK_FALSE(sr.solvable);
    CHECK_FALSE(sr.budget_exhausted);
}

TEST_CASE("the bundled blanusa size-22 claim is refuted by a witness") {
    // the two big piles alone are unsolvable, but the bundled configuration
    // adds a pebble on x1', which sits on the z2' -> z1' -> x1' -> x3'
    // drainage path and tips the configuration into solvability
    Graph g = graph_by_id("blanusa:2");
    Vertex x3 = g.vertex("x3");
    Configuration bare(g);
    bare.set(g.vertex("z2'"), 10);
    bare.set(g.vertex("x2'"), 10);
    CHECK_FALSE(is_solvable(g, bare, x3).solvable);

    Configuration with_z5(bare);
    with_z5.set(g.vertex("z5'"), 1);
    CHECK_FALSE(is_solvable(g, with_z5, x3).solvable);

    Configuration bundled = build_named_config("blanusa2-size22", g);
    SolveResult sr = is_solvable(g, bundled, x3);
    REQUIRE(sr.solvable);
    CHECK(replay_witness(bundled, x3, sr.witness));
}

TEST_CASE("pi on cycles matches the closed forms") {
    for (int n = 3; n <= 9; ++n) {
        INFO("cycle " << n);
        Graph g = cycle_graph(n);
        PiResult pr = pi(g, {}, orbit_hints(g));
        REQUIRE(pr.exhaustive);
        CHECK(pr.value == cycle_pebbling_number(n));
        CHECK(pr.extremal.size() == pr.value - 1);
        CHECK_FALSE(is_solvable(g, pr.extremal, pr.root).solvable);
    }
}

TEST_CASE("pi of the petersen graph is 10") {
    Graph g = graph_by_id("petersen");
    PiResult pr = pi(g, {}, orbit_hints(g));
    REQUIRE(pr.exhaustive);
    CHECK(pr.value == 10);
    CHECK(pr.extremal.size() == 9);
    CHECK_FALSE(is_solvable(g, pr.extremal, pr.root).solvable);
}

TEST_CASE("pi_target honors bundled strategy sets as pruning aids") {
    auto corpus = load_corpus();
    const Graph& g = corpus->graph("flower:3");
    Vertex z0 = g.vertex("z0");
    std::vector<const StrategySet*> extra;
    for (const auto& ls : corpus->sets)
        if (ls.graph_id == "flower:3" && ls.set.root == z0) extra.push_back(&ls.set);
    REQUIRE_FALSE(extra.empty());
    PiResult with = pi_target(g, z0, {}, extra);
    PiResult without = pi_target(g, z0);
    REQUIRE(with.exhaustive);
    REQUIRE(without.exhaustive);
    CHECK(with.value == without.value);
    CHECK(with.nodes_explored <= without.nodes_explored);
}
