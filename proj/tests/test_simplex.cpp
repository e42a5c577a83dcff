#include <catch2/catch_amalgamated.hpp>

#include "pebbling/corpus.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/strategy.hpp"

#include "support.hpp"

using namespace pebbling;

TEST_CASE("lp_bound on a single full-support strategy") {
    // path 0-1-2, root 0, weights 2 and 1: max x1 + x2 st 2 x1 + x2 <= 3
    Graph g = path_graph(3);
    Strategy s;
    s.host = &g;
    s.root = 0;
    s.name = "arm";
    s.parent = {-1, 0, 1};
    s.weight = {Rational(0), Rational(2), Rational(1)};
    StrategySet ss{&g, 0, "one", {s}, {}};
    LpBound lb = lp_bound(ss);
    CHECK(lb.optimum == Rational(3));  // everything on the cheapest coordinate
    CHECK(lb.implied_bound == 4);
    AggregateBound ab = aggregate_bound(ss);
    CHECK(ab.bound == 4);  // q = 1, total 3
}

TEST_CASE("lp_bound is never looser than the uniform aggregation") {
    auto corpus = load_corpus();
    for (const auto& ls : corpus->sets) {
        if (!ls.valid) continue;
        INFO(ls.name);
        AggregateBound ab = aggregate_bound(ls.set);
        LpBound lb = lp_bound(ls.set);
        CHECK(lb.optimum <= ab.pre_floor);
        CHECK(lb.implied_bound <= ab.bound);
    }
}

TEST_CASE("lp_bound matches a brute-force vertex enumeration") {
    // small instances with hand-enumerable polytopes
    Graph g = cycle_graph(5);
    Strategy left, right;
    left.host = right.host = &g;
    left.root = right.root = 0;
    left.name = "L";
    right.name = "R";
    left.parent = {-1, 0, 1, -1, -1};
    left.weight = {Rational(0), Rational(2), Rational(1), Rational(0), Rational(0)};
    right.parent = {-1, -1, -1, 4, 0};
    right.weight = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(2)};
    StrategySet ss{&g, 0, "pair", {left, right}, {}};
    LpBound lb = lp_bound(ss);
    CHECK(lb.optimum == testsupport::brute_force_lp_optimum(ss));
}

TEST_CASE("uncovered vertices make the lp unbounded and throw") {
    Graph g = cycle_graph(5);
    Strategy s;
    s.host = &g;
    s.root = 0;
    s.name = "short";
    s.parent = {-1, 0, -1, -1, -1};
    s.weight = {Rational(0), Rational(1), Rational(0), Rational(0), Rational(0)};
    StrategySet ss{&g, 0, "short", {s}, {}};
    CHECK_THROWS_WITH(lp_bound(ss), Catch::Matchers::ContainsSubstring("uncovered"));
}

TEST_CASE("lp solutions are feasible and exact") {
    auto corpus = load_corpus();
    for (const auto& ls : corpus->sets) {
        if (!ls.valid) continue;
        LpBound lb = lp_bound(ls.set);
        REQUIRE(lb.solution.size() == lb.variables.size());
        for (const auto& s : ls.set.strategies) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < lb.variables.size(); ++j)
                lhs += s.weight[lb.variables[j]] * lb.solution[j];
            INFO(ls.name << " / " << s.name);
            CHECK(lhs <= tvalue(s));
        }
        Rational obj = 0;
        for (const auto& x : lb.solution) {
            CHECK(x >= 0);
            obj += x;
        }
        CHECK(obj == lb.optimum);
    }
}
