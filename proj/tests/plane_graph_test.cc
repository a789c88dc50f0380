#include "support.hh"

#include <cyclic/plane_graph.hh>

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace cyclic;
using testing::corpus_graph;

namespace
{
    auto face_sizes(const PlaneGraph & g) -> std::multiset<int>
    {
        std::multiset<int> s;
        for (int f = 0; f < g.face_count(); ++f)
            s.insert(g.face_size(f));
        return s;
    }
}

TEST_CASE("faces of small polyhedra")
{
    auto k4 = corpus_graph("k4");
    CHECK(face_sizes(k4) == std::multiset<int>{3, 3, 3, 3});

    auto cube = corpus_graph("cube");
    CHECK(face_sizes(cube) == std::multiset<int>{4, 4, 4, 4, 4, 4});
    CHECK(cube.vertex_count() - cube.edge_count() + cube.face_count() == 2);

    auto wheel = corpus_graph("wheel5");
    CHECK(face_sizes(wheel) == std::multiset<int>{3, 3, 3, 3, 3, 5});
}

TEST_CASE("every corpus graph satisfies Euler's formula with each edge on two faces")
{
    for (auto & name : testing::corpus) {
        CAPTURE(name);
        auto g = corpus_graph(name);
        CHECK(g.vertex_count() - g.edge_count() + g.face_count() == 2);
        int incidences = 0;
        for (auto & f : g.faces())
            incidences += static_cast<int>(f.size());
        CHECK(incidences == 2 * g.edge_count());
    }
}

TEST_CASE("cyclic degree")
{
    auto k4 = corpus_graph("k4");
    for (int v = 0; v < 4; ++v)
        CHECK(cyclic_degree(k4, v) == 3);
    auto cube = corpus_graph("cube");
    for (int v = 0; v < 8; ++v)
        CHECK(cyclic_degree(cube, v) == 6);
    auto wheel = corpus_graph("wheel5");
    int hub = 0;
    for (int v = 0; v < wheel.vertex_count(); ++v)
        if (wheel.degree(v) == 5)
            hub = v;
    CHECK(cyclic_degree(wheel, hub) == 5);
}

TEST_CASE("cyclic degree equals the degree in the explicit cyclic-adjacency graph")
{
    for (auto & name : testing::corpus) {
        CAPTURE(name);
        auto g = corpus_graph(name);
        std::vector<std::set<int>> adj(g.vertex_count());
        for (auto & f : g.faces())
            for (int u : f)
                for (int w : f)
                    if (u != w)
                        adj[u].insert(w);
        for (int v = 0; v < g.vertex_count(); ++v)
            CHECK(cyclic_degree(g, v) == static_cast<int>(adj[v].size()));
    }
}

TEST_CASE("brute-force colouring oracle")
{
    auto k4 = corpus_graph("k4");
    CHECK_FALSE(brute_force_cyclic_coloring(k4, 3));
    auto c = brute_force_cyclic_coloring(k4, 4);
    REQUIRE(c);
    CHECK(check_cyclic_coloring(k4, *c));
    CHECK(cyclic_chromatic_number(k4) == 4);

    CHECK(brute_force_cyclic_coloring(corpus_graph("cube"), 6));

    // the rim shares the 5-face and the hub sees every rim vertex
    auto wheel = corpus_graph("wheel5");
    CHECK_FALSE(brute_force_cyclic_coloring(wheel, 5));
    CHECK(cyclic_chromatic_number(wheel) == 6);
}

TEST_CASE("oracle output passes the checker and existence is monotone in k")
{
    for (auto & name : testing::corpus) {
        CAPTURE(name);
        auto g = corpus_graph(name);
        int chi = cyclic_chromatic_number(g);
        CHECK_FALSE(brute_force_cyclic_coloring(g, chi - 1));
        for (int k = chi; k <= chi + 2; ++k) {
            auto c = brute_force_cyclic_coloring(g, k);
            REQUIRE(c);
            CHECK(check_cyclic_coloring(g, *c));
        }
    }
}

TEST_CASE("colouring checker")
{
    auto k4 = corpus_graph("k4");
    CHECK(check_cyclic_coloring(k4, {{1, 2, 3, 4}, 4}));
    CHECK_FALSE(check_cyclic_coloring(k4, {{1, 2, 3, 1}, 4}));
    CHECK_THROWS_AS(check_cyclic_coloring(k4, {{1, 2, 3}, 4}), GraphError);
    CHECK_THROWS_AS(check_cyclic_coloring(k4, {{1, 2, 3, 5}, 4}), GraphError);
}

TEST_CASE("three-connectivity")
{
    CHECK(is_three_connected(corpus_graph("k4")));
    CHECK(is_three_connected(corpus_graph("cube")));
    auto path = PlaneGraph::from_rotation({{1}, {0, 2}, {1}}, true);
    CHECK_FALSE(is_three_connected(path));
    for (auto & name : testing::corpus) {
        CAPTURE(name);
        CHECK(is_three_connected(corpus_graph(name)));
    }
}

TEST_CASE("graph input errors")
{
    CHECK_THROWS_AS(parse_graph("3\n0: 1 2\n1: 0 2\n2: 1\n"), GraphError);
    CHECK_THROWS_AS(PlaneGraph::from_rotation({{1}, {0, 2}, {1}}), GraphError);
    CHECK_THROWS_AS(PlaneGraph::from_rotation({{1, 1}, {0, 0}}), GraphError);
    // K4 with one rotation reversed is not a plane embedding
    CHECK_THROWS_AS(PlaneGraph::from_rotation({{1, 2, 3}, {0, 2, 3}, {1, 0, 3}, {2, 0, 1}}), GraphError);
    try {
        parse_graph("3\n0: 1 2\n1: 0 2\n2: 1\n");
    }
    catch (const GraphError & e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("graph text round trip")
{
    for (auto & name : testing::corpus) {
        auto g = corpus_graph(name);
        auto h = parse_graph(format_graph(g));
        for (int v = 0; v < g.vertex_count(); ++v)
            CHECK(g.rotation(v) == h.rotation(v));
    }
}
