#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "wickgraph/colored_graph.hpp"

using namespace wickgraph;
using namespace wickgraph::testutil;

TEST_CASE("n=1 graph: three parallel edges, one face per color pair") {
    const ColoredGraph g = n1_graph();
    CHECK(g.n() == 1);
    CHECK(g.vertex_count() == 2);
    const FaceProfile fp = face_profile(g);
    CHECK(fp.f12 == 1);
    CHECK(fp.f13 == 1);
    CHECK(fp.f23 == 1);
    CHECK(fp.connected);
    CHECK(fp.bipartite);
    CHECK(is_mst(g));
}

TEST_CASE("tetrahedron: single faces, connected, not bipartite") {
    const ColoredGraph g = tetrahedron();
    const FaceProfile fp = face_profile(g);
    CHECK(fp.f12 == 1);
    CHECK(fp.f13 == 1);
    CHECK(fp.f23 == 1);
    CHECK(fp.connected);
    CHECK_FALSE(fp.bipartite);
    CHECK(is_mst(g));
}

TEST_CASE("parallel pair: doubled color pair gives two faces") {
    const ColoredGraph g = parallel_pair();
    CHECK(count_faces(g, 1, 3) == 2);  // two digons
    CHECK(count_faces(g, 1, 2) == 1);
    CHECK(count_faces(g, 2, 3) == 1);
    CHECK_FALSE(is_mst(g));
    CHECK(is_connected(g));
    CHECK(is_bipartite(g));
}

TEST_CASE("face cycle orientation: first step follows the first color") {
    const ColoredGraph g = tetrahedron();
    const auto cycles = face_cycles(g, 1, 2);
    REQUIRE(cycles.size() == 1);
    const auto& cyc = cycles[0];
    REQUIRE(cyc.size() == 4);
    CHECK(cyc[0] == 0);
    // Edges alternate color 1, color 2 starting from the smallest vertex.
    for (size_t t = 0; t < cyc.size(); t += 2) {
        CHECK(g.partner(1, cyc[t]) == cyc[t + 1]);
        CHECK(g.partner(2, cyc[t + 1]) == cyc[(t + 2) % cyc.size()]);
    }
}

TEST_CASE("face cycles partition the vertex set") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + int(rng() % 8);
        const ColoredGraph g = random_colored_graph(n, rng);
        for (int i = 1; i <= 3; ++i) {
            for (int j = i + 1; j <= 3; ++j) {
                std::set<int> covered;
                const auto cycles = face_cycles(g, i, j);
                size_t total = 0;
                for (const auto& cyc : cycles) {
                    total += cyc.size();
                    covered.insert(cyc.begin(), cyc.end());
                }
                CHECK(total == (size_t)g.vertex_count());
                CHECK(covered.size() == (size_t)g.vertex_count());
                CHECK((int)cycles.size() == count_faces(g, i, j));
                CHECK(count_faces(g, i, j) == count_faces(g, j, i));
            }
        }
    }
}

TEST_CASE("face counts are invariant under relabeling") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + int(rng() % 7);
        const ColoredGraph g = random_colored_graph(n, rng);
        std::vector<int> perm(2 * n);
        for (int i = 0; i < 2 * n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        const ColoredGraph h = relabel(g, perm);
        CHECK(face_profile(h) == face_profile(g));
    }
}

TEST_CASE("single bicolored face forces connectivity") {
    std::mt19937_64 rng(31337);
    int singles = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + int(rng() % 6);
        const ColoredGraph g = random_colored_graph(n, rng);
        if (count_faces(g, 1, 2) == 1) {
            ++singles;
            CHECK(is_connected(g));
        }
    }
    CHECK(singles > 0);
}

TEST_CASE("disjoint union adds face counts and breaks connectivity") {
    const ColoredGraph g = tetrahedron();
    const ColoredGraph u = disjoint_union(g, g);
    CHECK(u.n() == 4);
    CHECK_FALSE(is_connected(u));
    CHECK(count_faces(u, 1, 2) == 2);
    CHECK(count_faces(u, 1, 3) == 2);
    CHECK(count_faces(u, 2, 3) == 2);
    CHECK_FALSE(is_mst(u));
}

TEST_CASE("validation rejects malformed edge lists") {
    CHECK_THROWS_AS(ColoredGraph::from_edges(2, {{0, 1}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}),
                    ValidationError);
    CHECK_THROWS_AS(
        ColoredGraph::from_edges(2, {{0, 1}, {1, 2}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}),
        ValidationError);
    CHECK_THROWS_AS(
        ColoredGraph::from_edges(2, {{0, 1}, {2, 4}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}),
        ValidationError);
    CHECK_THROWS_AS(
        ColoredGraph::from_edges(2, {{0, 0}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}),
        ValidationError);
    CHECK_THROWS_AS(ColoredGraph::from_partners({std::vector<int>{1, 0}, {1, 0}, {0, 1}}),
                    ValidationError);
    // Message names the color and vertex.
    try {
        ColoredGraph::from_edges(2, {{0, 1}, {1, 2}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}});
        CHECK(false);
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("color 1") != std::string::npos);
        CHECK(msg.find("vertex 1") != std::string::npos);
    }
}

TEST_CASE("edges() round-trips through from_edges") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + int(rng() % 8);
        const ColoredGraph g = random_colored_graph(n, rng);
        const ColoredGraph h = ColoredGraph::from_edges(n, g.edges(1), g.edges(2), g.edges(3));
        CHECK(g == h);
    }
}
