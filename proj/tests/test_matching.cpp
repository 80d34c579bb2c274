#include <doctest.h>

#include <cstdio>
#include <map>
#include <set>

#include "test_util.hpp"
#include "wickgraph/matching.hpp"

using namespace wickgraph;
using namespace wickgraph::testutil;

TEST_CASE("matching_count matches the double factorial") {
    CHECK(matching_count(0) == 1);
    CHECK(matching_count(1) == 1);
    CHECK(matching_count(2) == 3);
    CHECK(matching_count(3) == 15);
    CHECK(matching_count(4) == 105);
    CHECK(matching_count(8) == 2027025);
    CHECK(matching_count(9) == 34459425);
    CHECK_THROWS_AS(matching_count(17), CapacityError);
}

TEST_CASE("enumeration yields each matching once, in lexicographic partner order") {
    for (int m = 1; m <= 5; ++m) {
        std::vector<std::vector<int>> seen;
        std::uint64_t expected_rank = 0;
        for_each_matching(m, [&](const std::vector<int>& p, std::uint64_t rank) {
            CHECK(rank == expected_rank);
            ++expected_rank;
            seen.push_back(p);
        });
        CHECK(seen.size() == matching_count(m));
        for (size_t i = 0; i + 1 < seen.size(); ++i) CHECK(seen[i] < seen[i + 1]);
        std::set<std::vector<int>> uniq(seen.begin(), seen.end());
        CHECK(uniq.size() == seen.size());
    }
}

TEST_CASE("the first enumerated matching pairs adjacent vertices") {
    for (int m : {2, 4, 7}) {
        bool first = true;
        for_each_matching_range(m, 0, 1, [&](const std::vector<int>& p, std::uint64_t rank) {
            CHECK(rank == 0);
            CHECK(first);
            first = false;
            CHECK(p == ring_even_matching(m).partner);
        });
        CHECK_FALSE(first);
    }
}

TEST_CASE("range enumeration concatenates to the full enumeration") {
    const int m = 5;
    const std::uint64_t total = matching_count(m);
    std::vector<std::vector<int>> full;
    for_each_matching(m, [&](const std::vector<int>& p, std::uint64_t) { full.push_back(p); });
    for (std::uint64_t chunk : {std::uint64_t(1), std::uint64_t(7), std::uint64_t(64)}) {
        std::vector<std::vector<int>> stitched;
        for (std::uint64_t lo = 0; lo < total; lo += chunk) {
            for_each_matching_range(m, lo, std::min(lo + chunk, total),
                                    [&](const std::vector<int>& p, std::uint64_t rank) {
                                        CHECK(rank == stitched.size());
                                        stitched.push_back(p);
                                    });
        }
        CHECK(stitched == full);
    }
}

TEST_CASE("rank and unrank invert each other") {
    for (int m : {1, 2, 3, 4, 5}) {
        for_each_matching(m, [&](const std::vector<int>& p, std::uint64_t rank) {
            Matching mm;
            mm.partner = p;
            CHECK(matching_rank(mm) == rank);
            CHECK(matching_at(m, rank).partner == p);
        });
    }
    // Spot checks far out in a big space.
    for (std::uint64_t rank : {std::uint64_t(0), std::uint64_t(123456), matching_count(9) - 1}) {
        CHECK(matching_rank(matching_at(9, rank)) == rank);
    }
    CHECK_THROWS_AS(matching_at(3, matching_count(3)), ValidationError);
}

TEST_CASE("ring matchings interleave into one cycle") {
    std::mt19937_64 rng(5);
    for (int m : {1, 2, 5, 8}) {
        const Matching even = ring_even_matching(m);
        const Matching odd = ring_odd_matching(m);
        const ColoredGraph g = ColoredGraph::from_partners(
            {even.partner, odd.partner, random_matching_partners(m, rng)});
        CHECK(count_faces(g, 1, 2) == 1);
    }
}

TEST_CASE("faces_with_color0 on hand-checked graphs") {
    // n=1: M must pair the two vertices; every pair (M, E_c) forms one face.
    const ColoredGraph one = n1_graph();
    Matching m1;
    m1.partner = {1, 0};
    CHECK(faces_with_color0(one, m1) == 3);

    // Tetrahedron: each of the three matchings yields F = 4.
    const ColoredGraph tet = tetrahedron();
    for (const Matching& m : all_matchings(2)) {
        CHECK(faces_with_color0(tet, m) == 4);
    }

    // Mismatched sizes are rejected.
    CHECK_THROWS_AS(faces_with_color0(tet, m1), ValidationError);
}

TEST_CASE("parallel matching identity: F(E_i, G) = n + F_ij + F_ik") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + int(rng() % 8);
        const ColoredGraph g = random_colored_graph(n, rng);
        for (int i = 1; i <= 3; ++i) {
            const int j = (i == 1) ? 2 : 1;
            const int k = (i == 3) ? 2 : 3;
            const Matching m = parallel_matching(g, i);
            CHECK(faces_with_color0(g, m) ==
                  n + count_faces(g, i, j) + count_faces(g, i, k));
        }
    }
}

TEST_CASE("F stays within its envelope 3 <= F <= 3n") {
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + int(rng() % 5);
        const ColoredGraph g = random_colored_graph(n, rng);
        for_each_matching(n, [&](const std::vector<int>& p, std::uint64_t) {
            Matching m;
            m.partner = p;
            const int f = faces_with_color0(g, m);
            CHECK(f >= 3);
            CHECK(f <= 3 * n);
        });
    }
}

namespace {

// Reference maximum by plain exhaustive scan, no pruning, no sharing.
MaxFaceResult brute_max(const ColoredGraph& g) {
    MaxFaceResult res;
    res.max_f = -1;
    for_each_matching(g.n(), [&](const std::vector<int>& p, std::uint64_t) {
        Matching m;
        m.partner = p;
        const int f = faces_with_color0(g, m);
        ++res.matchings_examined;
        if (f > res.max_f) {
            res.max_f = f;
            res.witness = m;
            res.maximizer_count = 1;
        } else if (f == res.max_f) {
            ++res.maximizer_count;
        }
    });
    return res;
}

}  // namespace

TEST_CASE("max_faces agrees with the exhaustive reference") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + int(rng() % 5);
        const ColoredGraph g = random_colored_graph(n, rng);
        const MaxFaceResult ref = brute_max(g);
        const MaxFaceResult pruned = max_faces(g);
        MaxFaceOptions no_prune;
        no_prune.prune = false;
        const MaxFaceResult unpruned = max_faces(g, no_prune);
        for (const MaxFaceResult* r : {&pruned, &unpruned}) {
            CHECK(r->max_f == ref.max_f);
            CHECK(r->witness == ref.witness);
            CHECK(r->maximizer_count == ref.maximizer_count);
            CHECK(r->complete);
        }
        CHECK(unpruned.matchings_examined == matching_count(n));
        CHECK(faces_with_color0(g, pruned.witness) == pruned.max_f);
    }
}

TEST_CASE("max_faces on hand-checked graphs") {
    const MaxFaceResult one = max_faces(n1_graph());
    CHECK(one.max_f == 3);
    CHECK(one.maximizer_count == 1);

    const MaxFaceResult tet = max_faces(tetrahedron());
    CHECK(tet.max_f == 4);
    CHECK(tet.maximizer_count == 3);  // all three matchings tie
}

TEST_CASE("max of a disjoint union meets the sum of the parts") {
    const ColoredGraph tet = tetrahedron();
    const ColoredGraph u = disjoint_union(tet, tet);
    const MaxFaceResult part = max_faces(tet);
    const MaxFaceResult whole = max_faces(u);
    // A matching made of the two parts' witnesses achieves the sum; mixing
    // pairs across components can only lose faces here.
    CHECK(whole.max_f == 2 * part.max_f);
}

TEST_CASE("node budget reports incomplete search") {
    std::mt19937_64 rng(1);
    const ColoredGraph g = random_colored_graph(7, rng);
    MaxFaceOptions opts;
    opts.node_budget = 10;
    const MaxFaceResult r = max_faces(g, opts);
    CHECK_FALSE(r.complete);
    const MaxFaceResult full = max_faces(g);
    CHECK(full.complete);
    CHECK(r.max_f <= full.max_f);
}

TEST_CASE("partial face table matches direct counts and survives a round trip") {
    const int m = 5;
    PartialFaceTable t = PartialFaceTable::build(m);
    CHECK(t.m() == m);
    CHECK(t.size() == matching_count(m));
    const std::vector<int> even = ring_even_matching(m).partner;
    const std::vector<int> odd = ring_odd_matching(m).partner;
    for_each_matching(m, [&](const std::vector<int>& p, std::uint64_t rank) {
        CHECK(t.faces_even(rank) ==
              count_faces(ColoredGraph::from_partners({p, even, p}), 1, 2));
        CHECK(t.faces_odd(rank) ==
              count_faces(ColoredGraph::from_partners({p, odd, p}), 1, 2));
    });

    const std::string path = "pf_table_test.bin";
    t.save(path);
    PartialFaceTable loaded = PartialFaceTable::load(path);
    CHECK(loaded.size() == t.size());
    for (std::uint64_t r = 0; r < t.size(); ++r) {
        CHECK(loaded.faces_even(r) == t.faces_even(r));
        CHECK(loaded.faces_odd(r) == t.faces_odd(r));
    }

    // Corrupt one byte: load must refuse.
    {
        std::FILE* fp = std::fopen(path.c_str(), "r+b");
        REQUIRE(fp);
        std::fseek(fp, 32, SEEK_SET);
        int ch = std::fgetc(fp);
        std::fseek(fp, 32, SEEK_SET);
        std::fputc(ch ^ 0xff, fp);
        std::fclose(fp);
    }
    CHECK_THROWS_AS(PartialFaceTable::load(path), CacheError);
    std::remove(path.c_str());

    CHECK_THROWS_AS(PartialFaceTable::build(m, 16), CapacityError);
}

TEST_CASE("table scan equals branch and bound on survey-shaped graphs") {
    const int n = 5;
    const PartialFaceTable table = PartialFaceTable::build(n);
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        const ColoredGraph g = ColoredGraph::from_partners(
            {ring_even_matching(n).partner, ring_odd_matching(n).partner,
             random_matching_partners(n, rng)});
        const MaxFaceResult a = max_faces(g);
        const MaxFaceResult b = max_faces_with_table(g, table);
        CHECK(a.max_f == b.max_f);
        CHECK(a.witness == b.witness);
        CHECK(a.maximizer_count == b.maximizer_count);
    }
    // Wrong fixed colors are rejected.
    const ColoredGraph bad = ColoredGraph::from_partners(
        {ring_odd_matching(n).partner, ring_even_matching(n).partner,
         random_matching_partners(n, rng)});
    CHECK_THROWS_AS(max_faces_with_table(bad, table), ValidationError);
}
