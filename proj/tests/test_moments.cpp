#include "wickgraph/moments.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "wickgraph/colored_graph.hpp"
#include "wickgraph/fixtures.hpp"
#include "wickgraph/matching.hpp"

using namespace wickgraph;
using namespace wickgraph::testutil;

namespace {

// One independent index variable per graph edge: slot c of vertex v reads
// the variable of its color-c edge. Tr_G for a concrete tensor is the sum
// over all variable assignments of the product of vertex entries.
std::vector<std::array<int, 3>> edge_variables(const ColoredGraph& g, int& var_count) {
    std::vector<std::array<int, 3>> var(2 * g.n());
    var_count = 0;
    for (int c = 0; c < 3; ++c)
        for (int v = 0; v < 2 * g.n(); ++v) {
            const int u = g.partner(c + 1, v);
            if (v < u) {
                var[v][c] = var_count;
                var[u][c] = var_count;
                ++var_count;
            }
        }
    return var;
}

bool next_odometer(std::vector<int>& digits, int base) {
    for (int i = (int)digits.size() - 1; i >= 0; --i) {
        if (++digits[i] < base) return true;
        digits[i] = 0;
    }
    return false;
}

// Scaled moment Σ_M N^{F(M,G)} by raw Wick counting: for every pairing,
// count the assignments where each paired vertex agrees with its partner
// on all three slots. No cycles, faces, or union-find anywhere.
std::uint64_t brute_scaled_moment(const ColoredGraph& g, int big_n) {
    int var_count = 0;
    const auto var = edge_variables(g, var_count);
    std::uint64_t total = 0;
    for (const Matching& m : all_matchings(g.n())) {
        std::vector<int> a(var_count, 0);
        do {
            bool ok = true;
            for (int v = 0; v < 2 * g.n() && ok; ++v) {
                const int u = m.partner[v];
                if (u < v) continue;
                for (int c = 0; c < 3; ++c)
                    if (a[var[v][c]] != a[var[u][c]]) {
                        ok = false;
                        break;
                    }
            }
            if (ok) ++total;
        } while (next_odometer(a, big_n));
    }
    return total;
}

// Same quantity by merging delta chains: slots (v,c) fuse along graph edges
// and along pairing edges; each resulting class ranges freely over [N].
std::uint64_t unionfind_scaled_moment(const ColoredGraph& g, int big_n) {
    const int slots = 6 * g.n();
    std::uint64_t total = 0;
    for (const Matching& m : all_matchings(g.n())) {
        std::vector<int> root(slots);
        for (int s = 0; s < slots; ++s) root[s] = s;
        const auto find = [&](int s) {
            while (root[s] != s) s = root[s] = root[root[s]];
            return s;
        };
        for (int v = 0; v < 2 * g.n(); ++v)
            for (int c = 0; c < 3; ++c) {
                root[find(3 * v + c)] = find(3 * g.partner(c + 1, v) + c);
                root[find(3 * v + c)] = find(3 * m.partner[v] + c);
            }
        int classes = 0;
        for (int s = 0; s < slots; ++s)
            if (find(s) == s) ++classes;
        std::uint64_t power = 1;
        for (int i = 0; i < classes; ++i) power *= (std::uint64_t)big_n;
        total += power;
    }
    return total;
}

double brute_trace(const ColoredGraph& g, const std::vector<double>& tensor, int big_n) {
    int var_count = 0;
    const auto var = edge_variables(g, var_count);
    const std::size_t nn = (std::size_t)big_n;
    double total = 0.0;
    std::vector<int> a(var_count, 0);
    do {
        double prod = 1.0;
        for (int v = 0; v < 2 * g.n(); ++v)
            prod *= tensor[((std::size_t)a[var[v][0]] * nn + a[var[v][1]]) * nn + a[var[v][2]]];
        total += prod;
    } while (next_odometer(a, big_n));
    return total;
}

}  // namespace

TEST_CASE("hand-checked moments of the smallest graphs") {
    const MomentPolynomial p1 = moment_polynomial(n1_graph());
    CHECK(p1.n == 1);
    CHECK(p1.nu == 2);
    CHECK(p1.terms == std::map<int, std::uint64_t>{{1, 1}});
    CHECK(p1.max_exponent() == 1);
    CHECK(p1.evaluate(3.0) == doctest::Approx(3.0));
    CHECK(p1.evaluate_scaled(3) == 27);  // N^F = 3^3

    MomentOptions nu0;
    nu0.nu = 0;
    CHECK(moment_polynomial(n1_graph(), nu0).terms == std::map<int, std::uint64_t>{{3, 1}});

    const MomentPolynomial pt = moment_polynomial(tetrahedron());
    CHECK(pt.terms == std::map<int, std::uint64_t>{{0, 3}});
    CHECK(pt.max_exponent() == 0);
    CHECK(pt.pairing_count() == 3);
    CHECK(pt.evaluate(2.0) == doctest::Approx(3.0));
    CHECK(pt.evaluate_scaled(2) == 3 * 16);  // three pairings, each N^4
}

TEST_CASE("scaled moment equals the brute-force Wick contraction") {
    std::mt19937_64 rng(2024);
    std::vector<ColoredGraph> pool = {n1_graph(), tetrahedron(), parallel_pair()};
    for (int n = 2; n <= 3; ++n)
        for (int i = 0; i < 3; ++i) pool.push_back(random_colored_graph(n, rng));
    for (const ColoredGraph& g : pool) {
        const MomentPolynomial p = moment_polynomial(g);
        for (int big_n = 1; big_n <= 3; ++big_n)
            CHECK(p.evaluate_scaled(big_n) == brute_scaled_moment(g, big_n));
    }
}

TEST_CASE("scaled moment equals the slot union-find contraction") {
    std::mt19937_64 rng(77);
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < 3; ++i) {
            const ColoredGraph g = random_colored_graph(n, rng);
            const MomentPolynomial p = moment_polynomial(g);
            for (int big_n = 1; big_n <= 3; ++big_n)
                CHECK(p.evaluate_scaled(big_n) == unionfind_scaled_moment(g, big_n));
        }
}

TEST_CASE("polynomial invariants hold on random graphs") {
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < 4; ++i) {
            const ColoredGraph g = random_colored_graph(n, rng);
            const MomentPolynomial p = moment_polynomial(g);
            CHECK(p.pairing_count() == matching_count(n));
            CHECK(p.max_exponent() == max_faces(g).max_f - 2 * n);
            for (const auto& [e, mult] : p.terms) {
                CHECK(e + 2 * n >= 3);  // F ranges over [3, 3n]
                CHECK(e <= n);
                CHECK(mult >= 1);
            }
            CHECK(p.evaluate(1.0) == doctest::Approx((double)matching_count(n)));
            CHECK(p.evaluate(2.5) > 0.0);

            // nu only shifts the exponents; the multiplicities are shared.
            MomentOptions nu0;
            nu0.nu = 0;
            const MomentPolynomial q = moment_polynomial(g, nu0);
            REQUIRE(q.terms.size() == p.terms.size());
            for (const auto& [e, mult] : p.terms) {
                REQUIRE(q.terms.count(e + 2 * n) == 1);
                CHECK(q.terms.at(e + 2 * n) == mult);
            }
        }
}

TEST_CASE("enumeration guard refuses large n unless forced") {
    std::mt19937_64 rng(5);
    const ColoredGraph g = random_colored_graph(5, rng);
    MomentOptions capped;
    capped.max_n = 4;
    CHECK_THROWS_AS(moment_polynomial(g, capped), CapacityError);
    capped.force = true;
    CHECK(moment_polynomial(g, capped).terms == moment_polynomial(g).terms);
}

TEST_CASE("worker sharding leaves the histogram unchanged") {
    std::mt19937_64 rng(31);
    const ColoredGraph g = random_colored_graph(4, rng);
    const MomentPolynomial base = moment_polynomial(g);
    for (int workers : {1, 2, 5, 16}) {
        MomentOptions opts;
        opts.workers = workers;
        CHECK(moment_polynomial(g, opts).terms == base.terms);
    }
}

TEST_CASE("trace contraction equals the direct edge-variable sum") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::vector<ColoredGraph> pool = {n1_graph(), tetrahedron(), parallel_pair()};
    for (int i = 0; i < 2; ++i) pool.push_back(random_colored_graph(3, rng));
    for (const ColoredGraph& g : pool)
        for (int big_n = 1; big_n <= 3; ++big_n) {
            std::vector<double> ones((std::size_t)big_n * big_n * big_n, 1.0);
            double all = 1.0;
            for (int e = 0; e < 3 * g.n(); ++e) all *= big_n;
            CHECK(trace_invariant(g, ones, big_n) == doctest::Approx(all));

            std::vector<double> tensor(ones.size());
            for (double& t : tensor) t = entry(rng);
            CHECK(trace_invariant(g, tensor, big_n) ==
                  doctest::Approx(brute_trace(g, tensor, big_n)));
        }
    CHECK_THROWS_AS(trace_invariant(tetrahedron(), std::vector<double>(7, 1.0), 2),
                    ValidationError);
}

TEST_CASE("mc estimate is deterministic for a fixed seed") {
    McOptions opts;
    opts.big_n = 2;
    opts.samples = 4000;
    opts.seed = 99;
    opts.block = 512;
    const McEstimate a = mc_estimate(tetrahedron(), opts);
    const McEstimate b = mc_estimate(tetrahedron(), opts);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.generator == std::string(kMcGeneratorName));
    CHECK(a.samples == 4000);

    opts.workers = 3;
    const McEstimate c = mc_estimate(tetrahedron(), opts);
    CHECK(c.mean == a.mean);
    CHECK(c.std_error == a.std_error);

    opts.seed = 100;
    CHECK(mc_estimate(tetrahedron(), opts).mean != a.mean);
}

TEST_CASE("mc estimate agrees with the exact moment within five sigmas") {
    std::mt19937_64 rng(40);
    std::vector<std::pair<ColoredGraph, int>> cases = {
        {n1_graph(), 2}, {tetrahedron(), 2}, {tetrahedron(), 3}, {parallel_pair(), 2},
        {random_colored_graph(3, rng), 2}};
    for (const auto& [g, big_n] : cases) {
        McOptions opts;
        opts.big_n = big_n;
        opts.samples = 20000;
        opts.seed = 7;
        const McEstimate est = mc_estimate(g, opts);
        const double exact = moment_polynomial(g).evaluate((double)big_n);
        REQUIRE(est.std_error > 0.0);
        CHECK(std::abs(est.mean - exact) < 5.0 * est.std_error);
    }
}

TEST_CASE("mc guards reject out-of-range inputs") {
    std::mt19937_64 rng(8);
    McOptions opts;
    opts.big_n = 7;
    CHECK_THROWS_AS(mc_estimate(tetrahedron(), opts), CapacityError);
    opts.big_n = 2;
    CHECK_THROWS_AS(mc_estimate(random_colored_graph(5, rng), opts), CapacityError);
    opts.samples = 1;
    CHECK_THROWS_AS(mc_estimate(tetrahedron(), opts), ValidationError);
}

TEST_CASE("factorization diagnostic separates the doubled graph from the square") {
    const FactorizationDiagnostic d1 = factorization_diagnostic(n1_graph());
    CHECK(d1.max_f == 3);
    CHECK_FALSE(d1.violates);  // 2*3 > 3*1
    CHECK(d1.single_leading_exponent == 1);
    REQUIRE(d1.pair_max_f.has_value());
    CHECK(*d1.pair_max_f == 6);
    CHECK(*d1.pair_leading_exponent == 2);
    CHECK_FALSE(*d1.pair_exceeds_disjoint);

    const FactorizationDiagnostic dt = factorization_diagnostic(tetrahedron());
    CHECK(dt.max_f == 4);
    CHECK_FALSE(dt.violates);
    REQUIRE(dt.pair_max_f.has_value());
    CHECK(*dt.pair_max_f == 8);
    CHECK_FALSE(*dt.pair_exceeds_disjoint);

    // nu moves the exponents but never the verdict.
    const FactorizationDiagnostic dt0 = factorization_diagnostic(tetrahedron(), 0);
    CHECK(dt0.violates == dt.violates);
    CHECK(dt0.single_leading_exponent == dt.max_f);

    CHECK_THROWS_AS(factorization_diagnostic(disjoint_union(n1_graph(), n1_graph())),
                    ValidationError);
}

TEST_CASE("catalog graphs sit exactly on the violation threshold") {
    const ColoredGraph g = catalog_graphs().front();
    const FactorizationDiagnostic d = factorization_diagnostic(g);
    CHECK(d.n == 8);
    CHECK(d.max_f == 12);
    CHECK(d.violates);  // 2*12 <= 3*8
    CHECK(d.single_leading_exponent == -4);
    CHECK_FALSE(d.pair_max_f.has_value());  // pair search refused above n = 3
}
