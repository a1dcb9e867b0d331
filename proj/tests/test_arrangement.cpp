#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "support/fixtures.hpp"
#include "treecross/arrangement.hpp"
#include "treecross/error.hpp"
#include "treecross/oracle.hpp"
#include "treecross/theory.hpp"

using namespace treecross;
using testsupport::random_tree;
using testsupport::sentence_fixture;

namespace {

// literal quadruple-counted double sum of the crossing definition:
// C = (1/4) sum_{u,v} a_uv C(u,v) with C(u,v) = (1/2) sum_{s,t != u,v} a_st [cross]
std::int64_t quadruple_counted_crossings(const Tree& t, const LinearArrangement& pi) {
    std::int64_t four_c = 0;
    for (int u = 1; u <= t.n(); ++u)
        for (int v = 1; v <= t.n(); ++v) {
            if (!t.has_edge(u, v)) continue;
            std::int64_t two_cuv = 0;
            for (int s = 1; s <= t.n(); ++s) {
                if (s == u || s == v) continue;
                for (int w = 1; w <= t.n(); ++w) {
                    if (w == u || w == v) continue;
                    if (!t.has_edge(s, w)) continue;
                    if (edges_cross(pi, u, v, s, w)) ++two_cuv;
                }
            }
            REQUIRE(two_cuv % 2 == 0);
            four_c += two_cuv / 2;
        }
    REQUIRE(four_c % 4 == 0);
    return four_c / 4;
}

}  // namespace

TEST_CASE("arrangement construction and validation") {
    auto id3 = LinearArrangement::identity(3);
    for (int v = 1; v <= 3; ++v) CHECK(id3.position(v) == v);

    auto swapped12 = LinearArrangement::from_positions({2, 1, 3});
    CHECK(swapped12.position(1) == 2);
    CHECK(swapped12.position(2) == 1);

    CHECK_THROWS_AS(LinearArrangement::from_positions({1, 1, 3}), Error);
    CHECK_THROWS_AS(LinearArrangement::from_positions({0, 1, 2}), Error);
    CHECK_THROWS_AS(LinearArrangement::from_positions({1, 2, 4}), Error);
    CHECK_THROWS_AS(id3.position(4), Error);
}

TEST_CASE("crossing predicate matches the interleaving definition") {
    // vertices placed at positions (u,v)=(1,3), (s,t)=(2,4)
    auto pi = LinearArrangement::from_positions({1, 3, 2, 4});
    CHECK(edges_cross(pi, 1, 2, 3, 4));
    CHECK(edges_cross(pi, 2, 1, 4, 3));  // endpoint order inside an edge is irrelevant

    auto disjoint = LinearArrangement::from_positions({1, 2, 3, 4});
    CHECK_FALSE(edges_cross(disjoint, 1, 2, 3, 4));

    // a shared vertex never crosses, whatever the positions
    CHECK_FALSE(edges_cross(pi, 1, 2, 2, 4));
    CHECK_FALSE(edges_cross(pi, 1, 2, 4, 1));
}

TEST_CASE("crossing predicate symmetries") {
    Rng rng(31);
    for (int round = 0; round < 200; ++round) {
        int n = 4 + static_cast<int>(rng.uniform_below(8));
        auto pi = random_arrangement(n, rng);
        int u = 1 + static_cast<int>(rng.uniform_below(n));
        int v = 1 + static_cast<int>(rng.uniform_below(n));
        int s = 1 + static_cast<int>(rng.uniform_below(n));
        int t = 1 + static_cast<int>(rng.uniform_below(n));
        if (u == v || s == t) continue;
        bool base = edges_cross(pi, u, v, s, t);
        CHECK(edges_cross(pi, s, t, u, v) == base);
        CHECK(edges_cross(pi, v, u, s, t) == base);
        CHECK(edges_cross(pi, u, v, t, s) == base);
    }
}

TEST_CASE("fixture natural order is planar with mean distance 11/8") {
    Tree t = sentence_fixture();
    auto natural = LinearArrangement::identity(9);
    CrossingReport report = count_crossings(t, natural);
    CHECK(report.crossings == 0);
    CHECK(report.planar);
    CHECK(report.mean_distance == Rat(11, 8));
    CHECK(report.n == 9);
    for (int c : report.per_edge) CHECK(c == 0);
}

TEST_CASE("interleaved linear-tree arrangement has exactly one crossing") {
    Tree t = make_linear(4);
    auto pi = LinearArrangement::from_positions({1, 3, 2, 4});
    CrossingReport report = count_crossings(t, pi);
    CHECK(report.crossings == 1);
    CHECK_FALSE(report.planar);
    // the crossing pair is 1~2 against 3~4 (edges 0 and 2 in canonical order)
    CHECK(report.per_edge == std::vector<int>{1, 0, 1});
    CHECK(edges_cross(pi, 1, 2, 3, 4));
}

TEST_CASE("star trees never cross") {
    Rng rng(77);
    for (int n = 2; n <= 12; ++n) {
        Tree star = make_star(n);
        for (int round = 0; round < 20; ++round) {
            auto pi = random_arrangement(n, rng);
            CHECK(count_crossings(star, pi).crossings == 0);
        }
    }
}

TEST_CASE("quadruple-counted definition equals the pair count") {
    Rng rng(911);
    for (int round = 0; round < 500; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(9));  // n <= 10
        Tree t = random_tree(n, rng);
        auto pi = random_arrangement(n, rng);
        CrossingReport report = count_crossings(t, pi);
        REQUIRE(report.crossings == quadruple_counted_crossings(t, pi));
        // bookkeeping: per-edge counts double-count each crossing
        std::int64_t per_edge_sum = std::accumulate(report.per_edge.begin(),
                                                    report.per_edge.end(), std::int64_t{0});
        REQUIRE(per_edge_sum == 2 * report.crossings);
    }
}

TEST_CASE("crossings respect the capacity bounds") {
    Rng rng(1234);
    for (int round = 0; round < 400; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(19));
        Tree t = random_tree(n, rng);
        auto pi = random_arrangement(n, rng);
        CrossingReport report = count_crossings(t, pi);
        REQUIRE(report.crossings >= 0);
        REQUIRE(report.crossings <= c_pairs_count(t));
        const auto& edges = t.edges();
        for (std::size_t i = 0; i < edges.size(); ++i)
            REQUIRE(report.per_edge[i] <= c_pairs_edge(t, edges[i].u, edges[i].v));
    }
}

TEST_CASE("no crossings are possible below four vertices") {
    Rng rng(5);
    for (int n = 2; n <= 3; ++n)
        for_each_labeled_tree(n, [&](const Tree& t) {
            for (int round = 0; round < 10; ++round)
                CHECK(count_crossings(t, random_arrangement(n, rng)).crossings == 0);
        });
}

TEST_CASE("mean dependency distance") {
    for (int n : {2, 5, 9, 20})
        CHECK(mean_dependency_distance(make_linear(n), LinearArrangement::identity(n)) ==
              Rat(1));
    CHECK(mean_dependency_distance(make_star(3), LinearArrangement::identity(3)) == Rat(3, 2));

    Rng rng(99);
    for (int round = 0; round < 200; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(20));
        Tree t = random_tree(n, rng);
        Rat d = mean_dependency_distance(t, random_arrangement(n, rng));
        REQUIRE(d >= Rat(1));
        REQUIRE(d <= Rat(n - 1));
    }
}

TEST_CASE("unit mean distance happens exactly for linear trees in path order") {
    for (int n = 4; n <= 5; ++n)
        for_each_labeled_tree(n, [&](const Tree& t) {
            std::vector<int> positions(n);
            std::iota(positions.begin(), positions.end(), 1);
            do {
                auto pi = LinearArrangement::from_positions(positions);
                // path order: consecutive positions hold adjacent vertices
                std::vector<int> vertex_at(n + 1);
                for (int v = 1; v <= n; ++v) vertex_at[pi.position(v)] = v;
                bool path_order = true;
                for (int p = 1; p < n; ++p)
                    path_order = path_order && t.has_edge(vertex_at[p], vertex_at[p + 1]);

                bool unit = mean_dependency_distance(t, pi) == Rat(1);
                REQUIRE(unit == path_order);
                if (unit) {
                    auto cls = t.classify();
                    REQUIRE((cls == TreeClass::Linear || cls == TreeClass::Both));
                }
            } while (std::next_permutation(positions.begin(), positions.end()));
        });
}

TEST_CASE("swapped positions") {
    auto id4 = LinearArrangement::identity(4);
    auto swapped = id4.swapped(1, 4);
    CHECK(swapped == LinearArrangement::from_positions({4, 2, 3, 1}));
    CHECK(swapped.swapped(1, 4) == id4);  // involution
    CHECK_THROWS_AS(id4.swapped(2, 2), Error);
    CHECK_THROWS_AS(id4.swapped(1, 5), Error);
}

TEST_CASE("one swap changes C by an amount the oracle confirms") {
    Tree t = sentence_fixture();
    auto natural = LinearArrangement::identity(9);
    for (int a = 1; a <= 9; ++a)
        for (int b = a + 1; b <= 9; ++b) {
            auto pi = natural.swapped(a, b);
            REQUIRE(count_crossings(t, pi).crossings == oracle::brute_count_crossings(t, pi));
        }
}

TEST_CASE("arrangement text format round-trips") {
    auto pi = LinearArrangement::from_positions({3, 1, 4, 2, 5});
    std::ostringstream out;
    write_arrangement(pi, out);
    CHECK(out.str() == "3 1 4 2 5\n");
    std::istringstream in(out.str());
    CHECK(read_arrangement(in) == pi);

    std::istringstream bad("1 1 3\n");
    CHECK_THROWS_AS(read_arrangement(bad), Error);
}

TEST_CASE("crossing report serialization") {
    Tree t = sentence_fixture();
    CrossingReport report = count_crossings(t, LinearArrangement::identity(9));
    std::ostringstream kv;
    report.write_kv(kv);
    CHECK(kv.str() == "n=9\nC=0\nmean_d_num=11\nmean_d_den=8\nplanar=true\n");
    CHECK(report.to_json().find("\"planar\": true") != std::string::npos);
}

TEST_CASE("mismatched arrangement size is rejected") {
    CHECK_THROWS_AS(count_crossings(sentence_fixture(), LinearArrangement::identity(5)), Error);
    CHECK_THROWS_AS(mean_dependency_distance(sentence_fixture(), LinearArrangement::identity(5)),
                    Error);
}
