#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "support/fixtures.hpp"
#include "treecross/arrangement.hpp"
#include "treecross/error.hpp"
#include "treecross/random_lab.hpp"
#include "treecross/tree.hpp"

using namespace treecross;
using testsupport::random_tree;
using testsupport::sentence_fixture;

namespace {

std::string error_name(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

}  // namespace

TEST_CASE("sentence fixture reproduces all three published statistics") {
    Tree t = sentence_fixture();
    CHECK(t.n() == 9);
    CHECK(t.degrees() == std::vector<int>{0, 1, 3, 1, 2, 1, 3, 1, 3, 1});
    // the three statistics that pin the reconstruction
    CHECK(t.degree_second_moment() == Rat(4));
    auto natural = LinearArrangement::identity(9);
    CHECK(count_crossings(t, natural).crossings == 0);
    CHECK(mean_dependency_distance(t, natural) == Rat(11, 8));
}

TEST_CASE("build validates the tree invariants") {
    CHECK_NOTHROW(Tree::build(2, {{1, 2}}));
    CHECK_NOTHROW(Tree::build(1, {}));

    CHECK(error_name([] { Tree::build(4, {{1, 2}, {3, 4}}); }) == "WrongEdgeCount");
    CHECK(error_name([] { Tree::build(3, {{1, 2}, {2, 2}}); }) == "LoopEdge");
    CHECK(error_name([] { Tree::build(3, {{1, 2}, {2, 1}}); }) == "DuplicateEdge");
    CHECK(error_name([] { Tree::build(4, {{1, 2}, {1, 2}, {3, 4}}); }) == "DuplicateEdge");
    CHECK(error_name([] { Tree::build(3, {{1, 2}, {2, 5}}); }) == "LabelOutOfRange");
    CHECK(error_name([] { Tree::build(0, {}); }) == "BadCount");
    // 6 vertices, 5 edges, but a 3-cycle plus isolated pieces
    CHECK(error_name([] {
              Tree::build(6, {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}});
          }) == "Disconnected");
}

TEST_CASE("degree statistics") {
    CHECK(sentence_fixture().k2_sum() == 36);
    CHECK(make_star(5).k2_sum() == 20);    // n(n-1)
    CHECK(make_linear(5).k2_sum() == 14);  // 4n-6

    CHECK(make_linear(4).degree_second_moment() == Rat(5, 2));
    for (int n = 2; n <= 12; ++n)
        CHECK(make_star(n).degree_second_moment() == Rat(n - 1));

    CHECK(Tree::build(2, {{1, 2}}).mean_degree() == Rat(1));
    CHECK(sentence_fixture().mean_degree() == Rat(16, 9));
}

TEST_CASE("mean degree equals the degree-sum average") {
    Rng rng(101);
    for (int round = 0; round < 50; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(40));
        Tree t = random_tree(n, rng);
        std::int64_t sum = 0;
        for (int v = 1; v <= n; ++v) sum += t.degree(v);
        CHECK(t.mean_degree() == Rat(sum, n));
        CHECK(sum == 2 * (n - 1));
    }
}

TEST_CASE("star and linear constructors") {
    CHECK(make_star(4).degrees() == std::vector<int>{0, 3, 1, 1, 1});
    CHECK(make_linear(4).degrees() == std::vector<int>{0, 1, 2, 2, 1});
    CHECK(make_star(2).edges() == make_linear(2).edges());
    CHECK(error_name([] { make_star(1); }) == "BadCount");
    CHECK(error_name([] { make_linear(1); }) == "BadCount");
}

TEST_CASE("classification") {
    CHECK(make_star(6).classify() == TreeClass::Star);
    CHECK(make_linear(6).classify() == TreeClass::Linear);
    CHECK(sentence_fixture().classify() == TreeClass::Other);
    CHECK(make_star(2).classify() == TreeClass::Both);
    CHECK(make_linear(3).classify() == TreeClass::Both);
    for (int n = 4; n <= 50; ++n) {
        CHECK(make_star(n).classify() == TreeClass::Star);
        CHECK(make_linear(n).classify() == TreeClass::Linear);
    }
}

TEST_CASE("leaf counts") {
    CHECK(make_linear(8).leaf_count() == 2);
    CHECK(make_star(8).leaf_count() == 7);
    CHECK(sentence_fixture().leaf_count() == 5);
    Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        Tree t = random_tree(2 + static_cast<int>(rng.uniform_below(30)), rng);
        CHECK(t.leaf_count() >= 2);
    }
}

TEST_CASE("leaf reduction and the K2 identity") {
    auto [star4, k_star] = reduce_by_leaf(make_star(5), 5);
    CHECK(k_star == 4);
    CHECK(star4.edges() == make_star(4).edges());
    CHECK(make_star(5).k2_sum() == star4.k2_sum() + 2 * k_star);  // 20 = 12 + 8

    auto [lin3, k_lin] = reduce_by_leaf(make_linear(4), 4);
    CHECK(k_lin == 2);
    CHECK(lin3.edges() == make_linear(3).edges());
    CHECK(make_linear(4).k2_sum() == lin3.k2_sum() + 2 * k_lin);  // 10 = 6 + 4

    auto [edge2, k_mid] = reduce_by_leaf(make_linear(3), 1);
    CHECK(k_mid == 2);
    CHECK(edge2.n() == 2);

    CHECK(error_name([] { reduce_by_leaf(make_linear(4), 2); }) == "NotALeaf");
    CHECK(error_name([] { reduce_by_leaf(make_linear(2), 1); }) == "BadCount");
}

TEST_CASE("K2 reduction identity holds across random trees") {
    Rng rng(2024);
    for (int n = 3; n <= 12; ++n) {
        for (int round = 0; round < 1000; ++round) {
            Tree t = random_tree(n, rng);
            std::vector<int> leaves;
            for (int v = 1; v <= n; ++v)
                if (t.degree(v) == 1) leaves.push_back(v);
            int leaf = leaves[rng.uniform_below(leaves.size())];
            auto [reduced, k] = reduce_by_leaf(t, leaf);
            REQUIRE(t.k2_sum() == reduced.k2_sum() + 2 * k);
        }
    }
}

TEST_CASE("Pruefer decoding") {
    Tree t = from_pruefer({1}, 3);
    CHECK(t.edges() == std::vector<Edge>{{1, 2}, {1, 3}});
    CHECK(from_pruefer({}, 2).edges() == std::vector<Edge>{{1, 2}});

    CHECK(error_name([] { from_pruefer({5}, 3); }) == "LabelOutOfRange");
    CHECK(error_name([] { from_pruefer({1, 2}, 3); }) == "BadCount");

    // a decoded vertex's degree is 1 + its multiplicity in the sequence
    Rng rng(5);
    for (int round = 0; round < 100; ++round) {
        int n = 3 + static_cast<int>(rng.uniform_below(12));
        std::vector<int> seq(n - 2);
        for (int& x : seq) x = 1 + static_cast<int>(rng.uniform_below(n));
        Tree decoded = from_pruefer(seq, n);
        for (int v = 1; v <= n; ++v)
            CHECK(decoded.degree(v) ==
                  1 + static_cast<int>(std::count(seq.begin(), seq.end(), v)));
    }
}

TEST_CASE("labeled tree enumeration matches Cayley's formula") {
    CHECK(labeled_tree_count(2) == 1);
    CHECK(labeled_tree_count(4) == 16);
    CHECK(labeled_tree_count(7) == 16807);

    std::set<std::vector<Edge>> seen;
    for_each_labeled_tree(4, [&](const Tree& t) { seen.insert(t.edges()); });
    CHECK(seen.size() == 16);

    int stars = 0;
    for_each_labeled_tree(5, [&](const Tree& t) {
        if (t.classify() == TreeClass::Star) ++stars;
    });
    CHECK(stars == 5);

    CHECK(error_name([] { labeled_tree_count(18); }) == "TooLarge");
    CHECK(error_name([] { labeled_tree_at(3, 3); }) == "LabelOutOfRange");
}

TEST_CASE("enumeration order is deterministic and chunkable") {
    std::vector<std::vector<Edge>> streamed;
    for_each_labeled_tree(5, [&](const Tree& t) { streamed.push_back(t.edges()); });
    REQUIRE(streamed.size() == labeled_tree_count(5));
    for (std::uint64_t i = 0; i < streamed.size(); i += 17)
        CHECK(labeled_tree_at(5, i).edges() == streamed[i]);
}

TEST_CASE("characterizations over exhaustive enumeration") {
    for (int n = 2; n <= 7; ++n) {
        const std::int64_t k2_star = static_cast<std::int64_t>(n) * (n - 1);
        const std::int64_t k2_linear = 4 * static_cast<std::int64_t>(n) - 6;
        for_each_labeled_tree(n, [&](const Tree& t) {
            // degree-sum and K2 range (Eq. 16 scaled by n)
            REQUIRE(k2_linear <= t.k2_sum());
            REQUIRE(t.k2_sum() <= k2_star);
            // linear characterization: max degree <= 2 <=> exactly 2 leaves
            REQUIRE((t.max_degree() <= 2) == (t.leaf_count() == 2));
            if (t.max_degree() == n - 1) {
                // star characterization: every other vertex is a leaf
                int leaves = 0;
                for (int v = 1; v <= n; ++v)
                    if (t.degree(v) == 1) ++leaves;
                REQUIRE(leaves >= n - 1);
            }
        });
    }
}

TEST_CASE("tree text format round-trips bit-exactly") {
    Tree t = sentence_fixture();
    std::ostringstream first;
    write_tree(t, first);
    std::istringstream back(first.str());
    Tree again = read_tree(back);
    std::ostringstream second;
    write_tree(again, second);
    CHECK(first.str() == second.str());
    CHECK(again.edges() == t.edges());

    std::istringstream commented("# a tree\nn 3\n\n2 1\n# middle\n3 2\n");
    Tree parsed = read_tree(commented);
    CHECK(parsed.edges() == std::vector<Edge>{{1, 2}, {2, 3}});

    std::istringstream garbage("n x\n");
    CHECK_THROWS_AS(read_tree(garbage), Error);
    std::istringstream badedge("n 2\n1 two\n");
    CHECK_THROWS_AS(read_tree(badedge), Error);
}

TEST_CASE("n=2 linear characterization edge case") {
    // single-edge tree: both vertices are leaves, max degree 1
    Tree t = Tree::build(2, {{1, 2}});
    CHECK(t.leaf_count() == 2);
    CHECK(t.max_degree() == 1);
}
