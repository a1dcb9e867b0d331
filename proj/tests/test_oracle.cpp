#include <doctest.h>

#include "support/fixtures.hpp"
#include "treecross/error.hpp"
#include "treecross/oracle.hpp"
#include "treecross/theory.hpp"

using namespace treecross;
using namespace treecross::oracle;
using testsupport::random_tree;
using testsupport::sentence_fixture;

TEST_CASE("exact enumeration of small cases") {
    ExactStats linear4 = exact_expected_crossings(make_linear(4));
    CHECK(linear4.permutations == 24);
    CHECK(linear4.expected_c == Rat(1, 3));
    CHECK(linear4.max_c == 1);  // the C <= C_pairs bound is tight here
    CHECK(linear4.expected_d == Rat(5, 3));

    ExactStats star5 = exact_expected_crossings(make_star(5));
    CHECK(star5.expected_c == Rat(0));
    CHECK(star5.max_c == 0);
    CHECK(star5.permutations == 120);
}

TEST_CASE("enumeration average of the distance matches (n+1)/3 for any tree") {
    Rng rng(55);
    for (int n = 2; n <= 6; ++n) {
        Tree t = random_tree(n, rng);
        CHECK(exact_expected_distance(t) == expected_mean_distance(n));
    }
    CHECK(exact_expected_distance(Tree::build(2, {{1, 2}})) == Rat(1));
}

TEST_CASE("closed form matches enumeration on random trees") {
    Rng rng(56);
    for (int round = 0; round < 10; ++round) {
        int n = 4 + static_cast<int>(rng.uniform_below(4));  // 4..7
        Tree t = random_tree(n, rng);
        CHECK(exact_expected_crossings(t).expected_c == expected_crossings(t));
    }
}

TEST_CASE("feasibility caps raise TooLarge") {
    CHECK_THROWS_AS(exact_expected_crossings(make_star(10)), Error);
    Caps tight;
    tight.max_perm_n = 5;
    CHECK_THROWS_AS(exact_expected_crossings(make_star(6), tight), Error);
    CHECK_THROWS_AS(verify_expectation_identity(8), Error);
    CHECK_THROWS_AS(verify_k2_extremes(8), Error);
    CHECK_THROWS_AS(verify_cpairs_bound(8), Error);
    try {
        exact_expected_crossings(make_star(10));
    } catch (const Error& e) {
        CHECK(e.name() == "TooLarge");
    }
}

TEST_CASE("K2 extreme attainment counts and classifications") {
    VerifyReport n5 = verify_k2_extremes(5);
    CHECK(n5.star_attainers == 5);
    CHECK(n5.linear_attainers == 60);
    CHECK(n5.violations.empty());
    CHECK(n5.trees_checked == 125);

    VerifyReport n4 = verify_k2_extremes(4);
    CHECK(n4.star_attainers == 4);
    CHECK(n4.linear_attainers == 12);
    CHECK(n4.violations.empty());

    VerifyReport n2 = verify_k2_extremes(2);
    CHECK(n2.star_attainers == 1);  // the single tree attains both extremes
    CHECK(n2.linear_attainers == 1);
    CHECK(n2.violations.empty());
}

TEST_CASE("C_pairs bound holds for every tree and arrangement") {
    for (int n = 2; n <= 5; ++n) {
        VerifyReport report = verify_cpairs_bound(n);
        CHECK(report.violations.empty());
        CHECK(report.trees_checked == labeled_tree_count(n));
    }
}

TEST_CASE("expectation identity holds exhaustively") {
    for (int n = 2; n <= 5; ++n) {
        VerifyReport report = verify_expectation_identity(n);
        CHECK(report.violations.empty());
        CHECK(report.trees_checked == labeled_tree_count(n));
        std::uint64_t fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(report.permutations_each == fact);
    }
}

TEST_CASE("tree partitioning does not change verification results") {
    VerifyReport serial = verify_expectation_identity(5, Caps{}, 1);
    VerifyReport parallel = verify_expectation_identity(5, Caps{}, 4);
    CHECK(serial.violations == parallel.violations);
    CHECK(serial.trees_checked == parallel.trees_checked);
}

TEST_CASE("brute-force counter agrees with the pair-table route") {
    Rng rng(57);
    for (int round = 0; round < 200; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(15));
        Tree t = random_tree(n, rng);
        auto pi = random_arrangement(n, rng);
        REQUIRE(brute_count_crossings(t, pi) == count_crossings(t, pi).crossings);
    }
}

TEST_CASE("verification report serializes to JSON") {
    VerifyReport report = verify_k2_extremes(4);
    std::string json = report.to_json();
    CHECK(json.find("\"violations\": []") != std::string::npos);
    CHECK(json.find("\"trees_checked\": 16") != std::string::npos);
}
