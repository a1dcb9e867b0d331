#include <doctest.h>

#include <cstdlib>

#include "support/fixtures.hpp"
#include "treecross/arrangement.hpp"
#include "treecross/kernels.hpp"
#include "treecross/theory.hpp"

using namespace treecross;
using namespace treecross::kernels;
using testsupport::random_tree;
using testsupport::sentence_fixture;

namespace {

std::vector<std::int32_t> raw_positions(const LinearArrangement& pi) {
    std::vector<std::int32_t> pos(pi.n() + 1);
    for (int v = 1; v <= pi.n(); ++v) pos[v] = pi.position(v);
    return pos;
}

}  // namespace

TEST_CASE("candidate pair table size equals C_pairs") {
    Rng rng(42);
    for (int round = 0; round < 300; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(30));
        Tree t = random_tree(n, rng);
        CHECK(static_cast<std::int64_t>(CandidatePairs(t).size()) == c_pairs_count(t));
    }
    CHECK(CandidatePairs(make_star(10)).size() == 0);
    CHECK(CandidatePairs(make_linear(4)).size() == 1);
    CHECK(CandidatePairs(sentence_fixture()).size() == 18);
}

TEST_CASE("scalar kernel agrees with the pairwise report") {
    Rng rng(43);
    for (int round = 0; round < 300; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(25));
        Tree t = random_tree(n, rng);
        CandidatePairs pairs(t);
        auto pi = random_arrangement(n, rng);
        auto pos = raw_positions(pi);
        CHECK(count_crossings_scalar(pairs, pos.data()) == count_crossings(t, pi).crossings);
    }
}

TEST_CASE("scalar distance kernel matches the direct sum") {
    Rng rng(44);
    for (int round = 0; round < 300; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(25));
        Tree t = random_tree(n, rng);
        EdgeTable table(t);
        auto pi = random_arrangement(n, rng);
        auto pos = raw_positions(pi);
        std::int64_t direct = 0;
        for (const auto& e : t.edges()) direct += std::abs(pi.position(e.u) - pi.position(e.v));
        CHECK(total_distance_scalar(table, pos.data()) == direct);
    }
}

TEST_CASE("SIMD kernels are equivalent to the scalar reference") {
    std::vector<Backend> variants;
#ifdef TREECROSS_WITH_AVX2
    if (backend_available(Backend::avx2)) variants.push_back(Backend::avx2);
#endif
#ifdef TREECROSS_WITH_NEON
    if (backend_available(Backend::neon)) variants.push_back(Backend::neon);
#endif
    if (variants.empty()) return;  // scalar-only host

    Rng rng(45);
    // sweep sizes around the vector width to cover full lanes plus tails
    for (int round = 0; round < 600; ++round) {
        int n = 2 + static_cast<int>(rng.uniform_below(40));
        Tree t = random_tree(n, rng);
        CandidatePairs pairs(t);
        EdgeTable table(t);
        auto pos = raw_positions(random_arrangement(n, rng));
        std::int64_t want_c = count_crossings_scalar(pairs, pos.data());
        std::int64_t want_d = total_distance_scalar(table, pos.data());
        for (Backend b : variants) {
            CHECK(count_crossings(pairs, pos.data(), b) == want_c);
            CHECK(total_distance(table, pos.data(), b) == want_d);
        }
    }

    // empty tables (star trees, tiny trees) must be handled by every variant
    for (int n : {2, 3}) {
        Tree t = make_star(n + 1);
        CandidatePairs pairs(t);
        EdgeTable table(t);
        auto pos = raw_positions(LinearArrangement::identity(n + 1));
        for (Backend b : variants) {
            CHECK(count_crossings(pairs, pos.data(), b) == 0);
            CHECK(total_distance(table, pos.data(), b) == total_distance_scalar(table, pos.data()));
        }
    }
}

TEST_CASE("backend dispatch") {
    CHECK(backend_available(Backend::scalar));
    Backend preferred = preferred_backend();
    CHECK(backend_available(preferred));
    CHECK(backend_name(Backend::scalar) == doctest::String("scalar"));

    // the dispatched entry point must agree with the explicit backend
    Tree t = sentence_fixture();
    CandidatePairs pairs(t);
    auto pos = raw_positions(LinearArrangement::identity(9));
    CHECK(count_crossings(pairs, pos.data()) == count_crossings(pairs, pos.data(), preferred));
}
