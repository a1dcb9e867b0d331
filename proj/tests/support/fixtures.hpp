#ifndef TREECROSS_TESTS_FIXTURES_HPP
#define TREECROSS_TESTS_FIXTURES_HPP

#include <vector>

#include "treecross/arrangement.hpp"
#include "treecross/random_lab.hpp"
#include "treecross/tree.hpp"

namespace treecross::testsupport {

// Canonical 9-vertex sentence tree: degree sequence (1,3,1,2,1,3,1,3,1),
// <k^2> = 4, and under the natural order C = 0 with <d> = 11/8. The
// tree-core suite asserts all three before anything else relies on it.
inline Tree sentence_fixture() {
    return Tree::build(9, {{1, 2}, {2, 3}, {2, 4}, {4, 6}, {5, 6}, {6, 8}, {7, 8}, {8, 9}});
}

inline Tree random_tree(int n, Rng& rng) {
    return random_labeled_tree(
        n, [&rng](int bound) { return static_cast<int>(rng.uniform_below(bound)); });
}

}  // namespace treecross::testsupport

#endif
