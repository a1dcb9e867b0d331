#ifndef TREECROSS_ORACLE_HPP
#define TREECROSS_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "treecross/arrangement.hpp"
#include "treecross/rational.hpp"
#include "treecross/tree.hpp"

namespace treecross::oracle {

/// Feasibility caps. Exceeding one raises Error("TooLarge", ...), never a
/// silent truncation.
struct Caps {
    int max_perm_n = 9;  // full permutation enumeration, n! <= 362,880
    int max_enum_n = 7;  // tree x permutation double enumeration
};

/// Ground truth from enumerating all n! arrangements. Counting is
/// deliberately from scratch per permutation over every unordered edge pair
/// with the edges_cross predicate: no pair tables, no deltas, no shortcuts.
struct ExactStats {
    Rat expected_c;
    std::int64_t max_c = 0;
    Rat expected_d;
    std::uint64_t permutations = 0;
};

ExactStats exact_expected_crossings(const Tree& t, const Caps& caps = {});

Rat exact_expected_distance(const Tree& t, const Caps& caps = {});

/// Single dumb evaluation used by the enumerators; exposed so tests can run
/// the oracle path against arbitrary arrangements.
std::int64_t brute_count_crossings(const Tree& t, const LinearArrangement& pi);

/// Scan report over all labeled trees of a given n. Empty violations is the
/// pass signal.
struct VerifyReport {
    int n = 0;
    std::uint64_t trees_checked = 0;
    std::uint64_t permutations_each = 0;
    std::vector<std::string> violations;
    // extremal-attainment tallies (verify_k2_extremes only)
    std::uint64_t star_attainers = 0;
    std::uint64_t linear_attainers = 0;

    std::string to_json() const;
};

/// Which trees attain K2 = n(n-1) and K2 = 4n-6, and whether every attainer
/// classifies as Star / Linear respectively. 2 <= n <= max_enum_n.
VerifyReport verify_k2_extremes(int n, const Caps& caps = {});

/// For every labeled tree: max C over all arrangements <= C_pairs, and the
/// per-edge max of C(u,v) <= n - k_u - k_v.
VerifyReport verify_cpairs_bound(int n, const Caps& caps = {}, int threads = 1);

/// For every labeled tree: all-permutation average of C equals C_pairs/3
/// equals (n/6)(n-1-<k^2>), as exact rationals.
VerifyReport verify_expectation_identity(int n, const Caps& caps = {}, int threads = 1);

}  // namespace treecross::oracle

#endif
