#ifndef TREECROSS_THEORY_HPP
#define TREECROSS_THEORY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "treecross/rational.hpp"
#include "treecross/tree.hpp"

namespace treecross {

/// Closed-form quantities of a tree under uniformly random linear
/// arrangement. All values exact rationals.
struct TheoryReport {
    int n = 0;
    Rat k2_moment;    // <k^2>
    Rat c_pairs;      // (n/2)(n - 1 - <k^2>), integer-valued
    Rat expected_c;   // E[C] = C_pairs / 3
    Rat expected_d;   // E[<d>] = (n+1)/3
    Rat k2_lower;     // 4 - 6/n
    Rat k2_upper;     // n - 1
    Rat ec_upper;     // n(n-5)/6 + 1, clamped to 0 for n < 4

    void write_tsv(std::ostream& out) const;
    std::string to_json() const;
};

/// Number of edge pairs that can cross: (n/2)(n - 1 - <k^2>).
Rat c_pairs(const Tree& t);
/// Same value as an integer; n(n-1) and K2 are both even, so it always is one.
std::int64_t c_pairs_count(const Tree& t);

/// Per-edge capacity: n - k_u - k_v. Throws NotAnEdge.
std::int64_t c_pairs_edge(const Tree& t, int u, int v);

/// Probability that two edges cross under a uniform arrangement: 0 when the
/// edges share a vertex; otherwise 1/3 regardless of n. With the four
/// endpoint positions sorted into ranks 1..4, the first edge crosses the
/// second iff it takes ranks (1,3) or (2,4) -- 2 of the C(4,2) = 6 equally
/// likely rank pairs.
Rat crossing_probability(bool shares_vertex);

/// E[C] = C_pairs / 3 = (n/6)(n - 1 - <k^2>). The first form is the single
/// code path; the second is pinned as a tested identity.
Rat expected_crossings(const Tree& t);

/// E[C(u,v)] = C_pairs(u,v) / 3. Throws NotAnEdge.
Rat expected_crossings_edge(const Tree& t, int u, int v);

/// E[C] of a linear tree: n(n-5)/6 + 1, n >= 2.
Rat expected_crossings_linear(std::int64_t n);

/// Range of <k^2> at fixed n: [4 - 6/n, n - 1], n >= 2. Attained exactly by
/// linear and star trees respectively.
std::pair<Rat, Rat> k2_bounds(std::int64_t n);

/// Range of E[C] at fixed n: [0, n(n-5)/6 + 1], upper clamped to 0 for n < 4.
std::pair<Rat, Rat> ec_bounds(std::int64_t n);

/// E[<d>] = (n+1)/3 under a uniform arrangement, n >= 2; independent of the
/// tree because every edge's expected length is (n+1)/3.
Rat expected_mean_distance(std::int64_t n);

TheoryReport theory_report(const Tree& t);

}  // namespace treecross

#endif
