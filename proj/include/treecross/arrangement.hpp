#ifndef TREECROSS_ARRANGEMENT_HPP
#define TREECROSS_ARRANGEMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "treecross/rational.hpp"
#include "treecross/tree.hpp"

namespace treecross {

/// Bijection from vertices 1..n to positions 1..n. Immutable; swapped()
/// returns a new value.
class LinearArrangement {
  public:
    static LinearArrangement identity(int n);
    /// positions[i] is the position of vertex i+1. Throws NotAPermutation.
    static LinearArrangement from_positions(std::vector<int> positions);

    int n() const noexcept { return static_cast<int>(pos_.size()) - 1; }
    int position(int v) const;
    /// Raw 1-indexed position array (slot 0 unused); hot loops index it directly.
    const std::int32_t* data() const noexcept { return pos_.data(); }

    /// New arrangement with the positions of vertices a and b exchanged.
    LinearArrangement swapped(int a, int b) const;

    friend bool operator==(const LinearArrangement&, const LinearArrangement&) = default;

  private:
    explicit LinearArrangement(std::vector<std::int32_t> pos) : pos_(std::move(pos)) {}
    std::vector<std::int32_t> pos_;  // pos_[v] = position of vertex v
};

/// Interleaving predicate for the arcs u~v and s~t: after normalizing each
/// pair so the smaller position comes first, true iff
/// pi(u) < pi(s) < pi(v) < pi(t) or pi(s) < pi(u) < pi(t) < pi(v).
/// Edges sharing a vertex never cross.
bool edges_cross(const LinearArrangement& pi, int u, int v, int s, int t);

struct CrossingReport {
    int n = 0;
    std::int64_t crossings = 0;       // C, counted once per unordered edge pair
    Rat mean_distance;                // <d> = (1/(n-1)) sum |pi(u)-pi(v)|
    bool planar = true;               // C == 0
    std::vector<int> per_edge;        // C(u,v), aligned with Tree::edges()

    void write_kv(std::ostream& out) const;
    std::string to_json() const;
};

/// Exact observed quantities of one (tree, arrangement) pair. O(m^2) over
/// unordered edge pairs, which is the point: each pair is decided by the
/// edges_cross predicate above.
CrossingReport count_crossings(const Tree& t, const LinearArrangement& pi);

Rat mean_dependency_distance(const Tree& t, const LinearArrangement& pi);

// Text format: one line, n whitespace-separated integers, the positions of
// vertices 1..n in label order.
LinearArrangement read_arrangement(std::istream& in);
void write_arrangement(const LinearArrangement& pi, std::ostream& out);

}  // namespace treecross

#endif
