#ifndef TREECROSS_TREE_HPP
#define TREECROSS_TREE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "treecross/rational.hpp"

namespace treecross {

/// Unordered vertex pair; vertices are 1-indexed labels.
struct Edge {
    int u;
    int v;

    friend auto operator<=>(const Edge&, const Edge&) = default;
    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class TreeClass { Star, Linear, Other, Both };

const char* tree_class_name(TreeClass c);

/// Undirected labeled tree on vertices 1..n. Immutable after construction;
/// degrees are cached at build time. Invariants enforced by build():
/// exactly n-1 edges, no loops, no duplicates, connected.
class Tree {
  public:
    /// Validates and builds. Throws Error with one of: LoopEdge,
    /// DuplicateEdge, WrongEdgeCount, Disconnected, LabelOutOfRange, BadCount.
    static Tree build(int n, std::vector<Edge> edges);

    int n() const noexcept { return n_; }
    /// Edges in canonical order: each stored (min,max), sorted lexicographically.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    int degree(int v) const;
    const std::vector<int>& degrees() const noexcept { return degrees_; }
    int max_degree() const noexcept { return max_degree_; }
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const;

    std::int64_t k2_sum() const noexcept { return k2_sum_; }   // sum of squared degrees
    Rat degree_second_moment() const;                          // k2_sum / n
    Rat mean_degree() const;                                   // 2 - 2/n
    int leaf_count() const;                                    // degree-1 vertices, n >= 2
    TreeClass classify() const;

  private:
    Tree() = default;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> degrees_;          // 1-indexed, slot 0 unused
    std::vector<std::vector<int>> adjacency_;
    std::int64_t k2_sum_ = 0;
    int max_degree_ = 0;
};

Tree make_star(int n);
Tree make_linear(int n);

/// Removes a degree-1 vertex and compacts labels to 1..n-1 preserving
/// relative order. Returns the reduced tree and the degree (in the original
/// tree) of the vertex the leaf was attached to. Requires n >= 3.
std::pair<Tree, int> reduce_by_leaf(const Tree& t, int leaf);

/// Standard Pruefer decoding; seq has n-2 entries in 1..n, n >= 2.
Tree from_pruefer(const std::vector<int>& seq, int n);

/// Number of labeled trees on n vertices: n^(n-2) (Cayley), n >= 2.
std::uint64_t labeled_tree_count(int n);

/// index-th tree in lexicographic Pruefer order, 0 <= index < n^(n-2).
/// Decoding by index makes enumeration deterministic and chunkable.
Tree labeled_tree_at(int n, std::uint64_t index);

/// Visits all n^(n-2) labeled trees in lexicographic Pruefer order.
void for_each_labeled_tree(int n, const std::function<void(const Tree&)>& fn);

/// Uniform labeled tree via uniform random Pruefer sequence. The generator
/// is any callable yielding uniform integers in [0, bound).
Tree random_labeled_tree(int n, const std::function<int(int)>& uniform_below);

// Text format: line 1 "n <count>", then one "<u> <v>" edge per line;
// '#' starts a comment line. Canonical output (sorted (min,max) edges)
// round-trips bit-exactly.
Tree read_tree(std::istream& in);
void write_tree(const Tree& t, std::ostream& out);

}  // namespace treecross

#endif
