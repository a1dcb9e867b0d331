#include "treecross/tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "treecross/error.hpp"

namespace treecross {

const char* tree_class_name(TreeClass c) {
    switch (c) {
        case TreeClass::Star: return "Star";
        case TreeClass::Linear: return "Linear";
        case TreeClass::Other: return "Other";
        case TreeClass::Both: return "Both";
    }
    return "?";
}

Tree Tree::build(int n, std::vector<Edge> edges) {
    if (n < 1) throw Error("BadCount", "vertex count must be >= 1, got " + std::to_string(n));

    for (auto& e : edges) {
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
            throw Error("LabelOutOfRange", "edge (" + std::to_string(e.u) + "," +
                                               std::to_string(e.v) + ") outside 1.." +
                                               std::to_string(n));
        if (e.u == e.v)
            throw Error("LoopEdge", "loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw Error("DuplicateEdge", "edge (" + std::to_string(edges[i].u) + "," +
                                             std::to_string(edges[i].v) + ") repeated");
    if (static_cast<int>(edges.size()) != n - 1)
        throw Error("WrongEdgeCount", std::to_string(edges.size()) + " edges, expected " +
                                          std::to_string(n - 1));

    Tree t;
    t.n_ = n;
    t.edges_ = std::move(edges);
    t.degrees_.assign(n + 1, 0);
    t.adjacency_.assign(n + 1, {});
    for (const auto& e : t.edges_) {
        ++t.degrees_[e.u];
        ++t.degrees_[e.v];
        t.adjacency_[e.u].push_back(e.v);
        t.adjacency_[e.v].push_back(e.u);
    }
    for (int v = 1; v <= n; ++v) {
        t.k2_sum_ += static_cast<std::int64_t>(t.degrees_[v]) * t.degrees_[v];
        t.max_degree_ = std::max(t.max_degree_, t.degrees_[v]);
    }

    // connectivity: n-1 edges + all vertices reachable from 1 <=> tree
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : t.adjacency_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != n)
        throw Error("Disconnected", "only " + std::to_string(reached) + " of " +
                                        std::to_string(n) + " vertices reachable");
    return t;
}

int Tree::degree(int v) const {
    if (v < 1 || v > n_)
        throw Error("LabelOutOfRange", "vertex " + std::to_string(v));
    return degrees_[v];
}

const std::vector<int>& Tree::neighbors(int v) const {
    if (v < 1 || v > n_)
        throw Error("LabelOutOfRange", "vertex " + std::to_string(v));
    return adjacency_[v];
}

bool Tree::has_edge(int u, int v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_) return false;
    if (u == v) return false;
    const auto& shorter = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    int other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
    return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
}

Rat Tree::degree_second_moment() const { return Rat(k2_sum_, n_); }

Rat Tree::mean_degree() const { return Rat(2 * static_cast<std::int64_t>(n_) - 2, n_); }

int Tree::leaf_count() const {
    if (n_ < 2) throw Error("BadCount", "leaf_count requires n >= 2");
    int count = 0;
    for (int v = 1; v <= n_; ++v)
        if (degrees_[v] == 1) ++count;
    return count;
}

TreeClass Tree::classify() const {
    bool star = max_degree_ == n_ - 1;
    bool linear = max_degree_ <= 2;
    if (star && linear) return TreeClass::Both;
    if (star) return TreeClass::Star;
    if (linear) return TreeClass::Linear;
    return TreeClass::Other;
}

Tree make_star(int n) {
    if (n < 2) throw Error("BadCount", "star tree requires n >= 2");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int v = 2; v <= n; ++v) edges.push_back({1, v});
    return Tree::build(n, std::move(edges));
}

Tree make_linear(int n) {
    if (n < 2) throw Error("BadCount", "linear tree requires n >= 2");
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int v = 1; v < n; ++v) edges.push_back({v, v + 1});
    return Tree::build(n, std::move(edges));
}

std::pair<Tree, int> reduce_by_leaf(const Tree& t, int leaf) {
    if (t.n() < 3) throw Error("BadCount", "reduction requires n >= 3");
    if (t.degree(leaf) != 1)
        throw Error("NotALeaf", "vertex " + std::to_string(leaf) + " has degree " +
                                    std::to_string(t.degree(leaf)));
    int attach = t.neighbors(leaf).front();
    int attach_degree = t.degree(attach);

    // compact labels to 1..n-1, preserving relative order
    std::vector<Edge> edges;
    edges.reserve(t.n() - 2);
    auto relabel = [leaf](int v) { return v > leaf ? v - 1 : v; };
    for (const auto& e : t.edges()) {
        if (e.u == leaf || e.v == leaf) continue;
        edges.push_back({relabel(e.u), relabel(e.v)});
    }
    return {Tree::build(t.n() - 1, std::move(edges)), attach_degree};
}

Tree from_pruefer(const std::vector<int>& seq, int n) {
    if (n < 2) throw Error("BadCount", "Pruefer decoding requires n >= 2");
    if (static_cast<int>(seq.size()) != n - 2)
        throw Error("BadCount", "sequence length " + std::to_string(seq.size()) +
                                    ", expected " + std::to_string(n - 2));
    for (int x : seq)
        if (x < 1 || x > n)
            throw Error("LabelOutOfRange", "sequence entry " + std::to_string(x));

    std::vector<int> degree(n + 1, 1);
    for (int x : seq) ++degree[x];

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    int ptr = 1;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        edges.push_back({leaf, x});
        if (--degree[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.push_back({leaf, n});
    return Tree::build(n, std::move(edges));
}

std::uint64_t labeled_tree_count(int n) {
    if (n < 2) throw Error("BadCount", "enumeration requires n >= 2");
    if (n > 17) throw Error("TooLarge", "n^(n-2) exceeds 64 bits for n > 17");
    std::uint64_t count = 1;
    for (int i = 0; i < n - 2; ++i) count *= static_cast<std::uint64_t>(n);
    return count;
}

Tree labeled_tree_at(int n, std::uint64_t index) {
    std::uint64_t total = labeled_tree_count(n);
    if (index >= total)
        throw Error("LabelOutOfRange", "tree index " + std::to_string(index) +
                                           " out of " + std::to_string(total));
    std::vector<int> seq(std::max(n - 2, 0));
    for (int i = n - 3; i >= 0; --i) {
        seq[i] = static_cast<int>(index % n) + 1;
        index /= n;
    }
    return from_pruefer(seq, n);
}

void for_each_labeled_tree(int n, const std::function<void(const Tree&)>& fn) {
    std::uint64_t total = labeled_tree_count(n);
    for (std::uint64_t i = 0; i < total; ++i) fn(labeled_tree_at(n, i));
}

Tree random_labeled_tree(int n, const std::function<int(int)>& uniform_below) {
    if (n < 2) throw Error("BadCount", "random tree requires n >= 2");
    std::vector<int> seq(n - 2);
    for (int& x : seq) x = uniform_below(n) + 1;
    return from_pruefer(seq, n);
}

Tree read_tree(std::istream& in) {
    auto next_content_line = [&in](std::string& line) {
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;  // blank
            if (line[first] == '#') continue;          // comment
            return true;
        }
        return false;
    };

    std::string line;
    if (!next_content_line(line)) throw Error("ParseError", "empty tree file");
    std::istringstream header(line);
    std::string tag;
    int n = 0;
    if (!(header >> tag >> n) || tag != "n")
        throw Error("ParseError", "expected header 'n <count>', got '" + line + "'");

    std::vector<Edge> edges;
    while (next_content_line(line)) {
        std::istringstream ls(line);
        Edge e{};
        if (!(ls >> e.u >> e.v))
            throw Error("ParseError", "expected edge '<u> <v>', got '" + line + "'");
        std::string extra;
        if (ls >> extra) throw Error("ParseError", "trailing tokens in edge line '" + line + "'");
        edges.push_back(e);
    }
    return Tree::build(n, std::move(edges));
}

void write_tree(const Tree& t, std::ostream& out) {
    out << "n " << t.n() << "\n";
    for (const auto& e : t.edges()) out << e.u << " " << e.v << "\n";
}

}  // namespace treecross
