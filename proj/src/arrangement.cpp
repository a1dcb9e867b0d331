#include "treecross/arrangement.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "treecross/error.hpp"

namespace treecross {

LinearArrangement LinearArrangement::identity(int n) {
    if (n < 1) throw Error("BadCount", "arrangement requires n >= 1");
    std::vector<std::int32_t> pos(n + 1);
    for (int v = 1; v <= n; ++v) pos[v] = v;
    return LinearArrangement(std::move(pos));
}

LinearArrangement LinearArrangement::from_positions(std::vector<int> positions) {
    int n = static_cast<int>(positions.size());
    if (n < 1) throw Error("NotAPermutation", "empty position list");
    std::vector<char> used(n + 1, 0);
    std::vector<std::int32_t> pos(n + 1);
    for (int v = 1; v <= n; ++v) {
        int p = positions[v - 1];
        if (p < 1 || p > n)
            throw Error("NotAPermutation", "position " + std::to_string(p) + " outside 1.." +
                                               std::to_string(n));
        if (used[p])
            throw Error("NotAPermutation", "position " + std::to_string(p) + " used twice");
        used[p] = 1;
        pos[v] = p;
    }
    return LinearArrangement(std::move(pos));
}

int LinearArrangement::position(int v) const {
    if (v < 1 || v > n())
        throw Error("LabelOutOfRange", "vertex " + std::to_string(v) + " not in arrangement");
    return pos_[v];
}

LinearArrangement LinearArrangement::swapped(int a, int b) const {
    if (a == b) throw Error("BadSwap", "swap requires two distinct vertices");
    position(a);  // range checks
    position(b);
    std::vector<std::int32_t> pos = pos_;
    std::swap(pos[a], pos[b]);
    return LinearArrangement(std::move(pos));
}

bool edges_cross(const LinearArrangement& pi, int u, int v, int s, int t) {
    if (u == s || u == t || v == s || v == t) {
        pi.position(u);  // still validate the vertices
        pi.position(v);
        pi.position(s);
        pi.position(t);
        return false;  // edges with a common vertex cannot cross
    }
    int pu = pi.position(u), pv = pi.position(v);
    int ps = pi.position(s), pt = pi.position(t);
    if (pu > pv) std::swap(pu, pv);
    if (ps > pt) std::swap(ps, pt);
    return (pu < ps && ps < pv && pv < pt) || (ps < pu && pu < pt && pt < pv);
}

CrossingReport count_crossings(const Tree& t, const LinearArrangement& pi) {
    if (pi.n() != t.n())
        throw Error("SizeMismatch", "arrangement of " + std::to_string(pi.n()) +
                                        " positions for tree of " + std::to_string(t.n()));
    const auto& edges = t.edges();
    const int m = static_cast<int>(edges.size());

    CrossingReport report;
    report.n = t.n();
    report.per_edge.assign(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (edges_cross(pi, edges[i].u, edges[i].v, edges[j].u, edges[j].v)) {
                ++report.crossings;
                ++report.per_edge[i];
                ++report.per_edge[j];
            }
    report.planar = report.crossings == 0;
    report.mean_distance = mean_dependency_distance(t, pi);
    return report;
}

Rat mean_dependency_distance(const Tree& t, const LinearArrangement& pi) {
    if (pi.n() != t.n())
        throw Error("SizeMismatch", "arrangement of " + std::to_string(pi.n()) +
                                        " positions for tree of " + std::to_string(t.n()));
    if (t.n() < 2) return Rat(0);  // no edges
    std::int64_t total = 0;
    for (const auto& e : t.edges())
        total += std::abs(pi.position(e.u) - pi.position(e.v));
    return Rat(total, t.n() - 1);
}

void CrossingReport::write_kv(std::ostream& out) const {
    out << "n=" << n << "\n"
        << "C=" << crossings << "\n"
        << "mean_d_num=" << mean_distance.numerator() << "\n"
        << "mean_d_den=" << mean_distance.denominator() << "\n"
        << "planar=" << (planar ? "true" : "false") << "\n";
}

std::string CrossingReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["C"] = crossings;
    j["mean_d_num"] = mean_distance.numerator();
    j["mean_d_den"] = mean_distance.denominator();
    j["planar"] = planar;
    return j.dump(2);
}

LinearArrangement read_arrangement(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::vector<int> positions;
        int p;
        while (ls >> p) positions.push_back(p);
        if (!ls.eof()) throw Error("ParseError", "non-integer token in '" + line + "'");
        return LinearArrangement::from_positions(std::move(positions));
    }
    throw Error("ParseError", "empty arrangement file");
}

void write_arrangement(const LinearArrangement& pi, std::ostream& out) {
    for (int v = 1; v <= pi.n(); ++v) out << (v > 1 ? " " : "") << pi.position(v);
    out << "\n";
}

}  // namespace treecross
