#include "treecross/theory.hpp"

#include <ostream>

#include <json.hpp>

#include "treecross/error.hpp"

namespace treecross {

Rat c_pairs(const Tree& t) { return Rat(c_pairs_count(t)); }

std::int64_t c_pairs_count(const Tree& t) {
    // (n/2)(n - 1 - K2/n) = (n(n-1) - K2)/2; both terms are even
    std::int64_t n = t.n();
    return (n * (n - 1) - t.k2_sum()) / 2;
}

std::int64_t c_pairs_edge(const Tree& t, int u, int v) {
    if (!t.has_edge(u, v))
        throw Error("NotAnEdge", "(" + std::to_string(u) + "," + std::to_string(v) +
                                     ") is not an edge");
    return static_cast<std::int64_t>(t.n()) - t.degree(u) - t.degree(v);
}

Rat crossing_probability(bool shares_vertex) { return shares_vertex ? Rat(0) : Rat(1, 3); }

Rat expected_crossings(const Tree& t) { return c_pairs(t) / 3; }

Rat expected_crossings_edge(const Tree& t, int u, int v) {
    return Rat(c_pairs_edge(t, u, v), 3);
}

Rat expected_crossings_linear(std::int64_t n) {
    if (n < 2) throw Error("BadCount", "linear tree requires n >= 2");
    return Rat(n * (n - 5), 6) + 1;
}

std::pair<Rat, Rat> k2_bounds(std::int64_t n) {
    if (n < 2) throw Error("BadCount", "k2 bounds require n >= 2");
    return {Rat(4) - Rat(6, n), Rat(n - 1)};
}

std::pair<Rat, Rat> ec_bounds(std::int64_t n) {
    if (n < 2) throw Error("BadCount", "E[C] bounds require n >= 2");
    Rat upper = n < 4 ? Rat(0) : expected_crossings_linear(n);
    return {Rat(0), upper};
}

Rat expected_mean_distance(std::int64_t n) {
    if (n < 2) throw Error("BadCount", "expected distance requires n >= 2");
    return Rat(n + 1, 3);
}

TheoryReport theory_report(const Tree& t) {
    TheoryReport r;
    r.n = t.n();
    r.k2_moment = t.degree_second_moment();
    r.c_pairs = c_pairs(t);
    r.expected_c = expected_crossings(t);
    if (t.n() >= 2) {
        r.expected_d = expected_mean_distance(t.n());
        auto [k2_lo, k2_hi] = k2_bounds(t.n());
        r.k2_lower = k2_lo;
        r.k2_upper = k2_hi;
        r.ec_upper = ec_bounds(t.n()).second;
    }
    return r;
}

void TheoryReport::write_tsv(std::ostream& out) const {
    out << "n\t" << n << "\n"
        << "k2_moment\t" << to_fraction_string(k2_moment) << "\n"
        << "c_pairs\t" << to_fraction_string(c_pairs) << "\n"
        << "expected_c\t" << to_fraction_string(expected_c) << "\n"
        << "expected_d\t" << to_fraction_string(expected_d) << "\n"
        << "k2_lower\t" << to_fraction_string(k2_lower) << "\n"
        << "k2_upper\t" << to_fraction_string(k2_upper) << "\n"
        << "ec_upper\t" << to_fraction_string(ec_upper) << "\n";
}

std::string TheoryReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k2_moment"] = to_fraction_string(k2_moment);
    j["c_pairs"] = to_fraction_string(c_pairs);
    j["expected_c"] = to_fraction_string(expected_c);
    j["expected_d"] = to_fraction_string(expected_d);
    j["k2_lower"] = to_fraction_string(k2_lower);
    j["k2_upper"] = to_fraction_string(k2_upper);
    j["ec_upper"] = to_fraction_string(ec_upper);
    return j.dump(2);
}

}  // namespace treecross
