#ifndef TREECROSS_RATIONAL_HPP
#define TREECROSS_RATIONAL_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace treecross {

// Exact rational arithmetic for all closed-form quantities. int64 components
// are ample: the largest numerators in this library are permutation-sum
// accumulators (< 10^13) and the n ~ 10^6 bound evaluations (< 10^13).
using Rat = boost::rational<std::int64_t>;

inline double to_double(const Rat& r) { return boost::rational_cast<double>(r); }

/// Canonical "p/q" rendering, q > 0, gcd(p, q) = 1 (boost keeps it reduced).
inline std::string to_fraction_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace treecross

#endif
