#ifndef TREECROSS_RANDOM_LAB_HPP
#define TREECROSS_RANDOM_LAB_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "treecross/arrangement.hpp"
#include "treecross/tree.hpp"

namespace treecross {

/// Seedable generator with implementation-pinned bounded sampling.
/// mt19937_64 supplies the bit stream (fully specified by the standard);
/// uniform_below uses unbiased rejection so results do not depend on the
/// standard library's distribution objects.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound), bound >= 1. Unbiased (rejection sampling).
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Fisher-Yates; uniform over all permutations of the input.
    void shuffle(std::vector<std::int32_t>& values);
    /// Uniform unordered pair of distinct values in [1, n], n >= 2.
    std::pair<int, int> distinct_pair(int n);

  private:
    std::mt19937_64 engine_;
};

/// Deterministic per-stream seed derivation (splitmix64 finalizer over
/// seed + (index+1) * golden gamma). Replica i of a run with seed s always
/// uses derive_seed(s, i), so parallel and serial execution agree.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform over all n! arrangements.
LinearArrangement random_arrangement(int n, Rng& rng);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    void write_kv(std::ostream& out) const;
    std::string to_json() const;
};

/// Sample mean and standard error of C over independent uniform arrangements.
/// samples >= 2. Deterministic given (seed, samples) for any thread count.
McEstimate estimate_expected_crossings(const Tree& t, std::uint64_t samples,
                                       std::uint64_t seed, int threads = 1);

/// Fraction of uniform arrangements in which edge e1 crosses edge e2.
/// Both must be edges of t and distinct. Throws NotAnEdge.
McEstimate estimate_crossing_probability(const Tree& t, Edge e1, Edge e2,
                                         std::uint64_t samples, std::uint64_t seed,
                                         int threads = 1);

struct TrajectoryStep {
    double mean_c = 0.0;
    double mean_d = 0.0;
    double se_c = 0.0;   // standard error across replicas
    double se_d = 0.0;
};

/// Per-step averages over R replicas of a random-swap walk of T steps.
/// steps[0] is the exact value of the initial arrangement.
struct SwapTrajectory {
    std::vector<TrajectoryStep> steps;  // size T+1
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;

    /// TSV: header "swap\tmean_C\tmean_d", floats with 6 significant digits.
    void write_tsv(std::ostream& out) const;
};

/// Each replica starts from `initial`; each step swaps the positions of a
/// uniformly chosen unordered pair of distinct vertices, then records C and
/// <d>. The tree itself is never modified. Deterministic given (seed, T, R)
/// for any thread count (integer accumulation, per-replica derived seeds).
SwapTrajectory swap_walk(const Tree& t, const LinearArrangement& initial,
                         int swaps, std::uint64_t replicas, std::uint64_t seed,
                         int threads = 1);

}  // namespace treecross

#endif
