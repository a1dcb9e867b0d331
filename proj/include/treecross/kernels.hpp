#ifndef TREECROSS_KERNELS_HPP
#define TREECROSS_KERNELS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "treecross/tree.hpp"

namespace treecross::kernels {

/// Structure-of-arrays table of the edge pairs that can cross (the pairs
/// sharing no vertex). Built once per tree, reused across arrangements.
/// size() equals C_pairs of the tree; the theory suite pins that identity.
struct CandidatePairs {
    std::vector<std::int32_t> a, b;  // endpoints of the first edge
    std::vector<std::int32_t> c, d;  // endpoints of the second edge

    explicit CandidatePairs(const Tree& t);
    std::size_t size() const noexcept { return a.size(); }
};

/// Edge endpoint table for distance sums.
struct EdgeTable {
    std::vector<std::int32_t> u, v;

    explicit EdgeTable(const Tree& t);
    std::size_t size() const noexcept { return u.size(); }
};

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);

/// Best backend the running CPU supports. The TREECROSS_KERNEL environment
/// variable ("scalar", "avx2", "neon") overrides detection when it names a
/// supported backend.
Backend preferred_backend();

bool backend_available(Backend b);

/// Number of crossing pairs among the candidates, given positions pos where
/// pos[vertex] is 1-indexed (slot 0 unused).
std::int64_t count_crossings(const CandidatePairs& pairs, const std::int32_t* pos,
                             Backend backend);
std::int64_t count_crossings(const CandidatePairs& pairs, const std::int32_t* pos);

/// Sum over edges of |pos[u] - pos[v]|.
std::int64_t total_distance(const EdgeTable& edges, const std::int32_t* pos,
                            Backend backend);
std::int64_t total_distance(const EdgeTable& edges, const std::int32_t* pos);

// Reference kernels (portable scalar). The crossing predicate here mirrors
// the normalized interleaving comparisons of edges_cross and is the
// equivalence baseline for the SIMD variants.
std::int64_t count_crossings_scalar(const CandidatePairs& pairs, const std::int32_t* pos);
std::int64_t total_distance_scalar(const EdgeTable& edges, const std::int32_t* pos);

#ifdef TREECROSS_WITH_AVX2
std::int64_t count_crossings_avx2(const CandidatePairs& pairs, const std::int32_t* pos);
std::int64_t total_distance_avx2(const EdgeTable& edges, const std::int32_t* pos);
#endif

#ifdef TREECROSS_WITH_NEON
std::int64_t count_crossings_neon(const CandidatePairs& pairs, const std::int32_t* pos);
std::int64_t total_distance_neon(const EdgeTable& edges, const std::int32_t* pos);
#endif

}  // namespace treecross::kernels

#endif
