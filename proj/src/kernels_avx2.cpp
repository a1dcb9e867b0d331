// AVX2 variants of the crossing and distance kernels. 8 candidate pairs per
// iteration; positions fetched with 32-bit gathers. Compiled with -mavx2 for
// this translation unit only; callers go through the runtime dispatch in
// kernels.cpp.

#include "treecross/kernels.hpp"

#ifdef TREECROSS_WITH_AVX2

#include <immintrin.h>

namespace treecross::kernels {

namespace {

inline std::int64_t hsum_epi32(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi32(lo, hi);
    s = _mm_add_epi32(s, _mm_srli_si128(s, 8));
    s = _mm_add_epi32(s, _mm_srli_si128(s, 4));
    return _mm_cvtsi128_si32(s);
}

}  // namespace

std::int64_t count_crossings_avx2(const CandidatePairs& pairs, const std::int32_t* pos) {
    const std::size_t count = pairs.size();
    const std::size_t simd_end = count - count % 8;

    // With all four positions distinct (vertex-disjoint tree edges under a
    // bijection), the normalized interleaving test of Eqs-style comparisons
    // reduces to: exactly one endpoint of the second edge falls strictly
    // inside the open span of the first.
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t i = 0; i < simd_end; i += 8) {
        __m256i ia = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pairs.a.data() + i));
        __m256i ib = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pairs.b.data() + i));
        __m256i ic = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pairs.c.data() + i));
        __m256i id = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pairs.d.data() + i));

        __m256i pu = _mm256_i32gather_epi32(pos, ia, 4);
        __m256i pv = _mm256_i32gather_epi32(pos, ib, 4);
        __m256i ps = _mm256_i32gather_epi32(pos, ic, 4);
        __m256i pt = _mm256_i32gather_epi32(pos, id, 4);

        __m256i lo1 = _mm256_min_epi32(pu, pv);
        __m256i hi1 = _mm256_max_epi32(pu, pv);
        __m256i lo2 = _mm256_min_epi32(ps, pt);
        __m256i hi2 = _mm256_max_epi32(ps, pt);

        __m256i lo2_inside = _mm256_and_si256(_mm256_cmpgt_epi32(lo2, lo1),
                                              _mm256_cmpgt_epi32(hi1, lo2));
        __m256i hi2_inside = _mm256_and_si256(_mm256_cmpgt_epi32(hi2, lo1),
                                              _mm256_cmpgt_epi32(hi1, hi2));
        __m256i cross = _mm256_xor_si256(lo2_inside, hi2_inside);  // 0 or -1 per lane
        acc = _mm256_sub_epi32(acc, cross);
    }
    std::int64_t crossings = hsum_epi32(acc);

    for (std::size_t i = simd_end; i < count; ++i) {
        std::int32_t pu = pos[pairs.a[i]], pv = pos[pairs.b[i]];
        std::int32_t ps = pos[pairs.c[i]], pt = pos[pairs.d[i]];
        std::int32_t lo1 = pu < pv ? pu : pv, hi1 = pu < pv ? pv : pu;
        std::int32_t lo2 = ps < pt ? ps : pt, hi2 = ps < pt ? pt : ps;
        bool lo2_inside = lo1 < lo2 && lo2 < hi1;
        bool hi2_inside = lo1 < hi2 && hi2 < hi1;
        if (lo2_inside != hi2_inside) ++crossings;
    }
    return crossings;
}

std::int64_t total_distance_avx2(const EdgeTable& edges, const std::int32_t* pos) {
    const std::size_t count = edges.size();
    const std::size_t simd_end = count - count % 8;

    __m256i acc64 = _mm256_setzero_si256();
    for (std::size_t i = 0; i < simd_end; i += 8) {
        __m256i iu = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(edges.u.data() + i));
        __m256i iv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(edges.v.data() + i));
        __m256i pu = _mm256_i32gather_epi32(pos, iu, 4);
        __m256i pv = _mm256_i32gather_epi32(pos, iv, 4);
        __m256i diff = _mm256_abs_epi32(_mm256_sub_epi32(pu, pv));
        // widen to 64-bit lanes before accumulating
        __m256i lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(diff));
        __m256i hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(diff, 1));
        acc64 = _mm256_add_epi64(acc64, _mm256_add_epi64(lo, hi));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc64);
    std::int64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];

    for (std::size_t i = simd_end; i < count; ++i) {
        std::int32_t diff = pos[edges.u[i]] - pos[edges.v[i]];
        total += diff < 0 ? -diff : diff;
    }
    return total;
}

}  // namespace treecross::kernels

#endif  // TREECROSS_WITH_AVX2
