// NEON variants, 4 pairs per iteration. NEON has no gather, so positions are
// picked up with scalar lane loads; the comparison ladder is still vector.

#include "treecross/kernels.hpp"

#ifdef TREECROSS_WITH_NEON

#include <arm_neon.h>

namespace treecross::kernels {

namespace {

inline int32x4_t gather4(const std::int32_t* pos, const std::int32_t* idx) {
    int32x4_t r = vdupq_n_s32(0);
    r = vsetq_lane_s32(pos[idx[0]], r, 0);
    r = vsetq_lane_s32(pos[idx[1]], r, 1);
    r = vsetq_lane_s32(pos[idx[2]], r, 2);
    r = vsetq_lane_s32(pos[idx[3]], r, 3);
    return r;
}

}  // namespace

std::int64_t count_crossings_neon(const CandidatePairs& pairs, const std::int32_t* pos) {
    const std::size_t count = pairs.size();
    const std::size_t simd_end = count - count % 4;

    int32x4_t acc = vdupq_n_s32(0);
    for (std::size_t i = 0; i < simd_end; i += 4) {
        int32x4_t pu = gather4(pos, pairs.a.data() + i);
        int32x4_t pv = gather4(pos, pairs.b.data() + i);
        int32x4_t ps = gather4(pos, pairs.c.data() + i);
        int32x4_t pt = gather4(pos, pairs.d.data() + i);

        int32x4_t lo1 = vminq_s32(pu, pv);
        int32x4_t hi1 = vmaxq_s32(pu, pv);
        int32x4_t lo2 = vminq_s32(ps, pt);
        int32x4_t hi2 = vmaxq_s32(ps, pt);

        uint32x4_t lo2_inside = vandq_u32(vcgtq_s32(lo2, lo1), vcgtq_s32(hi1, lo2));
        uint32x4_t hi2_inside = vandq_u32(vcgtq_s32(hi2, lo1), vcgtq_s32(hi1, hi2));
        uint32x4_t cross = veorq_u32(lo2_inside, hi2_inside);  // 0 or ~0 per lane
        acc = vsubq_s32(acc, vreinterpretq_s32_u32(cross));
    }
    std::int64_t crossings = vaddvq_s32(acc);

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

std::int64_t total_distance_neon(const EdgeTable& edges, const std::int32_t* pos) {
    const std::size_t count = edges.size();
    const std::size_t simd_end = count - count % 4;

    int64x2_t acc = vdupq_n_s64(0);
    for (std::size_t i = 0; i < simd_end; i += 4) {
        int32x4_t pu = gather4(pos, edges.u.data() + i);
        int32x4_t pv = gather4(pos, edges.v.data() + i);
        int32x4_t diff = vabsq_s32(vsubq_s32(pu, pv));
        acc = vaddq_s64(acc, vpaddlq_s32(diff));
    }
    std::int64_t total = vaddvq_s64(acc);

    for (std::size_t i = simd_end; i < count; ++i) {
        std::int32_t diff = pos[edges.u[i]] - pos[edges.v[i]];
        total += diff < 0 ? -diff : diff;
    }
    return total;
}

}  // namespace treecross::kernels

#endif  // TREECROSS_WITH_NEON
