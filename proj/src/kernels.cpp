#include "treecross/kernels.hpp"

#include <algorithm>
#include <cstdlib>

#include "treecross/error.hpp"

namespace treecross::kernels {

CandidatePairs::CandidatePairs(const Tree& t) {
    const auto& edges = t.edges();
    const std::size_t m = edges.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Edge& e = edges[i];
            const Edge& f = edges[j];
            if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) continue;
            a.push_back(e.u);
            b.push_back(e.v);
            c.push_back(f.u);
            d.push_back(f.v);
        }
}

EdgeTable::EdgeTable(const Tree& t) {
    u.reserve(t.edges().size());
    v.reserve(t.edges().size());
    for (const auto& e : t.edges()) {
        u.push_back(e.u);
        v.push_back(e.v);
    }
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(TREECROSS_WITH_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(TREECROSS_WITH_NEON)
            return true;  // baseline on aarch64
#else
            return false;
#endif
    }
    return false;
}

Backend preferred_backend() {
    static const Backend chosen = [] {
        if (const char* env = std::getenv("TREECROSS_KERNEL")) {
            std::string name(env);
            for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
                if (name == backend_name(b) && backend_available(b)) return b;
        }
        if (backend_available(Backend::avx2)) return Backend::avx2;
        if (backend_available(Backend::neon)) return Backend::neon;
        return Backend::scalar;
    }();
    return chosen;
}

std::int64_t count_crossings_scalar(const CandidatePairs& pairs, const std::int32_t* pos) {
    std::int64_t crossings = 0;
    const std::size_t count = pairs.size();
    for (std::size_t i = 0; i < count; ++i) {
        std::int32_t pu = pos[pairs.a[i]], pv = pos[pairs.b[i]];
        std::int32_t ps = pos[pairs.c[i]], pt = pos[pairs.d[i]];
        if (pu > pv) std::swap(pu, pv);
        if (ps > pt) std::swap(ps, pt);
        if ((pu < ps && ps < pv && pv < pt) || (ps < pu && pu < pt && pt < pv)) ++crossings;
    }
    return crossings;
}

std::int64_t total_distance_scalar(const EdgeTable& edges, const std::int32_t* pos) {
    std::int64_t total = 0;
    const std::size_t count = edges.size();
    for (std::size_t i = 0; i < count; ++i)
        total += std::abs(pos[edges.u[i]] - pos[edges.v[i]]);
    return total;
}

std::int64_t count_crossings(const CandidatePairs& pairs, const std::int32_t* pos,
                             Backend backend) {
    switch (backend) {
#if defined(TREECROSS_WITH_AVX2)
        case Backend::avx2: return count_crossings_avx2(pairs, pos);
#endif
#if defined(TREECROSS_WITH_NEON)
        case Backend::neon: return count_crossings_neon(pairs, pos);
#endif
        default: return count_crossings_scalar(pairs, pos);
    }
}

std::int64_t total_distance(const EdgeTable& edges, const std::int32_t* pos, Backend backend) {
    switch (backend) {
#if defined(TREECROSS_WITH_AVX2)
        case Backend::avx2: return total_distance_avx2(edges, pos);
#endif
#if defined(TREECROSS_WITH_NEON)
        case Backend::neon: return total_distance_neon(edges, pos);
#endif
        default: return total_distance_scalar(edges, pos);
    }
}

std::int64_t count_crossings(const CandidatePairs& pairs, const std::int32_t* pos) {
    return count_crossings(pairs, pos, preferred_backend());
}

std::int64_t total_distance(const EdgeTable& edges, const std::int32_t* pos) {
    return total_distance(edges, pos, preferred_backend());
}

}  // namespace treecross::kernels
