#include "semiflow/kernels/segment_distance.hpp"

#include <cstdlib>
#include <cstring>

namespace semiflow::kernels {

namespace {

struct Dispatch {
    RangeKernel range = &nearest_in_range_scalar;
    GatherKernel gather = &nearest_gather_scalar;
    std::string name = "scalar";
};

Dispatch select() {
    Dispatch d;
    const char* req = std::getenv("SEMIFLOW_SIMD");
    const bool forced_scalar = req && std::strcmp(req, "scalar") == 0;
    if (forced_scalar) return d;
#ifdef SEMIFLOW_KERNEL_AVX2
    const bool want_avx2 = !req || std::strcmp(req, "auto") == 0 ||
                           std::strcmp(req, "avx2") == 0;
    if (want_avx2 && __builtin_cpu_supports("avx2")) {
        d.range = &nearest_in_range_avx2;
        d.gather = &nearest_gather_avx2;
        d.name = "avx2";
    }
#endif
#ifdef SEMIFLOW_KERNEL_NEON
    const bool want_neon = !req || std::strcmp(req, "auto") == 0 ||
                           std::strcmp(req, "neon") == 0;
    if (want_neon) {
        d.range = &nearest_in_range_neon;
        d.gather = &nearest_gather_neon;
        d.name = "neon";
    }
#endif
    return d;
}

const Dispatch& dispatch() {
    static const Dispatch d = select();
    return d;
}

}  // namespace

NearestHit nearest_in_range(const SegmentSoA& s, double px, double py,
                            uint32_t begin, uint32_t end) {
    return dispatch().range(s, px, py, begin, end);
}

NearestHit nearest_gather(const SegmentSoA& s, double px, double py,
                          const uint32_t* idx, size_t count) {
    return dispatch().gather(s, px, py, idx, count);
}

const std::string& active_variant() { return dispatch().name; }

}  // namespace semiflow::kernels
