#include "semiflow/kernels/segment_distance.hpp"

#ifdef SEMIFLOW_KERNEL_AVX2

#include <immintrin.h>

#include <limits>

namespace semiflow::kernels {

namespace {

struct Lanes {
    __m256d d2;
    __m256i idx;
};

// Same operation sequence as the scalar kernel: sub/mul/add/div, then
// max_pd against 0 and min_pd against 1 for the clamp.
inline __m256d lane_dist2(__m256d ax, __m256d ay, __m256d bx, __m256d by,
                          __m256d px, __m256d py) {
    const __m256d dx = _mm256_sub_pd(bx, ax);
    const __m256d dy = _mm256_sub_pd(by, ay);
    const __m256d rx = _mm256_sub_pd(px, ax);
    const __m256d ry = _mm256_sub_pd(py, ay);
    const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d dot = _mm256_add_pd(_mm256_mul_pd(rx, dx), _mm256_mul_pd(ry, dy));
    const __m256d raw = _mm256_div_pd(dot, len2);
    __m256d t = _mm256_max_pd(raw, _mm256_setzero_pd());
    t = _mm256_min_pd(t, _mm256_set1_pd(1.0));
    const __m256d cx = _mm256_add_pd(ax, _mm256_mul_pd(t, dx));
    const __m256d cy = _mm256_add_pd(ay, _mm256_mul_pd(t, dy));
    const __m256d ex = _mm256_sub_pd(px, cx);
    const __m256d ey = _mm256_sub_pd(py, cy);
    return _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
}

// Keep the candidate when it is strictly closer, or equally close with a
// smaller segment index.
inline void lane_update(Lanes& best, __m256d d2, __m256i idx) {
    const __m256d lt = _mm256_cmp_pd(d2, best.d2, _CMP_LT_OQ);
    const __m256d eq = _mm256_cmp_pd(d2, best.d2, _CMP_EQ_OQ);
    const __m256d idx_lt =
        _mm256_castsi256_pd(_mm256_cmpgt_epi64(best.idx, idx));
    const __m256d take = _mm256_or_pd(lt, _mm256_and_pd(eq, idx_lt));
    best.d2 = _mm256_blendv_pd(best.d2, d2, take);
    best.idx = _mm256_castpd_si256(_mm256_blendv_pd(
        _mm256_castsi256_pd(best.idx), _mm256_castsi256_pd(idx), take));
}

inline Lanes lanes_init() {
    return {_mm256_set1_pd(std::numeric_limits<double>::infinity()),
            _mm256_set1_epi64x(std::numeric_limits<uint32_t>::max())};
}

inline NearestHit lanes_fold(const Lanes& best) {
    alignas(32) double d2[4];
    alignas(32) int64_t idx[4];
    _mm256_store_pd(d2, best.d2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(idx), best.idx);
    NearestHit out{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<uint32_t>::max()};
    for (int lane = 0; lane < 4; ++lane) {
        const NearestHit c{d2[lane], static_cast<uint32_t>(idx[lane])};
        if (improves(c, out)) out = c;
    }
    return out;
}

inline NearestHit merge(NearestHit a, NearestHit b) {
    return improves(b, a) ? b : a;
}

}  // namespace

NearestHit nearest_in_range_avx2(const SegmentSoA& s, double px, double py,
                                 uint32_t begin, uint32_t end) {
    Lanes best = lanes_init();
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    uint32_t i = begin;
    for (; i + 4 <= end; i += 4) {
        const __m256d ax = _mm256_loadu_pd(&s.ax[i]);
        const __m256d ay = _mm256_loadu_pd(&s.ay[i]);
        const __m256d bx = _mm256_loadu_pd(&s.bx[i]);
        const __m256d by = _mm256_loadu_pd(&s.by[i]);
        const __m256d d2 = lane_dist2(ax, ay, bx, by, vpx, vpy);
        const __m256i idx = _mm256_set_epi64x(i + 3, i + 2, i + 1, i);
        lane_update(best, d2, idx);
    }
    NearestHit out = lanes_fold(best);
    if (i < end) out = merge(out, nearest_in_range_scalar(s, px, py, i, end));
    return out;
}

NearestHit nearest_gather_avx2(const SegmentSoA& s, double px, double py,
                               const uint32_t* idx, size_t count) {
    Lanes best = lanes_init();
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        const __m128i vi =
            _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
        const __m256d ax = _mm256_i32gather_pd(s.ax.data(), vi, 8);
        const __m256d ay = _mm256_i32gather_pd(s.ay.data(), vi, 8);
        const __m256d bx = _mm256_i32gather_pd(s.bx.data(), vi, 8);
        const __m256d by = _mm256_i32gather_pd(s.by.data(), vi, 8);
        const __m256d d2 = lane_dist2(ax, ay, bx, by, vpx, vpy);
        lane_update(best, d2, _mm256_cvtepu32_epi64(vi));
    }
    NearestHit out = lanes_fold(best);
    if (k < count) out = merge(out, nearest_gather_scalar(s, px, py, idx + k, count - k));
    return out;
}

}  // namespace semiflow::kernels

#endif  // SEMIFLOW_KERNEL_AVX2
