#include "semiflow/kernels/segment_distance.hpp"

#ifdef SEMIFLOW_KERNEL_NEON

#include <arm_neon.h>

#include <limits>

namespace semiflow::kernels {

namespace {

struct Lanes {
    float64x2_t d2;
    uint64x2_t idx;
};

// The clamp is written as compare+select (not vmax/vmin, whose NaN rule
// differs from the x86 kernels): a NaN projection falls to t = 0 exactly
// like the scalar reference.
inline float64x2_t lane_dist2(float64x2_t ax, float64x2_t ay, float64x2_t bx,
                              float64x2_t by, float64x2_t px, float64x2_t py) {
    const float64x2_t dx = vsubq_f64(bx, ax);
    const float64x2_t dy = vsubq_f64(by, ay);
    const float64x2_t rx = vsubq_f64(px, ax);
    const float64x2_t ry = vsubq_f64(py, ay);
    const float64x2_t len2 = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
    const float64x2_t dot = vaddq_f64(vmulq_f64(rx, dx), vmulq_f64(ry, dy));
    const float64x2_t raw = vdivq_f64(dot, len2);
    const float64x2_t zero = vdupq_n_f64(0.0);
    const float64x2_t one = vdupq_n_f64(1.0);
    float64x2_t t = vbslq_f64(vcgtq_f64(raw, zero), raw, zero);
    t = vbslq_f64(vcltq_f64(t, one), t, one);
    const float64x2_t cx = vaddq_f64(ax, vmulq_f64(t, dx));
    const float64x2_t cy = vaddq_f64(ay, vmulq_f64(t, dy));
    const float64x2_t ex = vsubq_f64(px, cx);
    const float64x2_t ey = vsubq_f64(py, cy);
    return vaddq_f64(vmulq_f64(ex, ex), vmulq_f64(ey, ey));
}

inline void lane_update(Lanes& best, float64x2_t d2, uint64x2_t idx) {
    const uint64x2_t lt = vcltq_f64(d2, best.d2);
    const uint64x2_t eq = vceqq_f64(d2, best.d2);
    const uint64x2_t idx_lt = vcgtq_u64(best.idx, idx);
    const uint64x2_t take = vorrq_u64(lt, vandq_u64(eq, idx_lt));
    best.d2 = vbslq_f64(take, d2, best.d2);
    best.idx = vbslq_u64(take, idx, best.idx);
}

inline Lanes lanes_init() {
    return {vdupq_n_f64(std::numeric_limits<double>::infinity()),
            vdupq_n_u64(std::numeric_limits<uint32_t>::max())};
}

inline NearestHit lanes_fold(const Lanes& best) {
    double d2[2];
    uint64_t idx[2];
    vst1q_f64(d2, best.d2);
    vst1q_u64(idx, best.idx);
    NearestHit out{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<uint32_t>::max()};
    for (int lane = 0; lane < 2; ++lane) {
        const NearestHit c{d2[lane], static_cast<uint32_t>(idx[lane])};
        if (improves(c, out)) out = c;
    }
    return out;
}

inline NearestHit merge(NearestHit a, NearestHit b) {
    return improves(b, a) ? b : a;
}

inline float64x2_t load_pair(const double* base, uint32_t i0, uint32_t i1) {
    const double buf[2] = {base[i0], base[i1]};
    return vld1q_f64(buf);
}

}  // namespace

NearestHit nearest_in_range_neon(const SegmentSoA& s, double px, double py,
                                 uint32_t begin, uint32_t end) {
    Lanes best = lanes_init();
    const float64x2_t vpx = vdupq_n_f64(px);
    const float64x2_t vpy = vdupq_n_f64(py);
    uint32_t i = begin;
    for (; i + 2 <= end; i += 2) {
        const float64x2_t ax = vld1q_f64(&s.ax[i]);
        const float64x2_t ay = vld1q_f64(&s.ay[i]);
        const float64x2_t bx = vld1q_f64(&s.bx[i]);
        const float64x2_t by = vld1q_f64(&s.by[i]);
        const float64x2_t d2 = lane_dist2(ax, ay, bx, by, vpx, vpy);
        const uint64_t ibuf[2] = {i, i + 1};
        lane_update(best, d2, vld1q_u64(ibuf));
    }
    NearestHit out = lanes_fold(best);
    if (i < end) out = merge(out, nearest_in_range_scalar(s, px, py, i, end));
    return out;
}

NearestHit nearest_gather_neon(const SegmentSoA& s, double px, double py,
                               const uint32_t* idx, size_t count) {
    Lanes best = lanes_init();
    const float64x2_t vpx = vdupq_n_f64(px);
    const float64x2_t vpy = vdupq_n_f64(py);
    size_t k = 0;
    for (; k + 2 <= count; k += 2) {
        const uint32_t i0 = idx[k], i1 = idx[k + 1];
        const float64x2_t ax = load_pair(s.ax.data(), i0, i1);
        const float64x2_t ay = load_pair(s.ay.data(), i0, i1);
        const float64x2_t bx = load_pair(s.bx.data(), i0, i1);
        const float64x2_t by = load_pair(s.by.data(), i0, i1);
        const float64x2_t d2 = lane_dist2(ax, ay, bx, by, vpx, vpy);
        const uint64_t ibuf[2] = {i0, i1};
        lane_update(best, d2, vld1q_u64(ibuf));
    }
    NearestHit out = lanes_fold(best);
    if (k < count) out = merge(out, nearest_gather_scalar(s, px, py, idx + k, count - k));
    return out;
}

}  // namespace semiflow::kernels

#endif  // SEMIFLOW_KERNEL_NEON
