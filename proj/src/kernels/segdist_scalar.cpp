#include "semiflow/kernels/segment_distance.hpp"

#include <limits>

namespace semiflow::kernels {

namespace {

// Per-segment distance, written to mirror the vector kernels operation by
// operation. The clamp uses (x > lo ? x : lo) / (x < hi ? x : hi), which is
// what max_pd/min_pd compute; a degenerate segment (a == b) yields t = 0 via
// the NaN path of the comparisons and falls back to the vertex distance.
inline double segment_dist2(const SegmentSoA& s, uint32_t i, double px, double py,
                            double& t_out) {
    const double dx = s.bx[i] - s.ax[i];
    const double dy = s.by[i] - s.ay[i];
    const double rx = px - s.ax[i];
    const double ry = py - s.ay[i];
    const double len2 = dx * dx + dy * dy;
    const double dot = rx * dx + ry * dy;
    const double raw = dot / len2;
    double t = raw > 0.0 ? raw : 0.0;
    t = t < 1.0 ? t : 1.0;
    const double cx = s.ax[i] + t * dx;
    const double cy = s.ay[i] + t * dy;
    const double ex = px - cx;
    const double ey = py - cy;
    t_out = t;
    return ex * ex + ey * ey;
}

}  // namespace

NearestHit nearest_in_range_scalar(const SegmentSoA& s, double px, double py,
                                   uint32_t begin, uint32_t end) {
    NearestHit best{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<uint32_t>::max()};
    double t;
    for (uint32_t i = begin; i < end; ++i) {
        const double d2 = segment_dist2(s, i, px, py, t);
        if (d2 < best.dist2) best = {d2, i};
    }
    return best;
}

NearestHit nearest_gather_scalar(const SegmentSoA& s, double px, double py,
                                 const uint32_t* idx, size_t count) {
    NearestHit best{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<uint32_t>::max()};
    double t;
    for (size_t k = 0; k < count; ++k) {
        const uint32_t i = idx[k];
        const double d2 = segment_dist2(s, i, px, py, t);
        if (d2 < best.dist2 || (d2 == best.dist2 && i < best.index)) best = {d2, i};
    }
    return best;
}

ClosestPoint closest_point_on_segment(const SegmentSoA& s, uint32_t i,
                                      double px, double py) {
    double t;
    const double d2 = segment_dist2(s, i, px, py, t);
    const double cx = s.ax[i] + t * (s.bx[i] - s.ax[i]);
    const double cy = s.ay[i] + t * (s.by[i] - s.ay[i]);
    return {t, Complex{cx, cy}, d2};
}

}  // namespace semiflow::kernels
